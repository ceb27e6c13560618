#include "rank2/operators.hpp"

#include <algorithm>

namespace rank2 {

DiffOperator::DiffOperator(std::string center, std::vector<ScalarSeries> coeffs)
    : center_(std::move(center)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.center() != center_) throw CenterMismatch("operator coefficient at " + c.center());
  }
  normalize();
}

DiffOperator DiffOperator::d(int k, const std::string& center) {
  std::vector<ScalarSeries> c(static_cast<std::size_t>(k) + 1, ScalarSeries(center));
  c[static_cast<std::size_t>(k)] = ScalarSeries::constant(center, Scalar(1));
  return DiffOperator(center, std::move(c));
}

DiffOperator DiffOperator::mult(const ScalarSeries& s) { return DiffOperator(s.center(), {s}); }

DiffOperator DiffOperator::poly(const std::vector<Scalar>& coeffs, const std::string& center) {
  return mult(ScalarSeries(center, 0, coeffs));
}

ScalarSeries DiffOperator::coeff(int k) const {
  if (k < 0 || k > order()) return ScalarSeries(center_);
  return coeffs_[static_cast<std::size_t>(k)];
}

void DiffOperator::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

DiffOperator DiffOperator::operator-() const { return scaled(Scalar(-1)); }

DiffOperator DiffOperator::scaled(const Scalar& s) const {
  std::vector<ScalarSeries> out;
  for (const auto& c : coeffs_) out.push_back(c.scaled(s));
  return DiffOperator(center_, std::move(out));
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  if (a.center_ != b.center_) throw CenterMismatch("operators at " + a.center_ + " and " + b.center_);
  std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  std::vector<ScalarSeries> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k)));
  }
  return DiffOperator(a.center_, std::move(out));
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) { return a + (-b); }

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  if (a.center_ != b.center_) throw CenterMismatch("operators at " + a.center_ + " and " + b.center_);
  if (a.is_zero() || b.is_zero()) return DiffOperator(a.center_);
  // (p d^i)(q d^j) = p sum_r C(i,r) q^(r) d^(i-r+j)
  std::vector<ScalarSeries> out(static_cast<std::size_t>(a.order() + b.order()) + 1,
                                ScalarSeries(a.center_));
  for (int j = 0; j <= b.order(); ++j) {
    const ScalarSeries& q = b.coeffs_[static_cast<std::size_t>(j)];
    if (q.is_zero()) continue;
    std::vector<ScalarSeries> dq{q};
    for (int i = 0; i <= a.order(); ++i) {
      const ScalarSeries& p = a.coeffs_[static_cast<std::size_t>(i)];
      if (p.is_zero()) continue;
      while (static_cast<int>(dq.size()) <= i) dq.push_back(derivative(dq.back()));
      Scalar binom(1);
      for (int r = 0; r <= i; ++r) {
        if (!dq[static_cast<std::size_t>(r)].is_zero()) {
          out[static_cast<std::size_t>(i - r + j)] += (p * dq[static_cast<std::size_t>(r)]).scaled(binom);
        }
        binom = binom * Scalar(i - r) / Scalar(r + 1);
      }
    }
  }
  return DiffOperator(a.center_, std::move(out));
}

ScalarSeries DiffOperator::apply(const ScalarSeries& psi) const {
  ScalarSeries out(center_);
  ScalarSeries d = psi;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k > 0) d = derivative(d);
    if (!coeffs_[k].is_zero()) out += coeffs_[k] * d;
  }
  return out;
}

std::string DiffOperator::str() const {
  std::string s;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "[" + coeffs_[k].str() + "]";
    if (k > 0) s += "*d^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

DiffOperator power(const DiffOperator& a, int k) {
  DiffOperator out = DiffOperator::d(0, a.center());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) { return a * b - b * a; }

DiffOperator build_L(const ScalarSeries& V, const ScalarSeries& W) {
  const std::string& c = W.center();
  ScalarSeries dV = derivative(V);
  ScalarSeries ddV = derivative(dV);
  return DiffOperator(c, {V * V + ddV + W, dV.scaled(Scalar(2)), V.scaled(Scalar(2)),
                          ScalarSeries(c), ScalarSeries::constant(c, Scalar(1))});
}

ShiftedSeries ShiftedSeries::derivative() const {
  // d/dx x^(sigma+e) = (sigma+e) x^(sigma+e-1)
  if (body.is_zero()) return {sigma, ScalarSeries(body.center(), saturating_add(body.order(), -1))};
  std::vector<Scalar> out;
  int e = body.lo();
  for (const auto& c : body.stored()) {
    out.push_back(c * (sigma + Scalar(e)));
    ++e;
  }
  int order = body.is_exact() ? kExactOrder : body.order() - 1;
  return {sigma, ScalarSeries(body.center(), body.lo() - 1, std::move(out), order)};
}

ShiftedSeries apply(const DiffOperator& op, const ShiftedSeries& psi) {
  ShiftedSeries out{psi.sigma, ScalarSeries(psi.body.center())};
  ShiftedSeries d = psi;
  for (int k = 0; k <= op.order(); ++k) {
    if (k > 0) d = d.derivative();
    const ScalarSeries& c = op.coeffs()[static_cast<std::size_t>(k)];
    if (!c.is_zero()) out.body += c * d.body;
  }
  return out;
}

}  // namespace rank2
