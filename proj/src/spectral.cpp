#include "rank2/spectral.hpp"

#include <algorithm>

namespace rank2 {

namespace {

ZPoly trimmed(ZPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

ZPoly add(const ZPoly& a, const ZPoly& b, const std::string& center) {
  ZPoly out(std::max(a.size(), b.size()), ScalarSeries(center));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

ZPoly mul(const ZPoly& a, const ZPoly& b, const std::string& center) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, ScalarSeries(center));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

ZPoly mul(const ScalarSeries& s, const ZPoly& p) {
  ZPoly out;
  for (const auto& c : p) out.push_back(s * c);
  return out;
}

ZPoly scaled(const ZPoly& p, const Scalar& s) {
  ZPoly out;
  for (const auto& c : p) out.push_back(c.scaled(s));
  return out;
}

ZPoly dx(const ZPoly& p, int k) {
  ZPoly out;
  for (const auto& c : p) out.push_back(derivative(c, k));
  return out;
}

ZPoly times_z(const ZPoly& p, const std::string& center) {
  ZPoly out{ScalarSeries(center)};
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

ZPoly QPoly::as_zpoly(const std::string& center) const {
  ZPoly out(genus + 1, ScalarSeries(center));
  out[genus] = ScalarSeries::constant(center, Scalar(1));
  for (int i = 1; i <= genus; ++i) out[genus - i] = a[i - 1];
  return out;
}

QPoly make_qpoly(const CenterState& center, const ConstantAssignment& constants, int g) {
  if (static_cast<int>(center.f.size()) < g) throw Error("hierarchy shorter than the genus");
  ConstantAssignment all = constants;
  for (int i = 1; i <= g + 1; ++i) all.try_emplace(i, Scalar());
  QPoly q;
  q.genus = g;
  for (int i = 0; i < g; ++i) q.a.push_back(substitute(center.f[i], all));
  return q;
}

ZPoly relation_residual(const QPoly& q, const ScalarSeries& V, const ScalarSeries& W) {
  const std::string& center = W.center();
  ZPoly Q = q.as_zpoly(center);
  ZPoly d1 = dx(Q, 1), d2 = dx(Q, 2), d3 = dx(Q, 3), d5 = dx(Q, 5);
  ScalarSeries dV = derivative(V), ddV = derivative(V, 2), dW = derivative(W);

  ZPoly r = d5;
  r = add(r, mul(V.scaled(Scalar(4)), d3), center);
  r = add(r, mul(dV.scaled(Scalar(6)), d2), center);
  r = add(r, times_z(scaled(d1, Scalar(4)), center), center);
  r = add(r, mul(ddV.scaled(Scalar(2)) - W.scaled(Scalar(4)), d1), center);
  r = add(r, mul(dW.scaled(Scalar(-2)), Q), center);
  return r;
}

RelationReport verify_relation(const QPoly& q, const ScalarSeries& V, const ScalarSeries& W) {
  RelationReport report;
  report.worst = ScalarSeries(W.center());
  ZPoly r = relation_residual(q, V, W);
  for (std::size_t i = 0; i < r.size(); ++i) {
    report.validity = std::min(report.validity, r[i].order());
    if (!r[i].is_zero() && report.zero) {
      report.zero = false;
      report.worst_power = static_cast<int>(i);
      report.worst = r[i];
    }
  }
  return report;
}

SpectralCurve curve(const QPoly& q, const ScalarSeries& V, const ScalarSeries& W) {
  const std::string& center = W.center();
  ZPoly Q = q.as_zpoly(center);
  ZPoly d1 = dx(Q, 1), d2 = dx(Q, 2), d3 = dx(Q, 3), d4 = dx(Q, 4);
  ScalarSeries dV = derivative(V);

  ZPoly zW{W.scaled(Scalar(-1)), ScalarSeries::constant(center, Scalar(1))};
  ZPoly four_f = scaled(mul(zW, mul(Q, Q, center), center), Scalar(4));
  four_f = add(four_f, mul(V.scaled(Scalar(-4)), mul(d1, d1, center)), center);
  four_f = add(four_f, mul(d2, d2, center), center);
  four_f = add(four_f, scaled(mul(d1, d3, center), Scalar(-2)), center);
  ZPoly inner = add(mul(dV.scaled(Scalar(2)), d1), mul(V.scaled(Scalar(4)), d2), center);
  inner = add(inner, d4, center);
  four_f = add(four_f, scaled(mul(Q, inner, center), Scalar(2)), center);
  four_f = trimmed(four_f);

  SpectralCurve out;
  for (std::size_t i = 0; i < four_f.size(); ++i) {
    const ScalarSeries& c = four_f[i];
    if (c.order() <= 0) {
      throw InsufficientTruncation("curve coefficient of z^" + std::to_string(i) +
                                   " is known only below x^" + std::to_string(c.order()));
    }
    Scalar constant = c.is_zero() || c.lo() > 0 || c.hi() <= 0 ? Scalar() : c.coeff(0);
    ScalarSeries rest = c - ScalarSeries::constant(center, constant);
    if (!rest.is_zero()) throw XDependence(static_cast<int>(i), rest.str());
    out.coeffs.push_back(constant / Scalar(4));
  }
  while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
  if (out.degree() != 2 * q.genus + 1 || out.coeffs.back() != Scalar(1)) {
    throw Error("spectral polynomial " + polynomial_string(out.coeffs) +
                " is not monic of degree " + std::to_string(2 * q.genus + 1));
  }
  out.discriminant = discriminant(out.coeffs);
  return out;
}

Scalar resultant(const std::vector<Scalar>& f, const std::vector<Scalar>& g) {
  if (f.empty() || g.empty()) throw Error("resultant of an empty polynomial");
  const std::size_t m = f.size() - 1;  // deg f
  const std::size_t n = g.size() - 1;  // deg g
  const std::size_t size = m + n;
  if (size == 0) return Scalar(1);
  ScalarMatrix s(size, size);
  // Rows hold descending coefficients, shifted one column per row.
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) s(r, r + i) = f[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) s(n + r, r + i) = g[n - i];
  }
  return determinant(std::move(s));
}

Scalar discriminant(const std::vector<Scalar>& F) {
  if (F.size() < 2) throw Error("discriminant needs degree at least 1");
  const long n = static_cast<long>(F.size()) - 1;
  if (n == 1) return Scalar(1);
  std::vector<Scalar> dF;
  for (long i = 1; i <= n; ++i) dF.push_back(F[i] * Scalar(i));
  Scalar res = resultant(F, dF) / F.back();
  return (n * (n - 1) / 2) % 2 == 0 ? res : -res;
}

std::string polynomial_string(const std::vector<Scalar>& coeffs, const std::string& var) {
  std::string s;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const Scalar& c = coeffs[i];
    if (c.is_zero()) continue;
    std::string text;
    bool negative = false;
    if (c.is_rational()) {
      mpq_class r = c.to_rational();
      negative = sgn(r) < 0;
      if (negative) r = -r;
      text = r.get_den() == 1 ? r.get_num().get_str() : r.get_str();
    } else {
      text = "(" + c.str() + ")";
    }
    std::string monomial = i == 0 ? "" : var + (i > 1 ? "^" + std::to_string(i) : "");
    std::string term;
    if (monomial.empty()) {
      term = text;
    } else {
      term = text == "1" ? monomial : text + "*" + monomial;
    }
    if (s.empty()) {
      s = (negative ? "-" : "") + term;
    } else {
      s += (negative ? " - " : " + ") + term;
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace rank2
