#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rank2/affine.hpp"
#include "rank2/scalar.hpp"

namespace rank2 {

/// Validity order of a series that is known exactly (a Laurent polynomial).
inline constexpr int kExactOrder = std::numeric_limits<int>::max();

/// x + y where either operand may be kExactOrder (treated as +infinity).
constexpr int saturating_add(int x, int y) {
  return (x == kExactOrder || y == kExactOrder) ? kExactOrder : x + y;
}

/// Raised by antiderivative when the x^-1 coefficient is nonzero.
class ResidueNonZero : public Error {
 public:
  ResidueNonZero(std::string center, AffineForm residue)
      : Error("nonzero residue " + residue.str() + " at " + center),
        center(std::move(center)),
        residue(std::move(residue)) {}
  std::string center;
  AffineForm residue;
};

/// Truncated Laurent series sum_{e >= lo} c_e (x - center)^e + O(x^order).
///
/// Every exponent below `order` is known exactly. Stored coefficients cover
/// [lo, lo + size); exponents in [lo + size, order) are known zeros. The
/// leading stored coefficient is nonzero, and the zero series has lo == order
/// and no storage. `order == kExactOrder` marks a Laurent polynomial.
template <class Coeff>
class Series {
 public:
  using coefficient_type = Coeff;

  Series() = default;

  /// Zero series at `center` valid below `order`.
  explicit Series(std::string center, int order = kExactOrder)
      : center_(std::move(center)), lo_(order), order_(order) {}

  Series(std::string center, int lo, std::vector<Coeff> coeffs, int order = kExactOrder)
      : center_(std::move(center)), lo_(lo), coeffs_(std::move(coeffs)), order_(order) {
    normalize();
  }

  static Series monomial(std::string center, int exponent, Coeff c,
                         int order = kExactOrder) {
    return Series(std::move(center), exponent, std::vector<Coeff>{std::move(c)}, order);
  }

  static Series constant(std::string center, Coeff c, int order = kExactOrder) {
    return monomial(std::move(center), 0, std::move(c), order);
  }

  const std::string& center() const { return center_; }
  int lo() const { return lo_; }
  int order() const { return order_; }
  bool is_exact() const { return order_ == kExactOrder; }
  bool is_zero() const { return coeffs_.empty(); }
  /// One past the last stored exponent.
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()); }
  std::span<const Coeff> stored() const { return coeffs_; }

  /// Coefficient of (x - center)^e. Throws InsufficientTruncation when e is
  /// not below the validity order.
  Coeff coeff(int e) const {
    if (e >= order_) {
      throw InsufficientTruncation("coefficient x^" + std::to_string(e) + " requested at " +
                                   center_ + " but series is valid below x^" +
                                   std::to_string(order_));
    }
    if (e < lo_ || e >= hi()) return Coeff();
    return coeffs_[static_cast<std::size_t>(e - lo_)];
  }

  /// Same series with validity lowered to min(order, new_order).
  Series truncated(int new_order) const {
    if (new_order >= order_) return *this;
    Series out(center_, lo_, coeffs_, new_order);
    return out;
  }

  /// Same coefficients re-tagged with another center label.
  Series recentered(std::string center) const {
    Series out = *this;
    out.center_ = std::move(center);
    return out;
  }

  template <class F>
  auto transform(F&& f) const -> Series<std::decay_t<decltype(f(std::declval<const Coeff&>()))>> {
    using Out = std::decay_t<decltype(f(std::declval<const Coeff&>()))>;
    std::vector<Out> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Series<Out>(center_, is_zero() ? order_ : lo_, std::move(out), order_);
  }

  Series operator-() const {
    return transform([](const Coeff& c) { return -c; });
  }

  template <class S>
  Series scaled(const S& s) const {
    return transform([&](const Coeff& c) { return c * s; });
  }

  Series& operator+=(const Series& rhs) { return *this = combine(*this, rhs, false); }
  Series& operator-=(const Series& rhs) { return *this = combine(*this, rhs, true); }
  Series& operator*=(const Series& rhs) { return *this = multiply(*this, rhs); }

  friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
  friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }
  friend Series operator*(const Series& a, const Series& b) { return multiply(a, b); }

  bool operator==(const Series& rhs) const = default;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (is_zero_coeff(coeffs_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coeffs_[i].str() + ")*x^" + std::to_string(lo_ + static_cast<int>(i));
    }
    if (s.empty()) s = "0";
    if (!is_exact()) s += " + O(x^" + std::to_string(order_) + ")";
    return s;
  }

 private:
  static bool is_zero_coeff(const Coeff& c) { return rank2::is_zero(c); }

  static void check_center(const Series& a, const Series& b) {
    if (a.center_ != b.center_) {
      throw CenterMismatch("series centered at " + a.center_ + " and " + b.center_);
    }
  }

  void normalize() {
    if (order_ != kExactOrder && !coeffs_.empty()) {
      long keep = static_cast<long>(order_) - lo_;
      if (keep <= 0) {
        coeffs_.clear();
      } else if (static_cast<long>(coeffs_.size()) > keep) {
        coeffs_.resize(static_cast<std::size_t>(keep));
      }
    }
    while (!coeffs_.empty() && is_zero_coeff(coeffs_.back())) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && is_zero_coeff(coeffs_[lead])) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      lo_ = order_;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
      lo_ += static_cast<int>(lead);
    }
  }

  static Series combine(const Series& a, const Series& b, bool subtract) {
    check_center(a, b);
    int order = std::min(a.order_, b.order_);
    if (a.is_zero() && b.is_zero()) return Series(a.center_, order);
    int lo = std::min(a.is_zero() ? b.lo_ : a.lo_, b.is_zero() ? a.lo_ : b.lo_);
    int hi = std::max(a.is_zero() ? lo : a.hi(), b.is_zero() ? lo : b.hi());
    if (order != kExactOrder) hi = std::min(hi, order);
    if (hi <= lo) return Series(a.center_, order);
    std::vector<Coeff> out(static_cast<std::size_t>(hi - lo));
    for (int e = std::max(lo, a.lo_); e < std::min(hi, a.hi()); ++e) {
      out[static_cast<std::size_t>(e - lo)] = a.coeffs_[static_cast<std::size_t>(e - a.lo_)];
    }
    for (int e = std::max(lo, b.lo_); e < std::min(hi, b.hi()); ++e) {
      auto& slot = out[static_cast<std::size_t>(e - lo)];
      const auto& c = b.coeffs_[static_cast<std::size_t>(e - b.lo_)];
      if (subtract) {
        slot -= c;
      } else {
        slot += c;
      }
    }
    return Series(a.center_, lo, std::move(out), order);
  }

  static Series multiply(const Series& a, const Series& b) {
    check_center(a, b);
    int order = std::min(saturating_add(a.lo_, b.order_), saturating_add(b.lo_, a.order_));
    if (a.is_zero() || b.is_zero()) return Series(a.center_, order);
    int lo = a.lo_ + b.lo_;
    long len = static_cast<long>(a.coeffs_.size() + b.coeffs_.size()) - 1;
    if (order != kExactOrder) len = std::min<long>(len, static_cast<long>(order) - lo);
    if (len <= 0) return Series(a.center_, order);
    std::vector<Coeff> out(static_cast<std::size_t>(len));
    for (std::size_t i = 0; i < a.coeffs_.size() && static_cast<long>(i) < len; ++i) {
      if (is_zero_coeff(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size() && static_cast<long>(i + j) < len; ++j) {
        if (is_zero_coeff(b.coeffs_[j])) continue;
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Series(a.center_, lo, std::move(out), order);
  }

  std::string center_ = "origin";
  int lo_ = kExactOrder;
  std::vector<Coeff> coeffs_;
  int order_ = kExactOrder;
};

/// k-fold termwise derivative; validity order drops by k.
template <class Coeff>
Series<Coeff> derivative(const Series<Coeff>& a, int k = 1) {
  if (k < 0) throw Error("negative derivative count");
  int order = a.is_exact() ? kExactOrder : a.order() - k;
  if (a.is_zero() || k == 0) return k == 0 ? a : Series<Coeff>(a.center(), order);
  std::vector<Coeff> out;
  out.reserve(a.stored().size());
  int e = a.lo();
  for (const auto& c : a.stored()) {
    long factor = 1;
    for (int i = 0; i < k; ++i) factor *= (e - i);
    out.push_back(c * Scalar(factor));
    ++e;
  }
  return Series<Coeff>(a.center(), a.lo() - k, std::move(out), order);
}

/// Termwise antiderivative with zero integration constant. The x^-1
/// coefficient must vanish; otherwise ResidueNonZero is thrown.
template <class Coeff>
Series<Coeff> antiderivative(const Series<Coeff>& a) {
  int order = saturating_add(a.order(), 1);
  if (a.is_zero()) return Series<Coeff>(a.center(), order);
  if (a.lo() <= -1) {
    Coeff residue = a.coeff(-1);  // throws when x^-1 is beyond the validity order
    if (!is_zero(residue)) throw ResidueNonZero(a.center(), AffineForm(residue));
  }
  std::vector<Coeff> out;
  out.reserve(a.stored().size());
  int e = a.lo();
  for (const auto& c : a.stored()) {
    out.push_back(e == -1 ? Coeff() : c / Scalar(e + 1));
    ++e;
  }
  return Series<Coeff>(a.center(), a.lo() + 1, std::move(out), order);
}

/// Multiplicative inverse up to the truncation order. The result is valid
/// below order(a) - 2 lo(a).
template <class Coeff>
Series<Coeff> inverse(const Series<Coeff>& a) {
  if (a.is_zero()) throw ZeroSeries("inverse of the zero series at " + a.center());
  auto terms = a.stored();
  Coeff lead_inv = leading_inverse(terms.front());
  if (a.is_exact()) {
    if (terms.size() != 1) {
      throw InsufficientTruncation("inverse of an exact multi-term series needs a truncation order");
    }
    return Series<Coeff>::monomial(a.center(), -a.lo(), lead_inv);
  }
  int len = a.order() - a.lo();
  std::vector<Coeff> b(static_cast<std::size_t>(len));
  b[0] = lead_inv;
  for (int m = 1; m < len; ++m) {
    Coeff acc;
    for (int k = 1; k <= m && k < static_cast<int>(terms.size()); ++k) {
      acc += terms[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(m - k)];
    }
    b[static_cast<std::size_t>(m)] = -(acc * lead_inv);
  }
  return Series<Coeff>(a.center(), -a.lo(), std::move(b), a.order() - 2 * a.lo());
}

}  // namespace rank2
