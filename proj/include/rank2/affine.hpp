#pragma once

#include <map>
#include <string>

#include "rank2/scalar.hpp"

namespace rank2 {

/// Assignment of values to integration constants C_i, keyed by i.
using ConstantAssignment = std::map<int, Scalar>;

/// constant + sum_i coeff_i * C_i. Zero coefficients are never stored.
class AffineForm {
 public:
  AffineForm() = default;
  AffineForm(Scalar constant) : constant_(std::move(constant)) {}
  AffineForm(long constant) : constant_(constant) {}

  /// coeff * C_index
  static AffineForm unknown(int index, Scalar coeff = Scalar(1));

  const Scalar& constant() const { return constant_; }
  const std::map<int, Scalar>& linear() const { return linear_; }
  Scalar coefficient(int index) const;

  bool is_zero() const { return linear_.empty() && constant_.is_zero(); }
  bool is_constant() const { return linear_.empty(); }
  /// Largest constant index present, 0 when purely scalar.
  int max_index() const { return linear_.empty() ? 0 : linear_.rbegin()->first; }

  /// The scalar value; throws LeadingCoefficientNotScalar when some C_i occurs.
  const Scalar& as_scalar() const;

  /// Substitutes the assigned constants; unassigned ones stay symbolic.
  AffineForm substitute(const ConstantAssignment& values) const;

  AffineForm operator-() const;
  AffineForm& operator+=(const AffineForm& rhs);
  AffineForm& operator-=(const AffineForm& rhs);
  /// Throws NonlinearInConstants when both operands mention constants.
  AffineForm& operator*=(const AffineForm& rhs);
  AffineForm& operator*=(const Scalar& rhs);
  AffineForm& operator/=(const Scalar& rhs);

  friend AffineForm operator+(AffineForm l, const AffineForm& r) { return l += r; }
  friend AffineForm operator-(AffineForm l, const AffineForm& r) { return l -= r; }
  friend AffineForm operator*(AffineForm l, const AffineForm& r) { return l *= r; }
  friend AffineForm operator*(AffineForm l, const Scalar& r) { return l *= r; }
  friend AffineForm operator*(const Scalar& l, AffineForm r) { return r *= l; }
  friend AffineForm operator/(AffineForm l, const Scalar& r) { return l /= r; }

  bool operator==(const AffineForm& rhs) const {
    return constant_ == rhs.constant_ && linear_ == rhs.linear_;
  }
  bool operator!=(const AffineForm& rhs) const { return !(*this == rhs); }

  /// e.g. "-42/1 + 1/1*C1"
  std::string str() const;

 private:
  void add_term(int index, const Scalar& coeff);

  Scalar constant_;
  std::map<int, Scalar> linear_;
};

inline bool is_zero(const AffineForm& f) { return f.is_zero(); }
inline AffineForm leading_inverse(const AffineForm& f) { return f.as_scalar().inverse(); }

}  // namespace rank2
