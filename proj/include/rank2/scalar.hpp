#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "rank2/error.hpp"

namespace rank2 {

/// The field Q[t]/(t^2 - p t - q). Construction fails unless the quadratic
/// is irreducible over Q, so every nonzero element is invertible.
class QuadraticField {
 public:
  QuadraticField(mpq_class p, mpq_class q, std::string generator = "t");

  const mpq_class& p() const { return p_; }
  const mpq_class& q() const { return q_; }
  const std::string& generator() const { return generator_; }

  /// Two descriptors denote the same field when their moduli agree.
  bool operator==(const QuadraticField& other) const {
    return p_ == other.p_ && q_ == other.q_;
  }

 private:
  mpq_class p_;
  mpq_class q_;
  std::string generator_;
};

using FieldPtr = std::shared_ptr<const QuadraticField>;

FieldPtr make_field(const mpq_class& p, const mpq_class& q,
                    std::string generator = "t");

/// True when r is the square of a rational number.
bool is_rational_square(const mpq_class& r);

/// Exact scalar a + b t. A null field means plain Q (b is then zero).
/// Rationals embed in every quadratic field; combining elements of two
/// different quadratic fields throws FieldMismatch.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : a_(value) {}
  Scalar(const mpq_class& value) : a_(value) {}
  Scalar(mpq_class a, mpq_class b, FieldPtr field);

  static Scalar ratio(long num, long den);
  static Scalar generator(FieldPtr field);
  /// Parses "p/q" or "p" (base-10 integers, optional sign).
  static Scalar parse(std::string_view text);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& irrational_part() const { return b_; }
  const FieldPtr& field() const { return field_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  /// Value as a rational; throws if the t-part is nonzero.
  const mpq_class& to_rational() const;

  Scalar inverse() const;
  /// Image under t -> p - t.
  Scalar conjugate() const;
  /// a^2 + a b p - b^2 q, the field norm down to Q.
  mpq_class norm() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  bool operator==(const Scalar& rhs) const;
  bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

  /// Canonical text: "p/q" for rationals, "p/q+r/s*t" otherwise.
  std::string str() const;

 private:
  FieldPtr common_field(const Scalar& rhs) const;

  mpq_class a_;
  mpq_class b_;
  FieldPtr field_;
};

/// Canonical "p/q" text of a rational, denominator always present.
std::string fraction_string(const mpq_class& r);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline Scalar leading_inverse(const Scalar& s) { return s.inverse(); }

}  // namespace rank2
