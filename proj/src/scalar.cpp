#include "rank2/scalar.hpp"

#include <ostream>

namespace rank2 {

namespace {

bool is_square(const mpz_class& z) {
  return sgn(z) >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

}  // namespace

bool is_rational_square(const mpq_class& r) {
  return is_square(r.get_num()) && is_square(r.get_den());
}

QuadraticField::QuadraticField(mpq_class p, mpq_class q, std::string generator)
    : p_(std::move(p)), q_(std::move(q)), generator_(std::move(generator)) {
  // t^2 - p t - q splits over Q iff p^2 + 4q is a rational square.
  mpq_class disc = p_ * p_ + 4 * q_;
  if (is_rational_square(disc)) {
    throw Error("quadratic t^2 - (" + fraction_string(p_) + ")t - (" +
                fraction_string(q_) + ") is reducible over Q");
  }
}

FieldPtr make_field(const mpq_class& p, const mpq_class& q,
                    std::string generator) {
  return std::make_shared<const QuadraticField>(p, q, std::move(generator));
}

Scalar::Scalar(mpq_class a, mpq_class b, FieldPtr field)
    : a_(std::move(a)), b_(std::move(b)), field_(std::move(field)) {
  a_.canonicalize();
  b_.canonicalize();
  if (!field_ && sgn(b_) != 0) {
    throw FieldMismatch("irrational part given without a quadratic field");
  }
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw DivisionByZero("zero denominator");
  mpq_class r(num, den);
  r.canonicalize();
  return Scalar(r);
}

Scalar Scalar::generator(FieldPtr field) {
  if (!field) throw FieldMismatch("generator requested without a field");
  return Scalar(0, 1, std::move(field));
}

Scalar Scalar::parse(std::string_view text) {
  auto slash = text.find('/');
  auto read_int = [&](std::string_view part) {
    std::string s(part);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0) {
      throw Error("malformed integer '" + std::string(part) + "'");
    }
    return z;
  };
  if (slash == std::string_view::npos) return Scalar(mpq_class(read_int(text)));
  mpz_class num = read_int(text.substr(0, slash));
  mpz_class den = read_int(text.substr(slash + 1));
  if (sgn(den) == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  mpq_class r(num, den);
  r.canonicalize();
  return Scalar(r);
}

const mpq_class& Scalar::to_rational() const {
  if (!is_rational()) throw FieldMismatch("scalar " + str() + " is not rational");
  return a_;
}

FieldPtr Scalar::common_field(const Scalar& rhs) const {
  if (!field_) return rhs.field_;
  if (!rhs.field_ || field_ == rhs.field_ || *field_ == *rhs.field_) return field_;
  // A rational value carrying a stale field tag still embeds everywhere.
  if (rhs.is_rational()) return field_;
  if (is_rational()) return rhs.field_;
  throw FieldMismatch("scalars from different quadratic fields");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  field_ = common_field(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  field_ = common_field(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  field_ = common_field(rhs);
  if (is_rational() && rhs.is_rational()) {
    a_ *= rhs.a_;
    return *this;
  }
  // (a + b t)(c + d t) with t^2 = p t + q.
  mpq_class bd = b_ * rhs.b_;
  mpq_class a = a_ * rhs.a_ + bd * field_->q();
  mpq_class b = a_ * rhs.b_ + b_ * rhs.a_ + bd * field_->p();
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

mpq_class Scalar::norm() const {
  if (is_rational()) return a_ * a_;
  return a_ * a_ + a_ * b_ * field_->p() - b_ * b_ * field_->q();
}

Scalar Scalar::conjugate() const {
  if (is_rational()) return *this;
  return Scalar(a_ + b_ * field_->p(), -b_, field_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero scalar");
  if (is_rational()) {
    Scalar r = *this;
    r.a_ = 1 / a_;
    return r;
  }
  mpq_class n = norm();
  Scalar c = conjugate();
  return Scalar(c.a_ / n, c.b_ / n, field_);
}

bool Scalar::operator==(const Scalar& rhs) const {
  if (a_ != rhs.a_ || b_ != rhs.b_) return false;
  if (is_rational()) return true;
  return field_ == rhs.field_ || *field_ == *rhs.field_;
}

std::string fraction_string(const mpq_class& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string Scalar::str() const {
  if (is_rational()) return fraction_string(a_);
  std::string s = fraction_string(a_);
  s += sgn(b_) < 0 ? "-" : "+";
  s += fraction_string(abs(b_));
  s += "*" + field_->generator();
  return s;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace rank2
