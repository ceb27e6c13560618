#include "rank2/affine.hpp"

namespace rank2 {

AffineForm AffineForm::unknown(int index, Scalar coeff) {
  AffineForm f;
  f.add_term(index, coeff);
  return f;
}

Scalar AffineForm::coefficient(int index) const {
  auto it = linear_.find(index);
  return it == linear_.end() ? Scalar() : it->second;
}

const Scalar& AffineForm::as_scalar() const {
  if (!linear_.empty()) {
    throw LeadingCoefficientNotScalar("coefficient " + str() + " depends on constants");
  }
  return constant_;
}

void AffineForm::add_term(int index, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = linear_.try_emplace(index, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) linear_.erase(it);
  }
}

AffineForm AffineForm::substitute(const ConstantAssignment& values) const {
  AffineForm out(constant_);
  for (const auto& [index, coeff] : linear_) {
    auto it = values.find(index);
    if (it == values.end()) {
      out.add_term(index, coeff);
    } else {
      out.constant_ += coeff * it->second;
    }
  }
  return out;
}

AffineForm AffineForm::operator-() const {
  AffineForm out;
  out.constant_ = -constant_;
  for (const auto& [index, coeff] : linear_) out.linear_.emplace(index, -coeff);
  return out;
}

AffineForm& AffineForm::operator+=(const AffineForm& rhs) {
  constant_ += rhs.constant_;
  for (const auto& [index, coeff] : rhs.linear_) add_term(index, coeff);
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& rhs) {
  constant_ -= rhs.constant_;
  for (const auto& [index, coeff] : rhs.linear_) add_term(index, -coeff);
  return *this;
}

AffineForm& AffineForm::operator*=(const AffineForm& rhs) {
  if (!linear_.empty() && !rhs.linear_.empty()) {
    throw NonlinearInConstants("product (" + str() + ")*(" + rhs.str() +
                               ") would contain C_i*C_j terms");
  }
  if (rhs.linear_.empty()) return *this *= rhs.constant_;
  AffineForm out = rhs;
  out *= constant_;
  return *this = std::move(out);
}

AffineForm& AffineForm::operator*=(const Scalar& rhs) {
  if (rhs.is_zero()) {
    constant_ = constant_ * rhs;
    linear_.clear();
    return *this;
  }
  constant_ *= rhs;
  for (auto& [index, coeff] : linear_) coeff *= rhs;
  return *this;
}

AffineForm& AffineForm::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

std::string AffineForm::str() const {
  std::string s = constant_.str();
  for (const auto& [index, coeff] : linear_) {
    s += " + " + coeff.str() + "*C" + std::to_string(index);
  }
  return s;
}

}  // namespace rank2
