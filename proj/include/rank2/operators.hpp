#pragma once

#include <string>
#include <vector>

#include "rank2/laurent.hpp"

namespace rank2 {

/// sum_k c_k d^k with series coefficients sharing one center. The top
/// coefficient is nonzero; the zero operator has no coefficients.
class DiffOperator {
 public:
  explicit DiffOperator(std::string center = "origin") : center_(std::move(center)) {}
  DiffOperator(std::string center, std::vector<ScalarSeries> coeffs);

  /// d^k
  static DiffOperator d(int k, const std::string& center = "origin");
  /// Multiplication by s.
  static DiffOperator mult(const ScalarSeries& s);
  /// Multiplication by the polynomial with ascending coefficients.
  static DiffOperator poly(const std::vector<Scalar>& coeffs, const std::string& center = "origin");

  const std::string& center() const { return center_; }
  /// Order of the operator; -1 for the zero operator.
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<ScalarSeries>& coeffs() const { return coeffs_; }
  ScalarSeries coeff(int k) const;

  DiffOperator operator-() const;
  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
  /// Composition (a then b applied first), by the Leibniz rule.
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
  DiffOperator scaled(const Scalar& s) const;

  bool operator==(const DiffOperator& rhs) const = default;

  /// Applies the operator to a series.
  ScalarSeries apply(const ScalarSeries& psi) const;

  std::string str() const;

 private:
  void normalize();

  std::string center_;
  std::vector<ScalarSeries> coeffs_;
};

DiffOperator power(const DiffOperator& a, int k);
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);

/// (d^2 + V)^2 + W = d^4 + 2V d^2 + 2V' d + (V^2 + V'' + W).
DiffOperator build_L(const ScalarSeries& V, const ScalarSeries& W);

/// x^sigma * body for a sigma from an extension field.
struct ShiftedSeries {
  Scalar sigma;
  ScalarSeries body;

  ShiftedSeries derivative() const;
};

/// Applies the operator to x^sigma * body. Coefficients must be centered at
/// the expansion point of the body.
ShiftedSeries apply(const DiffOperator& op, const ShiftedSeries& psi);

}  // namespace rank2
