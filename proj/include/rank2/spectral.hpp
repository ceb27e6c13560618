#pragma once

#include <vector>

#include "rank2/hierarchy.hpp"

namespace rank2 {

/// Polynomial in z with series coefficients; entry i multiplies z^i.
using ZPoly = std::vector<ScalarSeries>;

/// Q = z^g + a_1 z^{g-1} + ... + a_g at one center.
struct QPoly {
  int genus = 0;
  std::vector<ScalarSeries> a;  // a_1..a_g

  ZPoly as_zpoly(const std::string& center) const;
};

/// Assembles Q from the solved hierarchy at one center (a_i = f_i with the
/// constants substituted and C_{g+1} = 0).
QPoly make_qpoly(const CenterState& center, const ConstantAssignment& constants, int g);

/// Coefficients (by z power) of
///   Q^(5) + 4V Q''' + 6V' Q'' + 2Q'(2z - 2W + V'') - 2Q W'.
ZPoly relation_residual(const QPoly& q, const ScalarSeries& V, const ScalarSeries& W);

struct RelationReport {
  bool zero = true;
  int worst_power = -1;  // z power of the first nonzero residual, if any
  ScalarSeries worst;
  int validity = kExactOrder;  // smallest order among the residual coefficients
};

RelationReport verify_relation(const QPoly& q, const ScalarSeries& V, const ScalarSeries& W);

struct SpectralCurve {
  std::vector<Scalar> coeffs;  // F(z) ascending in z, monic of degree 2g+1
  Scalar discriminant;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool nonsingular() const { return !discriminant.is_zero(); }
};

/// 4F = 4(z - W)Q^2 - 4V(Q')^2 + (Q'')^2 - 2Q'Q''' + 2Q(2V'Q' + 4VQ'' + Q^(4)),
/// with every z-coefficient required to be independent of x.
SpectralCurve curve(const QPoly& q, const ScalarSeries& V, const ScalarSeries& W);

/// Resultant of two polynomials (ascending coefficients) via the Sylvester
/// matrix.
Scalar resultant(const std::vector<Scalar>& f, const std::vector<Scalar>& g);

/// (-1)^{n(n-1)/2} Res(F, F') / lead(F).
Scalar discriminant(const std::vector<Scalar>& F);

std::string polynomial_string(const std::vector<Scalar>& coeffs, const std::string& var = "z");

}  // namespace rank2
