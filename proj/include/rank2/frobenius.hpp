#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rank2/hierarchy.hpp"
#include "rank2/operators.hpp"

namespace rank2 {

/// sigma^2 - s sigma + P
struct QuadraticFactor {
  Scalar s;
  Scalar P;

  Scalar discriminant() const { return s * s - Scalar(4) * P; }
  /// True when the quadratic has no rational root.
  bool irreducible() const;
  Scalar eval(const Scalar& sigma) const { return sigma * sigma - s * sigma + P; }
};

struct IndicialData {
  Scalar phi4;
  std::vector<Scalar> f0;  // [sigma]_4 + phi4, ascending in sigma
  bool quantized = false;
  int n = 0;
  std::optional<QuadraticFactor> low;   // sigma^2 - (1-4n) sigma + (8n^2+2n)
  std::optional<QuadraticFactor> high;  // sigma^2 - (5+4n) sigma + (8n^2+14n+6)
  int resonance_gap = 0;                // 4n+2
  /// Rational exponents, filled only when phi4 = 0.
  std::vector<Scalar> rational_exponents;
};

/// Indicial data of d^4 + u at a pole with leading coefficient phi4. A
/// non-quantized phi4 yields the quartic alone (quantized = false).
IndicialData indicial(const Scalar& phi4);

/// Evaluates f0 at sigma.
Scalar indicial_value(const Scalar& phi4, const Scalar& sigma);

enum class Branch { Low, High };
std::string branch_name(Branch b);

struct ResonanceRecord {
  int m = 0;
  Scalar obstruction;
  bool set_free = false;  // c_m pinned to 0
};

struct FrobeniusSolution {
  std::string label;
  Scalar sigma;            // generator of the branch field, or a rational exponent
  Scalar lambda;
  std::vector<Scalar> c;   // c_0..c_M, c_0 = 1
  std::vector<ResonanceRecord> resonances;
};

/// A nonzero obstruction at a resonance: the series needs a logarithm.
class LogarithmRequired : public Error {
 public:
  LogarithmRequired(int m, Scalar obstruction)
      : Error("logarithm required at resonance m = " + std::to_string(m) +
              " (obstruction " + obstruction.str() + ")"),
        m(m),
        obstruction(std::move(obstruction)) {}
  int m;
  Scalar obstruction;
};

/// The field Q[sigma]/(quadratic) with sigma as generator.
FieldPtr branch_field(const QuadraticFactor& q);

/// Frobenius coefficients of x^sigma sum c_m x^m solving (d^4 + u - lambda) psi = 0,
/// where u_local has a pole of order at most 4 at its center and sigma is
/// any exponent (rational or in an extension field).
FrobeniusSolution frobenius_series_at(const ScalarSeries& u_local, const Scalar& lambda,
                                      const Scalar& sigma, int M);

/// Same, on the low or high branch of a quantized pole.
FrobeniusSolution frobenius_series(const ScalarSeries& u_local, const Scalar& lambda, Branch branch,
                                   int M);

/// p_k: coefficient of x^{k-4} in u - lambda, k = 0..M.
std::vector<Scalar> frobenius_inputs(const ScalarSeries& u_local, const Scalar& lambda, int M);

/// c_m = (-1)^m F_m(sigma) / prod_{j=1..m} f0(sigma+j) with F_m the m x m
/// determinant built from the p_k and f0. Throws ResonantDenominator.
Scalar fm_determinant(const ScalarSeries& u_local, const Scalar& lambda, const Scalar& sigma, int m,
                      const Scalar& c0 = Scalar(1));

/// x^4 (psi'''' + (u - lambda) psi) for the truncated psi, as a shifted
/// series; zero below x^{sigma+M+1} for an exact solution.
ShiftedSeries eigen_residual(const ScalarSeries& u_local, const FrobeniusSolution& sol);

struct BranchVerdict {
  std::string label;
  Scalar lambda;
  Branch branch;
  bool pass = false;
  std::optional<int> resonance;     // m = 4n+2 on the low branch
  std::optional<Scalar> obstruction;
  bool structural_zero = false;     // every p_k with k not divisible by 4 vanishes
  bool residual_zero = false;
  int terms = 0;
};

struct NoLogReport {
  bool gated = false;  // pole conditions held
  std::optional<PoleViolation> gate_violation;
  bool branch_point = false;  // no exponent is rational
  int n = 0;
  std::vector<BranchVerdict> verdicts;
};

/// Runs both branches through the resonance at the pole `label` for each
/// lambda. With `force` the pole-condition gate is reported but not enforced.
/// M <= 0 picks 4n+8 terms.
NoLogReport no_log_check(const Potential& p, const std::string& label,
                         const std::vector<Scalar>& lambdas, bool force = false, int M = 0);

}  // namespace rank2
