#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rank2/linalg.hpp"
#include "rank2/potentials.hpp"

namespace rank2 {

/// Which necessary condition failed.
enum class Tag {
  PoleOrder,           // a pole of order other than 4
  PoleStrength,        // phi_-4 not of the form n(4n+1)(4n+3)(4n+4)
  PrincipalPart,       // phi_-3, phi_-2 or phi_-1 nonzero
  CoefficientPattern,  // a forced phi_{4k-l} nonzero
  PoleAtInfinity,      // nonconstant polynomial tail
  Residue,             // an integrand with nonzero x^-1 coefficient
  ClosureInconsistent, // no constants make f_{g+1} constant
  ClosureCertificate,  // solved f_{g+1} still has a nonconstant Taylor tail
  CurveXDependence,
  LogarithmRequired,
};

std::string tag_name(Tag t);
/// Human-readable statement of the failed condition.
std::string tag_condition(Tag t);

struct Obstruction {
  Tag tag;
  std::string center;
  int exponent = 0;
  AffineForm value;
  std::string detail;
};

struct CenterState {
  std::string label;
  ScalarSeries V;
  ScalarSeries W;
  std::vector<LaurentSeries> f;  // f[0] = f_1, ..., f[g] = f_{g+1}
};

struct HierarchyState {
  int genus = 0;
  int order = 0;  // expansion order of the input data
  std::vector<CenterState> centers;
  /// x^-1 coefficients of integrands that are affine in the constants; each
  /// must vanish for f to stay meromorphic.
  std::vector<std::pair<std::string, AffineForm>> residue_equations;
};

/// One step of the recursion:
///   f_next = C_next + int (1/4)(-f^(5) - 4V f''' - 6V' f'' + 2(2W - V'') f' + 2W' f).
/// With `residues` null a nonzero x^-1 integrand coefficient throws
/// ResidueNonZero; otherwise non-scalar residues are appended there and
/// dropped from the integrand.
LaurentSeries step(const LaurentSeries& f, const LaurentSeries& V, const LaurentSeries& W,
                   int next_constant_index, std::vector<AffineForm>* residues = nullptr);

/// Smallest expansion order accepted for genus g, and the order needed to
/// certify f_{g+1} through exponent E.
int minimum_order(int g);
int budget_order(int g, int certified_exponent);
int default_order(int g);

using RunResult = std::variant<HierarchyState, Obstruction>;

/// Computes f_1..f_{g+1} at every center. Throws InsufficientTruncation
/// when `order` is below minimum_order(g).
RunResult run(const Potential& p, int g, int order);

struct Closure {
  ConstantAssignment constants;  // C_1..C_g, free ones pinned to 0
  std::vector<int> free;
  /// f_{g+1} with the constants substituted (and C_{g+1} = 0), per center.
  std::vector<std::pair<std::string, ScalarSeries>> final_series;
  Scalar final_constant;
  /// Lowest exponent through which every f_{g+1} was checked constant.
  int certified_below = 0;
};

using CloseResult = std::variant<Closure, Obstruction>;

CloseResult close(const HierarchyState& state, const Potential& p);

struct PoleCheckPass {
  std::vector<std::pair<std::string, int>> levels;  // label -> n
};

struct PoleViolation {
  Tag tag;
  std::string label;
  int exponent = 0;
  int k = 0;
  int l = 0;
  Scalar value;
};

using PoleVerdict = std::variant<PoleCheckPass, PoleViolation>;

/// Necessary pole conditions for a rational or elliptic potential: order
/// exactly 4, quantized phi_-4, vanishing phi_-3..phi_-1, phi_{4k-l} = 0 for
/// k = 1..n and l = 1,2,3, and phi_{4r-1} = phi_{4r-3} = 0 for r = n+1..g.
/// Returns the first failure.
PoleVerdict check_pole_conditions(const Potential& p, int g);

struct InfinityPass {};
struct InfinityNotApplicable {
  std::string reason;
};
struct InfinityViolation {
  int degree = 0;
  Scalar leading;
  /// Leading coefficients A^1..A^4 of the growing pole at infinity.
  std::vector<Scalar> growth;
};

using InfinityVerdict = std::variant<InfinityPass, InfinityNotApplicable, InfinityViolation>;

InfinityVerdict check_infinity(const Potential& p);

/// A^{k+1} = ((2k+1)/(2k+2)) phi A^k starting at A^1 = phi/2: leading
/// coefficient of f_{k} when u grows like phi x^m at infinity.
Scalar infinity_leading(const Scalar& phi, int k);

/// Coefficient of x^-4k in f_k for u = phi4 x^-4 + ... .
Scalar leading_pole_coefficient(const Scalar& phi4, int k);

/// Coefficient of x^{4m-4(k-1)-l} in f_k, with every C_i set to zero, when
/// u = phi4 x^-4 + phi_pert x^{4m-l}. Requires l in {1,2,3} and k >= 1.
Scalar subleading_coefficient(const Scalar& phi4, const Scalar& phi_pert, int m, int l, int k);

/// The factor K with subleading_coefficient = phi_pert * K.
Scalar subleading_factor(const Scalar& phi4, int m, int l, int k);

struct ConjectureReport {
  bool pattern_ok = false;
  std::optional<PoleViolation> pattern_violation;
  bool ran = false;
  int S = 0;
  int order = 0;
  std::optional<CloseResult> outcome;
  std::optional<Obstruction> run_obstruction;
};

/// Runs the hierarchy to f_{S+1}, S = sum n_i + 1, for poles that satisfy
/// the coefficient pattern, and reports whether the constant system closes.
/// Exploratory: nothing is asserted. With `force` the run happens even when
/// the pattern gate fails. order <= 0 picks the default budget.
ConjectureReport explore_conjecture(const std::vector<PoleData>& poles, int order, bool force,
                                    const Scalar& constant = Scalar());

}  // namespace rank2
