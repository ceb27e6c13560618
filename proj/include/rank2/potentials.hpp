#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rank2/laurent.hpp"

namespace rank2 {

/// Laurent data of u at one pole. `phi[k]` is the coefficient of (x - a)^k;
/// entries with k >= 0 are polynomial summands of u, so a rational potential
/// is  constant + sum over poles of sum_k phi[k] (x - a)^k.
struct PoleData {
  Scalar location;
  std::optional<int> n;  // declared strength level, informational
  std::map<int, Scalar> phi;

  std::string label() const;
};

enum class PotentialClass { RationalNoPoleAtInfinity, Elliptic, EntirePolynomial };

/// Which half-period the elliptic shift uses: wp(omega) = 0, +e or -e with
/// e^2 = g2/4.
enum class HalfPeriod { Zero, Plus, Minus };

struct RationalData {
  Scalar constant;
  std::vector<PoleData> poles;
};

/// u = coefficient * (wp(x)^2 + [wp(x - omega)^2 when shifted]).
struct EllipticData {
  Scalar coefficient;
  std::optional<int> n;
  Scalar g2;
  Scalar g3;
  std::optional<HalfPeriod> shift;
};

/// L = (d^2 + V)^2 + W with polynomial V, W; coefficients ascending.
struct EntireData {
  std::vector<Scalar> V;
  std::vector<Scalar> W;
};

struct Potential {
  PotentialClass kind;
  std::variant<RationalData, EllipticData, EntireData> payload;
  FieldPtr extension;  // active quadratic field, if any

  const RationalData* rational() const { return std::get_if<RationalData>(&payload); }
  const EllipticData* elliptic() const { return std::get_if<EllipticData>(&payload); }
  const EntireData* entire() const { return std::get_if<EntireData>(&payload); }
};

/// n(4n+1)(4n+3)(4n+4)
Scalar pole_strength(int n);
/// The n >= 1 with pole_strength(n) == phi, if any.
std::optional<int> quantization_level(const Scalar& phi);

/// wp = x^-2 + sum_{k>=2} c_k x^(2k-2) with (wp')^2 = 4 wp^3 - g2 wp - g3,
/// valid below `order`. Exact when g2 = g3 = 0.
ScalarSeries weierstrass_series(const Scalar& g2, const Scalar& g3, int order,
                                const std::string& center = "origin");

/// Taylor series at 0 of wp(x - omega) for g3 = 0, valid below `order`.
/// The +-e branches need e = sqrt(g2)/2, either rational or a rational
/// multiple of the generator of `field` (which must have the form t^2 = q).
ScalarSeries half_period_shift(const Scalar& g2, int order, HalfPeriod branch = HalfPeriod::Zero,
                               const FieldPtr& field = nullptr,
                               const std::string& center = "origin");

/// The value wp(omega) on the given branch.
Scalar half_period_value(const Scalar& g2, HalfPeriod branch, const FieldPtr& field);

Potential make_rational(Scalar constant, std::vector<PoleData> poles, FieldPtr field = nullptr);
Potential make_elliptic(EllipticData data, FieldPtr field = nullptr);
Potential build_elliptic_u(int n, const Scalar& g2, const Scalar& g3, bool shifted,
                           HalfPeriod branch = HalfPeriod::Zero, FieldPtr field = nullptr);
Potential make_entire(std::vector<Scalar> V, std::vector<Scalar> W);

struct LocalExpansion {
  std::string label;
  ScalarSeries u;
};

/// Laurent expansion of u at every pole, valid below `order`. A potential
/// without poles yields one expansion at "origin".
std::vector<LocalExpansion> local_expansions(const Potential& p, int order);

struct LocalPair {
  std::string label;
  ScalarSeries V;
  ScalarSeries W;
};

/// (V, W) at every center; V is zero unless the potential is entire.
std::vector<LocalPair> local_pairs(const Potential& p, int order);

/// Polynomial part of a rational potential in global x (constant included).
ScalarSeries polynomial_tail(const RationalData& data);

std::string class_name(PotentialClass c);
std::string half_period_name(HalfPeriod h);

}  // namespace rank2
