#pragma once

#include <string>

#include "rank2/affine.hpp"
#include "rank2/series.hpp"

namespace rank2 {

/// Series whose coefficients are affine in the integration constants.
using LaurentSeries = Series<AffineForm>;
/// Series with purely scalar coefficients.
using ScalarSeries = Series<Scalar>;

inline LaurentSeries lift(const ScalarSeries& s) {
  return s.transform([](const Scalar& c) { return AffineForm(c); });
}

/// Substitutes constants and demands the result be purely scalar.
inline ScalarSeries substitute(const LaurentSeries& s, const ConstantAssignment& values) {
  return s.transform([&](const AffineForm& c) { return c.substitute(values).as_scalar(); });
}

/// Taylor expansion of (t + shift)^k around t = 0, valid below `order`.
/// Finite (exact) for k >= 0; shift must be nonzero when k < 0.
ScalarSeries binomial_expansion(const std::string& center, const Scalar& shift, int k,
                                int order);

}  // namespace rank2
