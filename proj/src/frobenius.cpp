#include "rank2/frobenius.hpp"

#include "rank2/linalg.hpp"

namespace rank2 {

bool QuadraticFactor::irreducible() const {
  Scalar d = discriminant();
  return !d.is_rational() || !is_rational_square(d.to_rational());
}

Scalar indicial_value(const Scalar& phi4, const Scalar& sigma) {
  return sigma * (sigma - Scalar(1)) * (sigma - Scalar(2)) * (sigma - Scalar(3)) + phi4;
}

IndicialData indicial(const Scalar& phi4) {
  IndicialData out;
  out.phi4 = phi4;
  out.f0 = {phi4, Scalar(-6), Scalar(11), Scalar(-6), Scalar(1)};
  if (phi4.is_zero()) {
    out.rational_exponents = {Scalar(0), Scalar(1), Scalar(2), Scalar(3)};
    return out;
  }
  std::optional<int> n = quantization_level(phi4);
  if (!n) return out;
  const long k = *n;
  out.quantized = true;
  out.n = *n;
  out.low = QuadraticFactor{Scalar(1 - 4 * k), Scalar(8 * k * k + 2 * k)};
  out.high = QuadraticFactor{Scalar(5 + 4 * k), Scalar(8 * k * k + 14 * k + 6)};
  out.resonance_gap = 4 * *n + 2;

  // The factorization is checked, not assumed.
  const auto& a = *out.low;
  const auto& b = *out.high;
  std::vector<Scalar> product{a.P * b.P, -(a.s * b.P + a.P * b.s), a.P + b.P + a.s * b.s,
                              -(a.s + b.s), Scalar(1)};
  if (product != out.f0) throw Error("indicial factorization failed for phi_-4 = " + phi4.str());
  return out;
}

std::string branch_name(Branch b) { return b == Branch::Low ? "low" : "high"; }

FieldPtr branch_field(const QuadraticFactor& q) {
  // sigma^2 = s sigma - P, i.e. t^2 - p t - q with p = s, q = -P.
  return make_field(q.s.to_rational(), -q.P.to_rational(), "sigma");
}

std::vector<Scalar> frobenius_inputs(const ScalarSeries& u_local, const Scalar& lambda, int M) {
  if (!u_local.is_zero() && u_local.lo() < -4) {
    throw Error("pole of order " + std::to_string(-u_local.lo()) + " is not a regular singularity");
  }
  std::vector<Scalar> p;
  for (int k = 0; k <= M; ++k) {
    Scalar v = u_local.coeff(k - 4);
    if (k == 4) v -= lambda;
    p.push_back(std::move(v));
  }
  return p;
}

FrobeniusSolution frobenius_series_at(const ScalarSeries& u_local, const Scalar& lambda,
                                      const Scalar& sigma, int M) {
  std::vector<Scalar> p = frobenius_inputs(u_local, lambda, M);
  FrobeniusSolution sol{u_local.center(), sigma, lambda, {Scalar(1)}, {}};
  for (int m = 1; m <= M; ++m) {
    Scalar sum;
    for (int k = 1; k <= m; ++k) {
      if (!p[k].is_zero()) sum += sol.c[m - k] * p[k];
    }
    Scalar denom = indicial_value(p[0], sigma + Scalar(m));
    if (denom.is_zero()) {
      if (!sum.is_zero()) throw LogarithmRequired(m, sum);
      sol.resonances.push_back({m, sum, true});
      sol.c.emplace_back();
    } else {
      sol.c.push_back(-sum / denom);
    }
  }
  return sol;
}

FrobeniusSolution frobenius_series(const ScalarSeries& u_local, const Scalar& lambda, Branch branch,
                                   int M) {
  IndicialData ind = indicial(u_local.coeff(-4));
  if (!ind.quantized) {
    throw Error("pole strength " + ind.phi4.str() + " has no quantized branches");
  }
  const QuadraticFactor& q = branch == Branch::Low ? *ind.low : *ind.high;
  return frobenius_series_at(u_local, lambda, Scalar::generator(branch_field(q)), M);
}

Scalar fm_determinant(const ScalarSeries& u_local, const Scalar& lambda, const Scalar& sigma, int m,
                      const Scalar& c0) {
  if (m == 0) return c0;
  std::vector<Scalar> p = frobenius_inputs(u_local, lambda, m);
  Scalar denom(1);
  for (int j = 1; j <= m; ++j) {
    Scalar v = indicial_value(p[0], sigma + Scalar(j));
    if (v.is_zero()) {
      throw ResonantDenominator("f0(sigma + " + std::to_string(j) + ") vanishes");
    }
    denom *= v;
  }
  // Cramer's rule on the triangular system for c_1..c_m: entry (r, j) is
  // f_{r+1-j}(sigma + j) with f_0 the indicial polynomial and f_k = p_k.
  ScalarMatrix G(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < m; ++j) {
      int k = r + 1 - j;
      if (k < 0) continue;
      G(r, j) = k == 0 ? indicial_value(p[0], sigma + Scalar(j)) : p[k];
    }
  }
  Scalar det = determinant(std::move(G));
  Scalar c = c0 * det / denom;
  return m % 2 == 0 ? c : -c;
}

ShiftedSeries eigen_residual(const ScalarSeries& u_local, const FrobeniusSolution& sol) {
  const std::string& center = u_local.center();
  const int M = static_cast<int>(sol.c.size()) - 1;
  ShiftedSeries psi{sol.sigma, ScalarSeries(center, 0, sol.c)};
  ScalarSeries potential = u_local - ScalarSeries::constant(center, sol.lambda);
  DiffOperator op(center, {potential, ScalarSeries(center), ScalarSeries(center), ScalarSeries(center),
                           ScalarSeries::constant(center, Scalar(1))});
  ShiftedSeries r = apply(op, psi);
  r.body = (r.body * ScalarSeries::monomial(center, 4, Scalar(1))).truncated(M + 1);
  return r;
}

NoLogReport no_log_check(const Potential& p, const std::string& label,
                         const std::vector<Scalar>& lambdas, bool force, int M) {
  NoLogReport report;
  PoleVerdict gate = check_pole_conditions(p, 0);
  if (const auto* v = std::get_if<PoleViolation>(&gate)) {
    report.gate_violation = *v;
    if (!force) return report;
  } else {
    report.gated = true;
  }

  std::optional<ScalarSeries> principal;
  for (auto& le : local_expansions(p, 0)) {
    if (le.label == label) principal = le.u;
  }
  if (!principal) throw Error("no pole labelled " + label);
  IndicialData ind = indicial(principal->coeff(-4));
  if (!ind.quantized) return report;
  report.n = ind.n;
  report.branch_point = ind.low->irreducible() && ind.high->irreducible();
  if (M <= 0) M = 4 * ind.n + 8;

  ScalarSeries u;
  for (auto& le : local_expansions(p, M + 1)) {
    if (le.label == label) u = le.u;
  }

  const int resonance = ind.resonance_gap;
  for (const auto& lambda : lambdas) {
    std::vector<Scalar> inputs = frobenius_inputs(u, lambda, M);
    bool structural = true;
    for (int k = 1; k <= std::min(M, resonance); ++k) {
      if (k % 4 != 0 && !inputs[k].is_zero()) structural = false;
    }
    for (Branch b : {Branch::Low, Branch::High}) {
      BranchVerdict v;
      v.label = label;
      v.lambda = lambda;
      v.branch = b;
      v.structural_zero = structural;
      v.terms = M;
      if (b == Branch::Low && resonance <= M) v.resonance = resonance;
      try {
        FrobeniusSolution sol = frobenius_series(u, lambda, b, M);
        for (const auto& rec : sol.resonances) {
          if (rec.m == resonance) v.obstruction = rec.obstruction;
        }
        v.residual_zero = eigen_residual(u, sol).body.is_zero();
        v.pass = v.residual_zero;
      } catch (const LogarithmRequired& e) {
        v.obstruction = e.obstruction;
        v.pass = false;
      }
      report.verdicts.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace rank2
