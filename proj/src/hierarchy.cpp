#include "rank2/hierarchy.hpp"

#include <algorithm>

namespace rank2 {

std::string tag_name(Tag t) {
  switch (t) {
    case Tag::PoleOrder: return "pole_order";
    case Tag::PoleStrength: return "pole_strength";
    case Tag::PrincipalPart: return "principal_part";
    case Tag::CoefficientPattern: return "coefficient_pattern";
    case Tag::PoleAtInfinity: return "pole_at_infinity";
    case Tag::Residue: return "residue";
    case Tag::ClosureInconsistent: return "closure_inconsistent";
    case Tag::ClosureCertificate: return "closure_certificate";
    case Tag::CurveXDependence: return "curve_x_dependence";
    case Tag::LogarithmRequired: return "logarithm_required";
  }
  return "unknown";
}

std::string tag_condition(Tag t) {
  switch (t) {
    case Tag::PoleOrder: return "every pole of u has order exactly 4";
    case Tag::PoleStrength: return "phi_-4 = n(4n+1)(4n+3)(4n+4) for a positive integer n";
    case Tag::PrincipalPart: return "phi_-3 = phi_-2 = phi_-1 = 0";
    case Tag::CoefficientPattern:
      return "phi_{4k-l} = 0 for k = 1..n, l = 1,2,3 and phi_{4r-1} = phi_{4r-3} = 0 for r = n+1..g";
    case Tag::PoleAtInfinity: return "u has no pole at infinity";
    case Tag::Residue: return "every integrand has zero residue";
    case Tag::ClosureInconsistent: return "constants exist making f_{g+1} constant";
    case Tag::ClosureCertificate: return "solved f_{g+1} is constant to the truncation order";
    case Tag::CurveXDependence: return "spectral curve coefficients are independent of x";
    case Tag::LogarithmRequired: return "Frobenius solutions are free of logarithms";
  }
  return "";
}

LaurentSeries step(const LaurentSeries& f, const LaurentSeries& V, const LaurentSeries& W,
                   int next_constant_index, std::vector<AffineForm>* residues) {
  LaurentSeries d1 = derivative(f, 1);
  LaurentSeries d2 = derivative(d1, 1);
  LaurentSeries d3 = derivative(d2, 1);
  LaurentSeries d5 = derivative(d3, 2);
  LaurentSeries dW = derivative(W, 1);

  LaurentSeries integrand = -d5 + (W.scaled(Scalar(4)) * d1) + (dW.scaled(Scalar(2)) * f);
  if (!V.is_zero()) {
    LaurentSeries dV = derivative(V, 1);
    LaurentSeries ddV = derivative(dV, 1);
    integrand -= V.scaled(Scalar(4)) * d3;
    integrand -= dV.scaled(Scalar(6)) * d2;
    integrand -= ddV.scaled(Scalar(2)) * d1;
  }
  integrand = integrand.scaled(Scalar::ratio(1, 4));

  if (residues && !integrand.is_zero() && integrand.lo() <= -1) {
    AffineForm r = integrand.coeff(-1);
    if (!r.is_zero() && !r.is_constant()) {
      residues->push_back(r);
      integrand -= LaurentSeries::monomial(integrand.center(), -1, r);
    }
  }
  LaurentSeries next = antiderivative(integrand);
  return next + LaurentSeries::constant(f.center(), AffineForm::unknown(next_constant_index));
}

int budget_order(int g, int certified_exponent) { return certified_exponent + 4 * (g + 1) + 1; }
int minimum_order(int g) { return budget_order(g, 0); }
int default_order(int g) { return budget_order(g, 4 * (g + 1)); }

RunResult run(const Potential& p, int g, int order) {
  if (g < 1) throw Error("genus must be at least 1");
  if (order < minimum_order(g)) {
    throw InsufficientTruncation("expansion order " + std::to_string(order) + " is below the minimum " +
                                 std::to_string(minimum_order(g)) + " for genus " + std::to_string(g));
  }
  HierarchyState state;
  state.genus = g;
  state.order = order;
  for (auto& pair : local_pairs(p, order)) {
    CenterState cs{pair.label, pair.V, pair.W, {}};
    LaurentSeries V = lift(pair.V);
    LaurentSeries W = lift(pair.W);
    cs.f.push_back(W.scaled(Scalar::ratio(1, 2)) +
                   LaurentSeries::constant(pair.label, AffineForm::unknown(1)));
    for (int j = 1; j <= g; ++j) {
      std::vector<AffineForm> residues;
      try {
        cs.f.push_back(step(cs.f.back(), V, W, j + 1, &residues));
      } catch (const ResidueNonZero& e) {
        return Obstruction{Tag::Residue, pair.label, -1, e.residue,
                           "integrand for f_" + std::to_string(j + 1) + " has a nonzero residue"};
      }
      for (auto& r : residues) state.residue_equations.emplace_back(pair.label, std::move(r));
    }
    state.centers.push_back(std::move(cs));
  }
  return state;
}

namespace {

struct EquationOrigin {
  std::string center;
  int exponent;
};

}  // namespace

CloseResult close(const HierarchyState& state, const Potential& p) {
  if (const auto* r = p.rational()) {
    ScalarSeries tail = polynomial_tail(*r);
    if (!tail.is_zero() && tail.hi() > 1) {
      int degree = tail.hi() - 1;
      return Obstruction{Tag::PoleAtInfinity, "infinity", degree, AffineForm(tail.coeff(degree)),
                         "polynomial tail of degree " + std::to_string(degree)};
    }
  }
  const bool entire = p.kind == PotentialClass::EntirePolynomial;

  std::vector<AffineForm> equations;
  std::vector<EquationOrigin> origins;
  for (const auto& cs : state.centers) {
    const LaurentSeries& f = cs.f.back();
    if (f.is_zero()) continue;
    if (entire) {
      int top = f.is_exact() ? f.hi() : std::min(f.hi(), f.order());
      for (int e = std::max(1, f.lo()); e < top; ++e) {
        equations.push_back(f.coeff(e));
        origins.push_back({cs.label, e});
      }
    } else {
      for (int e = f.lo(); e < 0; ++e) {
        equations.push_back(f.coeff(e));
        origins.push_back({cs.label, e});
      }
    }
  }
  for (const auto& [center, residue] : state.residue_equations) {
    equations.push_back(residue);
    origins.push_back({center, -1});
  }

  std::vector<int> unknowns;
  for (int i = 1; i <= state.genus; ++i) unknowns.push_back(i);
  LinearVerdict verdict = solve_linear(equations, unknowns);
  if (const auto* bad = std::get_if<Inconsistent>(&verdict)) {
    const auto& o = origins[bad->equation];
    return Obstruction{Tag::ClosureInconsistent, o.center, o.exponent, bad->original,
                       "reduces to " + bad->reduced.str() + " = 0"};
  }

  Closure out;
  if (const auto* u = std::get_if<UniqueSolution>(&verdict)) {
    out.constants = u->values;
  } else {
    const auto& d = std::get<Underdetermined>(verdict);
    out.constants = d.values;
    out.free = d.free;
  }
  ConstantAssignment all = out.constants;
  all[state.genus + 1] = Scalar();

  out.certified_below = kExactOrder;
  bool first = true;
  for (const auto& cs : state.centers) {
    ScalarSeries fin = substitute(cs.f.back(), all);
    out.certified_below = std::min(out.certified_below, fin.order());
    Scalar constant = fin.is_zero() || fin.lo() > 0 || fin.hi() <= 0 ? Scalar() : fin.coeff(0);
    ScalarSeries rest = fin - ScalarSeries::constant(cs.label, constant);
    if (!rest.is_zero()) {
      return Obstruction{Tag::ClosureCertificate, cs.label, rest.lo(), AffineForm(rest.coeff(rest.lo())),
                         "f_" + std::to_string(state.genus + 1) + " is not constant after solving"};
    }
    if (first) {
      out.final_constant = constant;
      first = false;
    } else if (constant != out.final_constant) {
      return Obstruction{Tag::ClosureCertificate, cs.label, 0, AffineForm(constant),
                         "f_" + std::to_string(state.genus + 1) + " takes different constants at different centers"};
    }
    out.final_series.emplace_back(cs.label, std::move(fin));
  }
  return out;
}

namespace {

PoleViolation violation(Tag tag, const std::string& label, int exponent, int k, int l,
                        Scalar value) {
  return PoleViolation{tag, label, exponent, k, l, std::move(value)};
}

std::optional<int> declared_level(const Potential& p, const std::string& label) {
  if (const auto* r = p.rational()) {
    for (const auto& pole : r->poles) {
      if (pole.label() == label) return pole.n;
    }
  }
  if (const auto* e = p.elliptic()) return e->n;
  return std::nullopt;
}

}  // namespace

PoleVerdict check_pole_conditions(const Potential& p, int g) {
  if (p.kind == PotentialClass::EntirePolynomial) {
    throw UnsupportedShape("pole conditions apply to rational and elliptic potentials");
  }
  PoleCheckPass pass;
  if (const auto* r = p.rational(); r && r->poles.empty()) return pass;

  std::vector<LocalExpansion> principal = local_expansions(p, 0);
  for (const auto& [label, u] : principal) {
    if (u.is_zero() || u.lo() >= 0) continue;  // only polynomial summands here
    if (u.lo() != -4) {
      return violation(Tag::PoleOrder, label, u.lo(), 0, 0, u.coeff(u.lo()));
    }
    Scalar phi4 = u.coeff(-4);
    std::optional<int> n = quantization_level(phi4);
    std::optional<int> declared = declared_level(p, label);
    if (!n || (declared && *declared != *n)) {
      return violation(Tag::PoleStrength, label, -4, 0, 0, phi4);
    }
    for (int l = 1; l <= 3; ++l) {
      Scalar v = u.coeff(-l);
      if (!v.is_zero()) return violation(Tag::PrincipalPart, label, -l, 0, l, v);
    }
    pass.levels.emplace_back(label, *n);
  }

  int top = 0;
  for (const auto& [label, n] : pass.levels) top = std::max(top, std::max(n, g));
  std::vector<LocalExpansion> full = local_expansions(p, 4 * top);
  for (const auto& [label, n] : pass.levels) {
    const ScalarSeries* u = nullptr;
    for (const auto& le : full) {
      if (le.label == label) u = &le.u;
    }
    for (int k = 1; k <= n; ++k) {
      for (int l = 1; l <= 3; ++l) {
        Scalar v = u->coeff(4 * k - l);
        if (!v.is_zero()) return violation(Tag::CoefficientPattern, label, 4 * k - l, k, l, v);
      }
    }
    for (int r = n + 1; r <= g; ++r) {
      for (int l : {1, 3}) {
        Scalar v = u->coeff(4 * r - l);
        if (!v.is_zero()) return violation(Tag::CoefficientPattern, label, 4 * r - l, r, l, v);
      }
    }
  }
  return pass;
}

Scalar infinity_leading(const Scalar& phi, int k) {
  Scalar a = phi / Scalar(2);
  for (int j = 1; j < k; ++j) a = a * phi * Scalar(2 * j + 1) / Scalar(2 * j + 2);
  return a;
}

InfinityVerdict check_infinity(const Potential& p) {
  ScalarSeries tail("origin");
  if (const auto* r = p.rational()) {
    tail = polynomial_tail(*r);
  } else if (p.elliptic()) {
    return InfinityPass{};
  } else {
    const auto& d = *p.entire();
    if (std::any_of(d.V.begin(), d.V.end(), [](const Scalar& s) { return !s.is_zero(); })) {
      return InfinityNotApplicable{"V is not identically zero"};
    }
    tail = ScalarSeries("origin", 0, d.W);
  }
  if (tail.is_zero() || tail.hi() <= 1) return InfinityPass{};
  InfinityViolation v;
  v.degree = tail.hi() - 1;
  v.leading = tail.coeff(v.degree);
  for (int k = 1; k <= 4; ++k) v.growth.push_back(infinity_leading(v.leading, k));
  return v;
}

Scalar leading_pole_coefficient(const Scalar& phi4, int k) {
  if (k < 1) throw Error("leading coefficient index must be positive");
  Scalar a = phi4 / Scalar(2);
  for (int j = 1; j < k; ++j) {
    a = a * (phi4 - pole_strength(j)) * Scalar(2 * j + 1) / Scalar(2 * j + 2);
  }
  return a;
}

Scalar subleading_coefficient(const Scalar& phi4, const Scalar& phi_pert, int m, int l, int k) {
  if (l < 1 || l > 3) throw Error("subleading index l must be 1, 2 or 3");
  if (k < 1) throw Error("subleading step index must be positive");
  Scalar a = phi_pert / Scalar(2);  // coefficient of x^{4m-l} in f_1
  for (int j = 1; j < k; ++j) {
    // a is the x^{e+4} coefficient of f_j; produce the x^e coefficient of f_{j+1}.
    const long e = 4L * m - 4L * j - l;
    Scalar falling = Scalar((e + 4) * (e + 3) * (e + 1) * e);
    Scalar first = a * Scalar(e + 2) / Scalar(4 * e) * (Scalar(4) * phi4 - falling);
    Scalar second = phi_pert * leading_pole_coefficient(phi4, j) * Scalar(4L * m - 8L * j - l) /
                    Scalar(2 * e);
    a = first + second;
  }
  return a;
}

Scalar subleading_factor(const Scalar& phi4, int m, int l, int k) {
  return subleading_coefficient(phi4, Scalar(1), m, l, k);
}

ConjectureReport explore_conjecture(const std::vector<PoleData>& poles, int order, bool force,
                                    const Scalar& constant) {
  ConjectureReport report;
  Potential p = make_rational(constant, poles);
  PoleVerdict gate = check_pole_conditions(p, 0);
  if (const auto* pass = std::get_if<PoleCheckPass>(&gate)) {
    report.pattern_ok = true;
    report.S = 1;
    for (const auto& [label, n] : pass->levels) report.S += n;
  } else {
    report.pattern_violation = std::get<PoleViolation>(gate);
    report.S = 1;
    for (const auto& pole : poles) {
      auto it = pole.phi.find(-4);
      std::optional<int> n = pole.n;
      if (!n && it != pole.phi.end()) n = quantization_level(it->second);
      if (!n) return report;  // no level to size the run
      report.S += *n;
    }
    if (!force) return report;
  }
  report.order = order > 0 ? order : default_order(report.S);
  report.ran = true;
  RunResult r = run(p, report.S, report.order);
  if (auto* ob = std::get_if<Obstruction>(&r)) {
    report.run_obstruction = *ob;
    return report;
  }
  report.outcome = close(std::get<HierarchyState>(r), p);
  return report;
}

}  // namespace rank2
