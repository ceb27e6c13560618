#include "rank2/potentials.hpp"

#include <algorithm>

namespace rank2 {

std::string PoleData::label() const { return "x=" + location.str(); }

Scalar pole_strength(int n) {
  mpz_class m(n);
  return Scalar(mpq_class(m * (4 * m + 1) * (4 * m + 3) * (4 * m + 4)));
}

std::optional<int> quantization_level(const Scalar& phi) {
  if (!phi.is_rational()) return std::nullopt;
  const mpq_class& r = phi.to_rational();
  if (r.get_den() != 1 || sgn(r) <= 0) return std::nullopt;
  // pole_strength is increasing in n, so stop once it passes phi.
  for (int n = 1;; ++n) {
    mpq_class s = pole_strength(n).to_rational();
    if (s == r) return n;
    if (s > r) return std::nullopt;
  }
}

ScalarSeries weierstrass_series(const Scalar& g2, const Scalar& g3, int order,
                                const std::string& center) {
  if (g2.is_zero() && g3.is_zero()) return ScalarSeries::monomial(center, -2, Scalar(1));
  // c_k multiplies x^(2k-2); c_0 = 1 and c_1 = 0 stand for x^-2 and x^0.
  std::vector<Scalar> c{Scalar(1), Scalar()};
  for (int k = 2; 2 * k - 2 < order; ++k) {
    if (k == 2) {
      c.push_back(g2 / Scalar(20));
    } else if (k == 3) {
      c.push_back(g3 / Scalar(28));
    } else {
      Scalar acc;
      for (int m = 2; m <= k - 2; ++m) acc += c[m] * c[k - m];
      c.push_back(acc * Scalar(3) / Scalar((2 * k + 1) * (k - 3)));
    }
  }
  std::vector<Scalar> dense;
  for (std::size_t k = 0; k < c.size(); ++k) {
    dense.push_back(c[k]);
    if (k + 1 < c.size()) dense.push_back(Scalar());
  }
  return ScalarSeries(center, -2, std::move(dense), order);
}

Scalar half_period_value(const Scalar& g2, HalfPeriod branch, const FieldPtr& field) {
  if (branch == HalfPeriod::Zero) return Scalar();
  Scalar quarter = g2 / Scalar(4);
  Scalar e;
  if (quarter.is_rational() && is_rational_square(quarter.to_rational())) {
    mpq_class r = quarter.to_rational();
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), r.get_den_mpz_t());
    e = Scalar(mpq_class(num, den));
  } else {
    // e = s t with t^2 = q and s^2 = (g2/4)/q.
    if (!field || sgn(field->p()) != 0 || !quarter.is_rational()) {
      throw UnsupportedHalfPeriod("half-period value sqrt(" + g2.str() +
                                  ")/2 needs the field sqrt " + quarter.str());
    }
    mpq_class ratio = quarter.to_rational() / field->q();
    if (!is_rational_square(ratio)) {
      throw UnsupportedHalfPeriod("active field does not contain sqrt(" + g2.str() + ")/2");
    }
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), ratio.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), ratio.get_den_mpz_t());
    e = Scalar(0, mpq_class(num, den), field);
  }
  return branch == HalfPeriod::Plus ? e : -e;
}

ScalarSeries half_period_shift(const Scalar& g2, int order, HalfPeriod branch,
                               const FieldPtr& field, const std::string& center) {
  if (g2.is_zero()) throw UnsupportedHalfPeriod("degenerate lattice (g2 = g3 = 0) has no half-periods");
  Scalar e = half_period_value(g2, branch, field);
  // inverse() of a series with lo = -2 gains 4 orders.
  ScalarSeries wp = weierstrass_series(g2, Scalar(), std::max(order - 4, -1), center);
  ScalarSeries w(center, kExactOrder);
  if (branch == HalfPeriod::Zero) {
    w = inverse(wp).scaled(-g2 / Scalar(4));
  } else {
    ScalarSeries shifted = wp - ScalarSeries::constant(center, e);
    w = ScalarSeries::constant(center, e) + inverse(shifted).scaled(g2 / Scalar(2));
  }
  w = w.truncated(order);

  // The addition identity is checked, not trusted: (w')^2 = 4w^3 - g2 w.
  ScalarSeries dw = derivative(w);
  ScalarSeries residual = dw * dw - (w * w * w).scaled(Scalar(4)) + w.scaled(g2);
  if (!residual.is_zero()) {
    throw Error("half-period series fails its differential equation: " + residual.str());
  }
  return w;
}

Potential make_rational(Scalar constant, std::vector<PoleData> poles, FieldPtr field) {
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      if (poles[i].location == poles[j].location) {
        throw Error("duplicate pole location " + poles[i].location.str());
      }
    }
  }
  return {PotentialClass::RationalNoPoleAtInfinity,
          RationalData{std::move(constant), std::move(poles)}, std::move(field)};
}

Potential make_elliptic(EllipticData data, FieldPtr field) {
  if (data.n) {
    if (*data.n < 1) throw Error("elliptic strength level n must be positive");
    data.coefficient = pole_strength(*data.n);
  }
  if (data.shift) {
    if (!data.g3.is_zero()) throw UnsupportedShape("half-period shift requires g3 = 0");
    if (data.coefficient != pole_strength(1)) {
      throw UnsupportedShape("half-period shift is supported only for coefficient 280 (n = 1)");
    }
    half_period_value(data.g2, *data.shift, field);  // validates the field up front
    if (data.g2.is_zero()) throw UnsupportedHalfPeriod("g2 = 0 has no half-periods");
  }
  return {PotentialClass::Elliptic, std::move(data), std::move(field)};
}

Potential build_elliptic_u(int n, const Scalar& g2, const Scalar& g3, bool shifted,
                           HalfPeriod branch, FieldPtr field) {
  if (shifted && n != 1) throw UnsupportedShape("half-period shift requires n = 1");
  EllipticData data{pole_strength(n), n, g2, g3, std::nullopt};
  if (shifted) data.shift = branch;
  return make_elliptic(std::move(data), std::move(field));
}

Potential make_entire(std::vector<Scalar> V, std::vector<Scalar> W) {
  return {PotentialClass::EntirePolynomial, EntireData{std::move(V), std::move(W)}, nullptr};
}

namespace {

ScalarSeries polynomial(const std::string& center, const std::vector<Scalar>& coeffs) {
  return ScalarSeries(center, 0, coeffs);
}

ScalarSeries pole_contribution(const PoleData& pole, const Scalar& at, const std::string& center,
                               int order) {
  ScalarSeries sum(center, kExactOrder);
  Scalar shift = at - pole.location;
  for (const auto& [k, phi] : pole.phi) {
    if (phi.is_zero()) continue;
    if (shift.is_zero()) {
      sum += ScalarSeries::monomial(center, k, phi);
    } else {
      sum += binomial_expansion(center, shift, k, order).scaled(phi);
    }
  }
  return sum;
}

ScalarSeries rational_at(const RationalData& data, const Scalar& at, const std::string& center,
                         int order) {
  ScalarSeries u = ScalarSeries::constant(center, data.constant);
  // Exact when every summand is (a single pole plus polynomials).
  for (const auto& pole : data.poles) u += pole_contribution(pole, at, center, order);
  return u;
}

}  // namespace

ScalarSeries polynomial_tail(const RationalData& data) {
  ScalarSeries tail = ScalarSeries::constant("origin", data.constant);
  for (const auto& pole : data.poles) {
    for (const auto& [k, phi] : pole.phi) {
      if (k < 0 || phi.is_zero()) continue;
      tail += binomial_expansion("origin", -pole.location, k, kExactOrder).scaled(phi);
    }
  }
  return tail;
}

std::vector<LocalExpansion> local_expansions(const Potential& p, int order) {
  std::vector<LocalExpansion> out;
  if (const auto* r = p.rational()) {
    if (r->poles.empty()) {
      out.push_back({"origin", rational_at(*r, Scalar(), "origin", order)});
    }
    for (const auto& pole : r->poles) {
      out.push_back({pole.label(), rational_at(*r, pole.location, pole.label(), order)});
    }
  } else if (const auto* e = p.elliptic()) {
    ScalarSeries wp = weierstrass_series(e->g2, e->g3, saturating_add(order, 2));
    ScalarSeries u = (wp * wp).scaled(e->coefficient).truncated(order);
    if (e->shift) {
      // wp(x - omega) at 0 and wp(x) at omega have the same expansion, so
      // both poles see the same local series.
      ScalarSeries w = half_period_shift(e->g2, order, *e->shift, p.extension);
      u += (w * w).scaled(e->coefficient);
      out.push_back({"origin", u});
      out.push_back({"omega", u.recentered("omega")});
    } else {
      out.push_back({"origin", u});
    }
  } else {
    const auto& d = *p.entire();
    if (std::any_of(d.V.begin(), d.V.end(), [](const Scalar& s) { return !s.is_zero(); })) {
      throw UnsupportedShape("local expansions of u need V = 0");
    }
    out.push_back({"origin", polynomial("origin", d.W)});
  }
  return out;
}

std::vector<LocalPair> local_pairs(const Potential& p, int order) {
  std::vector<LocalPair> out;
  if (const auto* d = p.entire()) {
    out.push_back({"origin", polynomial("origin", d->V), polynomial("origin", d->W)});
    return out;
  }
  for (auto& [label, u] : local_expansions(p, order)) {
    ScalarSeries zero(label, kExactOrder);
    out.push_back({label, zero, u});
  }
  return out;
}

std::string class_name(PotentialClass c) {
  switch (c) {
    case PotentialClass::RationalNoPoleAtInfinity: return "rational";
    case PotentialClass::Elliptic: return "elliptic";
    case PotentialClass::EntirePolynomial: return "entire";
  }
  return "unknown";
}

std::string half_period_name(HalfPeriod h) {
  switch (h) {
    case HalfPeriod::Zero: return "zero";
    case HalfPeriod::Plus: return "plus";
    case HalfPeriod::Minus: return "minus";
  }
  return "unknown";
}

}  // namespace rank2
