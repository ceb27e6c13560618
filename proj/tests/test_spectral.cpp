#include <doctest.h>

#include "oracles.hpp"
#include "rank2/spectral.hpp"

using namespace rank2;

namespace {

struct Solved {
  HierarchyState state;
  Closure closure;
};

Solved solve(const Potential& p, int g, int order) {
  auto r = run(p, g, order);
  REQUIRE(std::holds_alternative<HierarchyState>(r));
  Solved s{std::get<HierarchyState>(r), {}};
  auto c = close(s.state, p);
  REQUIRE(std::holds_alternative<Closure>(c));
  s.closure = std::get<Closure>(c);
  return s;
}

SpectralCurve curve_at(const Solved& s, std::size_t center = 0) {
  const auto& cs = s.state.centers[center];
  QPoly q = make_qpoly(cs, s.closure.constants, s.state.genus);
  RelationReport rel = verify_relation(q, cs.V, cs.W);
  CHECK(rel.zero);
  return curve(q, cs.V, cs.W);
}

std::vector<Scalar> descending(std::initializer_list<Scalar> c) { return {std::rbegin(c), std::rend(c)}; }

std::vector<Scalar> to_scalars(const oracle::Poly& p) {
  std::vector<Scalar> out;
  for (const auto& c : p) out.emplace_back(c);
  return out;
}

}  // namespace

TEST_CASE("u = 280/x^4 gives the cusp z^3") {
  Solved s = solve(make_rational(Scalar(), {PoleData{Scalar(), 1, {{-4, Scalar(280)}}}}), 1, default_order(1));
  SpectralCurve F = curve_at(s);
  CHECK(F.coeffs == descending({Scalar(1), 0, 0, 0}));
  CHECK(F.discriminant.is_zero());
  CHECK_FALSE(F.nonsingular());
}

TEST_CASE("280 wp^2 curves") {
  struct Fixture {
    Scalar g2;
    std::vector<Scalar> F;
    Scalar disc;
  };
  std::vector<Fixture> fixtures{
      {Scalar(1), descending({1, -84, 1869, -4410}), Scalar(14817600)},
      {Scalar(4), descending({1, -336, 29904, -282240}), Scalar::parse("60692889600")},
      {Scalar(-3), descending({1, 252, 16821, 119070}), Scalar::parse("10802030400")},
      {Scalar::ratio(7, 2), descending({1, -294, Scalar::ratio(91581, 4), Scalar::ratio(-756315, 4)}),
       Scalar::parse("27238684725")},
  };
  for (const auto& fx : fixtures) {
    Solved s = solve(build_elliptic_u(1, fx.g2, Scalar(0), false), 1, default_order(1));
    SpectralCurve F = curve_at(s);
    CHECK(F.degree() == 3);
    CHECK(F.coeffs == fx.F);
    CHECK(F.discriminant == fx.disc);
    CHECK(F.nonsingular());
  }
}

TEST_CASE("degenerate lattice gives a singular curve") {
  for (int n : {1, 2}) {
    Solved s = solve(build_elliptic_u(n, Scalar(0), Scalar(0), false), n, default_order(n));
    CHECK(curve_at(s).discriminant.is_zero());
  }
}

TEST_CASE("two-pole elliptic curve agrees at both poles") {
  struct Fixture {
    long g2;
    std::vector<Scalar> F;
    Scalar disc;
  };
  std::vector<Fixture> fixtures{
      {4, descending({1, -336, -86016, -4014080}), Scalar::parse("248598075801600")},
      {1, descending({1, -84, -5376, -62720}), Scalar::parse("60692889600")},
  };
  for (const auto& fx : fixtures) {
    Solved s = solve(build_elliptic_u(1, Scalar(fx.g2), Scalar(0), true), 1, default_order(1));
    REQUIRE(s.state.centers.size() == 2);
    SpectralCurve a = curve_at(s, 0), b = curve_at(s, 1);
    CHECK(a.coeffs == fx.F);
    CHECK(b.coeffs == fx.F);
    CHECK(a.discriminant == fx.disc);
  }
}

TEST_CASE("n = 2 curve at g2 = 1") {
  Solved s = solve(build_elliptic_u(2, Scalar(1), Scalar(0), false), 2, 64);
  CHECK(s.closure.constants.at(1) == Scalar(-594));
  CHECK(s.closure.constants.at(2) == Scalar::ratio(827739, 25));
  SpectralCurve F = curve_at(s);
  CHECK(F.degree() == 5);
  CHECK(F.coeffs == descending({1, -1188, 482625, Scalar::parse("-77586498"), Scalar::parse("4503245868"),
                                Scalar::parse("-31698080568")}));
  CHECK(F.discriminant == Scalar::parse("32157990719439881812517063941202903040000"));
}

TEST_CASE("Dixmier potential gives z^3 - alpha") {
  for (long alpha : {0, 1, -3, 5}) {
    Solved s = solve(make_entire({Scalar(alpha), 0, 0, Scalar(1)}, {0, Scalar(2)}), 1, default_order(1));
    SpectralCurve F = curve_at(s);
    CHECK(F.coeffs == descending({Scalar(1), 0, 0, Scalar(-alpha)}));
    CHECK(F.discriminant == Scalar(-27 * alpha * alpha));
  }
}

TEST_CASE("perturbed W breaks the relation") {
  Solved s = solve(make_rational(Scalar(), {PoleData{Scalar(), 1, {{-4, Scalar(280)}}}}), 1, default_order(1));
  QPoly q = make_qpoly(s.state.centers[0], s.closure.constants, 1);
  ScalarSeries W = ScalarSeries::monomial(s.state.centers[0].label, -4, Scalar(281));
  RelationReport rel = verify_relation(q, s.state.centers[0].V, W);
  CHECK_FALSE(rel.zero);
  CHECK(rel.worst_power >= 0);
}

TEST_CASE("wrong constants make the curve depend on x") {
  Potential p = build_elliptic_u(1, Scalar(1), Scalar(0), false);
  Solved s = solve(p, 1, default_order(1));
  ConstantAssignment wrong{{1, Scalar(0)}};
  QPoly q = make_qpoly(s.state.centers[0], wrong, 1);
  CHECK_FALSE(verify_relation(q, s.state.centers[0].V, s.state.centers[0].W).zero);
  CHECK_THROWS_AS(curve(q, s.state.centers[0].V, s.state.centers[0].W), XDependence);
}

TEST_CASE("resultant and discriminant") {
  CHECK(resultant({Scalar(-2), Scalar(1)}, {Scalar(-5), Scalar(1)}) == Scalar(-3));
  CHECK(discriminant({Scalar(-4), 0, Scalar(1)}) == Scalar(16));  // z^2 - 4
  oracle::Gen gen(31);
  for (int i = 0; i < 30; ++i) {
    mpq_class p = gen.rational(), q = gen.rational();
    std::vector<Scalar> F{Scalar(q), Scalar(p), 0, Scalar(1)};
    CHECK(discriminant(F) == Scalar(mpq_class(-4 * p * p * p - 27 * q * q)));
  }
}

TEST_CASE("discriminant vanishes exactly when an independent gcd finds a repeated root") {
  oracle::Gen gen(41);
  for (int i = 0; i < 50; ++i) {
    int degree = gen.coin() ? 3 : 5;
    bool planted = gen.coin();
    oracle::Poly F{1};
    int remaining = degree;
    if (planted) {
      mpq_class r = gen.rational(5, 3);
      F = oracle::poly_mul(F, oracle::poly_mul({-r, 1}, {-r, 1}));
      remaining -= 2;
    }
    for (int k = 0; k < remaining; ++k) F = oracle::poly_mul(F, {gen.rational(5, 3), 1});
    if (gen.coin()) {
      // Perturb the constant term, usually destroying any repeated root.
      F[0] += gen.rational(2, 3);
    }
    bool repeated = oracle::has_repeated_root(F);
    CHECK(discriminant(to_scalars(F)).is_zero() == repeated);
  }
}

TEST_CASE("polynomial text") {
  CHECK(polynomial_string(descending({1, -84, 1869, -4410})) == "z^3 - 84*z^2 + 1869*z - 4410");
  CHECK(polynomial_string({Scalar(0), Scalar::ratio(1, 2)}) == "1/2*z");
}
