#include <doctest.h>

#include "oracles.hpp"
#include "rank2/hierarchy.hpp"

using namespace rank2;

namespace {

Potential single_pole(const Scalar& phi4, std::map<int, Scalar> extra = {}) {
  extra[-4] = phi4;
  return make_rational(Scalar(), {PoleData{Scalar(), std::nullopt, std::move(extra)}});
}

LaurentSeries poly(std::initializer_list<std::pair<int, Scalar>> terms) {
  LaurentSeries s("origin");
  for (const auto& [e, c] : terms) s += LaurentSeries::monomial("origin", e, AffineForm(c));
  return s;
}

HierarchyState run_ok(const Potential& p, int g, int order) {
  auto r = run(p, g, order);
  REQUIRE(std::holds_alternative<HierarchyState>(r));
  return std::get<HierarchyState>(r);
}

Closure close_ok(const Potential& p, int g, int order) {
  auto state = run_ok(p, g, order);
  auto c = close(state, p);
  if (auto* ob = std::get_if<Obstruction>(&c)) FAIL(tag_name(ob->tag) << " " << ob->detail);
  return std::get<Closure>(c);
}

bool exactly_constant(const ScalarSeries& s) { return s.is_zero() || (s.lo() >= 0 && s.hi() <= 1); }

}  // namespace

TEST_CASE("truncation budget") {
  CHECK(minimum_order(1) == 9);
  CHECK(budget_order(1, 8) == 17);
  CHECK(default_order(1) == 17);
  CHECK(default_order(2) == 25);
  Potential p = build_elliptic_u(1, Scalar(1), Scalar(0), false);
  CHECK_THROWS_AS(run(p, 1, 8), InsufficientTruncation);
  CHECK_NOTHROW(run(p, 1, 9));
}

TEST_CASE("one step for u = 280/x^4") {
  LaurentSeries u = poly({{-4, Scalar(280)}});
  LaurentSeries f1 = poly({{-4, Scalar(140)}}) + LaurentSeries::constant("origin", AffineForm::unknown(1));
  LaurentSeries f2 = step(f1, LaurentSeries("origin"), u, 2);
  LaurentSeries expected = LaurentSeries::monomial("origin", -4, AffineForm::unknown(1, Scalar(140))) +
                           LaurentSeries::constant("origin", AffineForm::unknown(2));
  CHECK(f2 == expected);
}

TEST_CASE("one step with a general V") {
  for (long A : {1, 2, -3}) {
    LaurentSeries V = poly({{5, Scalar(A)}});
    LaurentSeries W = poly({{3, Scalar(18 * A)}});
    LaurentSeries f1 = W.scaled(Scalar::ratio(1, 2)) + LaurentSeries::constant("origin", AffineForm::unknown(1));
    LaurentSeries f2 = step(f1, V, W, 2);
    CHECK(derivative(f2) == LaurentSeries::monomial("origin", 2, AffineForm::unknown(1, Scalar(27 * A))));
  }
}

TEST_CASE("step reports affine residues instead of throwing when asked") {
  // f = C1 x^-2 with W = x^2: the integrand has -C1 x^-1.
  LaurentSeries W = poly({{2, Scalar(1)}});
  LaurentSeries f = LaurentSeries::monomial("origin", -2, AffineForm::unknown(1));
  std::vector<AffineForm> residues;
  CHECK_NOTHROW(step(f, LaurentSeries("origin"), W, 2, &residues));
  REQUIRE(residues.size() == 1);
  CHECK(residues[0] == AffineForm::unknown(1, Scalar(-1)));
  CHECK_THROWS_AS(step(f, LaurentSeries("origin"), W, 2), ResidueNonZero);
}

TEST_CASE("Mironov family closes with C1 = 0") {
  std::vector<Potential> family{
      make_entire({0, 0, 0, Scalar(1)}, {0, Scalar(2)}),
      make_entire({0, 0, 0, 0, 0, Scalar(1)}, {0, 0, 0, Scalar(18)}),
      make_entire({0, 0, 0, 0, 0, Scalar(2)}, {0, 0, 0, Scalar(36)}),
      make_entire({0, 0, 0, 0, Scalar(1)}, {0, 0, Scalar(8)}),
  };
  for (const auto& p : family) {
    Closure c = close_ok(p, 1, default_order(1));
    CHECK(c.constants.at(1).is_zero());
    for (const auto& [label, f] : c.final_series) CHECK(exactly_constant(f));
  }
}

TEST_CASE("u = 280/x^4 closes with C1 = 0") {
  Closure c = close_ok(single_pole(Scalar(280)), 1, default_order(1));
  CHECK(c.constants.at(1).is_zero());
  CHECK(c.certified_below == kExactOrder);
}

TEST_CASE("280 wp^2 closes with C1 = -42 g2") {
  for (Scalar g2 : {Scalar(1), Scalar(4), Scalar(-3), Scalar::ratio(7, 2)}) {
    Closure c = close_ok(build_elliptic_u(1, g2, Scalar(0), false), 1, default_order(1));
    CHECK(c.constants.at(1) == Scalar(-42) * g2);
  }
}

TEST_CASE("280 wp^2 with g3 != 0 has no closing constant") {
  for (long g3 : {1, -2}) {
    Potential p = build_elliptic_u(1, Scalar(1), Scalar(g3), false);
    auto c = close(run_ok(p, 1, default_order(1)), p);
    REQUIRE(std::holds_alternative<Obstruction>(c));
    CHECK(std::get<Obstruction>(c).tag == Tag::ClosureInconsistent);
  }
}

TEST_CASE("both poles of the shifted potential close with one constant") {
  for (long g2 : {1, 4}) {
    Closure c = close_ok(build_elliptic_u(1, Scalar(g2), Scalar(0), true), 1, default_order(1));
    CHECK(c.constants.at(1) == Scalar(-42 * g2));
    CHECK(c.final_series.size() == 2);
  }
}

TEST_CASE("leading coefficient oracle examples") {
  CHECK(leading_pole_coefficient(Scalar(280), 2).is_zero());
  CHECK(leading_pole_coefficient(Scalar(2376), 3).is_zero());
  CHECK(leading_pole_coefficient(Scalar(1), 2) == Scalar::ratio(-837, 8));
  CHECK(leading_pole_coefficient(Scalar(6), 1) == Scalar(3));
}

TEST_CASE("run matches the leading oracle and an independent recursion") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    mpq_class phi = gen.nonzero_rational(400, 3);
    int k = gen.integer(1, 6);
    int g = std::max(1, k - 1);
    auto state = run_ok(single_pole(Scalar(phi)), g, default_order(g));
    AffineForm got = state.centers[0].f[static_cast<std::size_t>(k - 1)].coeff(-4 * k);
    CHECK(got == AffineForm(leading_pole_coefficient(Scalar(phi), k)));
    auto ref = oracle::hierarchy_zero_constants({{-4, phi}}, k);
    REQUIRE(static_cast<int>(ref.size()) == k);
    mpq_class want = ref.back().count(-4 * k) ? ref.back().at(-4 * k) : mpq_class(0);
    CHECK(got == AffineForm(Scalar(want)));
  }
}

TEST_CASE("subleading oracle matches run and is linear in the perturbation") {
  oracle::Gen gen(6);
  for (int trial = 0; trial < 40; ++trial) {
    mpq_class phi4 = gen.nonzero_rational(400, 3);
    mpq_class pert = gen.nonzero_rational();
    int m = gen.integer(0, 2), l = gen.integer(1, 3), k = gen.integer(1, 4);
    int g = std::max(1, k - 1);
    Potential p = single_pole(Scalar(phi4), {{4 * m - l, Scalar(pert)}});
    auto r = run(p, g, default_order(g));
    REQUIRE(std::holds_alternative<HierarchyState>(r));
    const auto& f = std::get<HierarchyState>(r).centers[0].f[static_cast<std::size_t>(k - 1)];
    ConstantAssignment zero;
    for (int i = 1; i <= g + 1; ++i) zero[i] = Scalar();
    Scalar got = f.coeff(4 * m - 4 * (k - 1) - l).substitute(zero).as_scalar();
    Scalar want = subleading_coefficient(Scalar(phi4), Scalar(pert), m, l, k);
    CHECK(got == want);
    CHECK(want == Scalar(pert) * subleading_factor(Scalar(phi4), m, l, k));
    auto ref = oracle::hierarchy_zero_constants({{-4, phi4}, {4 * m - l, pert}}, k);
    REQUIRE(static_cast<int>(ref.size()) == k);
    int e = 4 * m - 4 * (k - 1) - l;
    CHECK(want == Scalar(ref.back().count(e) ? ref.back().at(e) : mpq_class(0)));
  }
}

TEST_CASE("subleading oracle special cases") {
  // f_2 picks up 3 phi4 phi_{4-l} / 4 at x^-l.
  for (int l = 1; l <= 3; ++l) {
    CHECK(subleading_coefficient(Scalar(280), Scalar(5), 1, l, 2) == Scalar(3 * 280 * 5) / Scalar(4));
  }
  // Chain at n = 1, l = 2, m = 1: phi_2 (4m+2) A^m / 4.
  CHECK(subleading_coefficient(Scalar(280), Scalar(7), 1, 2, 2) ==
        Scalar(7) * Scalar(6) * leading_pole_coefficient(Scalar(280), 1) / Scalar(4));
}

TEST_CASE("quantized single poles close after exactly n steps") {
  for (int n = 1; n <= 3; ++n) {
    Potential p = single_pole(pole_strength(n));
    Closure c = close_ok(p, n, default_order(n));
    CHECK(c.final_series.size() == 1);
    for (int g = 1; g < n; ++g) {
      auto early = close(run_ok(p, g, default_order(g)), p);
      CHECK(std::holds_alternative<Obstruction>(early));
    }
  }
}

TEST_CASE("non-quantized strengths never kill the leading coefficient") {
  oracle::Gen gen(9);
  int tested = 0;
  while (tested < 50) {
    Scalar phi(mpq_class(gen.integer(1, 20000), gen.integer(1, 4)));
    if (quantization_level(phi)) continue;
    ++tested;
    for (int k = 1; k <= 10; ++k) CHECK_FALSE(leading_pole_coefficient(phi, k).is_zero());
  }
  for (long phi : {1, 300, 281}) {
    for (int k = 1; k <= 10; ++k) CHECK_FALSE(leading_pole_coefficient(Scalar(phi), k).is_zero());
  }
}

TEST_CASE("every f_j is affine in C_1..C_j") {
  auto state = run_ok(build_elliptic_u(2, Scalar(1), Scalar(0), false), 2, default_order(2));
  for (const auto& c : state.centers) {
    for (std::size_t j = 0; j < c.f.size(); ++j) {
      for (int e = c.f[j].lo(); e < c.f[j].hi(); ++e) {
        CHECK(c.f[j].coeff(e).max_index() <= static_cast<int>(j) + 1);
      }
    }
  }
}

TEST_CASE("polynomial V and W never produce residues") {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Scalar> V, W;
    for (int i = 0, n = gen.integer(0, 5); i < n; ++i) V.emplace_back(gen.rational());
    for (int i = 0, n = gen.integer(0, 5); i < n; ++i) W.emplace_back(gen.rational());
    Potential p = make_entire(V, W);
    auto r = run(p, 2, default_order(2));
    CHECK(std::holds_alternative<HierarchyState>(r));
  }
}

TEST_CASE("pole condition checker") {
  auto tag_of = [](const Potential& p, int g = 1) {
    auto v = check_pole_conditions(p, g);
    return std::holds_alternative<PoleViolation>(v) ? std::optional<Tag>(std::get<PoleViolation>(v).tag)
                                                    : std::nullopt;
  };
  CHECK_FALSE(tag_of(single_pole(Scalar(280))).has_value());
  CHECK(tag_of(make_rational(Scalar(), {PoleData{Scalar(), std::nullopt, {{-5, Scalar(1)}, {-4, Scalar(280)}}}})) ==
        Tag::PoleOrder);
  CHECK(tag_of(single_pole(Scalar(281))) == Tag::PoleStrength);
  CHECK(tag_of(make_rational(Scalar(), {PoleData{Scalar(), 2, {{-4, Scalar(280)}}}})) == Tag::PoleStrength);
  CHECK(tag_of(single_pole(Scalar(280), {{-2, Scalar(1)}})) == Tag::PrincipalPart);
  CHECK(tag_of(single_pole(Scalar(280), {{1, Scalar(1)}})) == Tag::CoefficientPattern);
  // phi_6 sits at 4r - 2 with r = 2 > n: only l = 1, 3 are forced there.
  CHECK_FALSE(tag_of(single_pole(Scalar(280), {{6, Scalar(1)}}), 2).has_value());
  CHECK(tag_of(single_pole(Scalar(280), {{5, Scalar(1)}}), 2) == Tag::CoefficientPattern);
  CHECK_FALSE(tag_of(single_pole(Scalar(280), {{5, Scalar(1)}}), 1).has_value());

  auto v = check_pole_conditions(build_elliptic_u(1, Scalar(1), Scalar(1), false), 1);
  REQUIRE(std::holds_alternative<PoleViolation>(v));
  const auto& bad = std::get<PoleViolation>(v);
  CHECK(bad.tag == Tag::CoefficientPattern);
  CHECK(bad.k == 1);
  CHECK(bad.l == 2);
  CHECK(bad.value == Scalar(20));

  auto pass = check_pole_conditions(build_elliptic_u(2, Scalar(1), Scalar(0), false), 2);
  REQUIRE(std::holds_alternative<PoleCheckPass>(pass));
  CHECK(std::get<PoleCheckPass>(pass).levels.front().second == 2);
}

TEST_CASE("infinity check") {
  auto linear = check_infinity(make_entire({}, {0, Scalar(1)}));
  REQUIRE(std::holds_alternative<InfinityViolation>(linear));
  CHECK(std::get<InfinityViolation>(linear).degree == 1);
  CHECK(std::get<InfinityViolation>(linear).growth.front() == Scalar::ratio(1, 2));
  auto square = check_infinity(make_entire({}, {0, 0, Scalar(1)}));
  REQUIRE(std::holds_alternative<InfinityViolation>(square));
  CHECK(std::get<InfinityViolation>(square).degree == 2);
  CHECK(std::holds_alternative<InfinityPass>(check_infinity(
      make_rational(Scalar(5), {PoleData{Scalar(), 1, {{-4, Scalar(280)}}}}))));
  CHECK(std::holds_alternative<InfinityNotApplicable>(check_infinity(make_entire({Scalar(1)}, {}))));
  CHECK(std::holds_alternative<InfinityViolation>(check_infinity(single_pole(Scalar(280), {{1, Scalar(1)}}))));
  for (int k = 1; k <= 10; ++k) CHECK_FALSE(infinity_leading(Scalar(1), k).is_zero());
  CHECK(infinity_leading(Scalar(2), 2) == Scalar::ratio(3, 2));
}

TEST_CASE("rational potential with a polynomial tail is obstructed at infinity") {
  Potential p = single_pole(Scalar(280), {{1, Scalar(1)}});
  auto c = close(run_ok(p, 1, default_order(1)), p);
  REQUIRE(std::holds_alternative<Obstruction>(c));
  CHECK(std::get<Obstruction>(c).tag == Tag::PoleAtInfinity);
}

TEST_CASE("conjecture explorer") {
  auto single = explore_conjecture({PoleData{Scalar(), 1, {{-4, Scalar(280)}}}}, 0, false);
  CHECK(single.pattern_ok);
  CHECK(single.ran);
  CHECK(single.S == 2);
  REQUIRE(single.outcome.has_value());
  CHECK(std::holds_alternative<Closure>(*single.outcome));

  auto gated = explore_conjecture({PoleData{Scalar(), 1, {{-4, Scalar(280)}, {-2, Scalar(1)}}}}, 0, false);
  CHECK_FALSE(gated.pattern_ok);
  CHECK_FALSE(gated.ran);
  REQUIRE(gated.pattern_violation.has_value());
  CHECK(gated.pattern_violation->tag == Tag::PrincipalPart);

  auto two = explore_conjecture({PoleData{Scalar(0), 1, {{-4, Scalar(280)}}}, PoleData{Scalar(1), 1, {{-4, Scalar(280)}}}},
                                0, true);
  CHECK(two.S == 3);
  CHECK(two.ran);
  CHECK(two.order == default_order(3));
}

TEST_CASE("tag names carry no numbering") {
  for (Tag t : {Tag::PoleOrder, Tag::PoleStrength, Tag::PrincipalPart, Tag::CoefficientPattern, Tag::PoleAtInfinity,
                Tag::Residue, Tag::ClosureInconsistent, Tag::ClosureCertificate, Tag::CurveXDependence,
                Tag::LogarithmRequired}) {
    CHECK(tag_name(t).find_first_of("0123456789") == std::string::npos);
    CHECK_FALSE(tag_condition(t).empty());
  }
}
