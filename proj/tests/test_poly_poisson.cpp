#include <catch_amalgamated.hpp>

#include "polysym/random.hpp"
#include "structures.hpp"

using namespace polysym;

namespace {

std::vector<GradedPoly> base_of(const PolyForm& f) {
  std::vector<GradedPoly> out;
  for (const auto& c : f.components()) out.push_back(f.chart()->restrict_to_base(c));
  return out;
}

}  // namespace

TEST_CASE("canonical r=2 structure passes every axiom", "[poly_poisson]") {
  auto s = fixtures::canonical_r2();
  auto rep = check_axioms(s, {{0, 0, 0}, {1, -2, 3}});
  for (const auto* v : rep.verdicts()) CHECK(v->verdict == Verdict::Pass);
  REQUIRE(rep.structure_functions);
  for (const auto& ab : *rep.structure_functions)
    for (const auto& a : ab)
      for (const auto& f : a) CHECK(f.is_zero());
  // Hand computation of one polarization: i_{d/dx}(-dx,0) + i_{d/dp1}(dp1,dp2) = (0,0).
  auto res = base_of(interior(s.anchor[0], s.frame[1]) + interior(s.anchor[1], s.frame[0]));
  CHECK(res[0].is_zero());
  CHECK(res[1].is_zero());
}

TEST_CASE("negated anchor breaks skewness with the documented witness", "[poly_poisson]") {
  auto rep = check_axioms(fixtures::canonical_r2({-1, 1, 1}));
  CHECK(rep.skew.verdict == Verdict::Fail);
  CHECK(rep.skew.indices == std::vector<std::size_t>{1, 2});
  CHECK(rep.skew.residual == std::vector<std::string>{"2", "0"});

  auto rep2 = check_axioms(fixtures::canonical_r2({1, -1, 1}));
  CHECK(rep2.skew.indices == std::vector<std::size_t>{1, 2});
  CHECK(rep2.skew.residual == std::vector<std::string>{"-2", "0"});
}

TEST_CASE("every single anchor negation flips a verdict", "[poly_poisson]") {
  for (std::size_t a = 0; a < 3; ++a) {
    std::vector<Rational> signs{1, 1, 1};
    signs[a] = -1;
    CHECK_FALSE(check_axioms(fixtures::canonical_r2(signs)).passed());
  }
}

TEST_CASE("unused coordinate violates the annihilator axiom", "[poly_poisson]") {
  auto rep = check_axioms(fixtures::canonical_r2({1, 1, 1}, true));
  CHECK(rep.skew.verdict == Verdict::Pass);
  CHECK(rep.annihilator.verdict == Verdict::Fail);
  CHECK(rep.annihilator.residual == std::vector<std::string>{"0", "0", "0", "1"});
}

TEST_CASE("non-constant anchor scaling breaks closure", "[poly_poisson]") {
  auto base = Chart::make({{"x", 0}, {"p1", 0}, {"p2", 0}});
  auto rep = check_axioms(fixtures::canonical_r2({1, 1, 1}, false, GradedPoly::constant(base, 1) + GradedPoly::generator(base, "p1")));
  CHECK(rep.skew.verdict == Verdict::Pass);
  CHECK(rep.annihilator.verdict == Verdict::Pass);
  CHECK(rep.closure.verdict == Verdict::Fail);
  CHECK(rep.closure.kind == "NoExpansion");
  CHECK(rep.jacobi.verdict == Verdict::Skipped);
}

TEST_CASE("sample points where the rank drops are reported", "[poly_poisson]") {
  // r = 1, frame x1 dx1, dx2 on R^2 with anchors making it Poisson away from x1 = 0.
  auto base = Chart::make({{"x1", 0}, {"x2", 0}});
  auto sc = ShiftedChart::make(base);
  auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
  auto x1 = GradedPoly::generator(base, "x1");
  std::vector<PolyForm> frame{PolyForm(sc, {g("x1") * g("dx1")}), PolyForm(sc, {g("dx2")})};
  std::vector<Derivation> anchor{Derivation(base, {GradedPoly(base), x1}), Derivation(base, {-GradedPoly::constant(base, 1), GradedPoly(base)})};
  PolyPoissonStructure s(sc, frame, anchor);
  auto generic = check_axioms(s);
  CHECK(generic.skew.verdict == Verdict::Pass);
  CHECK(generic.frame.verdict == Verdict::Pass);
  CHECK(generic.annihilator.verdict == Verdict::Pass);
  auto sampled = check_axioms(s, {{1, 1}, {0, 5}});
  CHECK(sampled.frame.verdict == Verdict::Inconclusive);
  CHECK(sampled.frame.kind == "RankInconclusive");
  CHECK(sampled.annihilator.verdict == Verdict::Inconclusive);
  CHECK_FALSE(sampled.passed());
}

TEST_CASE("dependent frames are rejected", "[poly_poisson]") {
  auto base = Chart::make({{"x", 0}, {"y", 0}});
  auto sc = ShiftedChart::make(base);
  auto dx = GradedPoly::generator(sc->chart(), "dx");
  PolyPoissonStructure s(sc, {PolyForm(sc, {dx}), PolyForm(sc, {dx * Rational(2)})},
                         {Derivation::zero(base, 0), Derivation::zero(base, 0)});
  CHECK_THROWS_AS(check_axioms(s), FrameDependent);
}

TEST_CASE("from_polysymplectic", "[poly_poisson]") {
  SECTION("canonical r=2") {
    auto base = Chart::make({{"x", 0}, {"p1", 0}, {"p2", 0}});
    auto sc = ShiftedChart::make(base);
    auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
    auto s = from_polysymplectic(PolyForm(sc, {g("dx") * g("dp1"), g("dx") * g("dp2")}));
    auto c = fixtures::canonical_r2();
    for (std::size_t a = 0; a < 3; ++a) {
      CHECK(to_string(s.frame[a]) == to_string(c.frame[a]));
      CHECK(to_string(s.anchor[a]) == to_string(c.anchor[a]));
    }
    CHECK(check_axioms(s).passed());
  }
  SECTION("r=1 symplectic plane gives the classical Poisson structure") {
    auto base = Chart::make({{"x", 0}, {"y", 0}});
    auto sc = ShiftedChart::make(base);
    auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
    auto s = from_polysymplectic(PolyForm(sc, {g("dx") * g("dy")}));
    CHECK(check_axioms(s).passed());
    // P(dx) = -d/dy, P(dy) = d/dx; {x, y} = i_{P(dx)} dy = -1.
    CHECK(anchor_of(s, PolyForm(sc, {g("dx")})) == -Derivation::coordinate(base, 1));
    CHECK(anchor_of(s, PolyForm(sc, {g("dy")})) == Derivation::coordinate(base, 0));
    auto x = admissible({GradedPoly::generator(base, "x")}, s);
    auto y = admissible({GradedPoly::generator(base, "y")}, s);
    CHECK(admissible_bracket(x, y, s) == std::vector<GradedPoly>{GradedPoly::constant(base, -1)});
  }
  SECTION("degenerate pair") {
    auto base = Chart::make({{"x", 0}, {"y", 0}, {"z", 0}});
    auto sc = ShiftedChart::make(base);
    auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
    try {
      from_polysymplectic(PolyForm(sc, {g("dx") * g("dy"), g("dx") * g("dy")}));
      FAIL("expected DegenerateKernel");
    } catch (const DegenerateKernel& e) {
      REQUIRE(e.witness.size() == 3);
      CHECK(e.witness[0].is_zero());
      CHECK(e.witness[1].is_zero());
      CHECK(e.witness[2] == RationalFunction(GradedPoly::constant(base, 1)));
    }
  }
  SECTION("non-closed input") {
    auto base = Chart::make({{"x", 0}, {"y", 0}, {"z", 0}});
    auto sc = ShiftedChart::make(base);
    auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
    CHECK_THROWS_AS(from_polysymplectic(PolyForm(sc, {g("dx") * g("dy"), g("x") * g("dy") * g("dz")})), NotClosed);
  }
}

TEST_CASE("bracket of sections", "[poly_poisson]") {
  auto s = fixtures::canonical_r2();
  CHECK(bracket_sections(s.frame[0], s.frame[1], s).is_zero());
  CHECK(bracket_sections(s.frame[1], s.frame[1], s).is_zero());

  auto c = fixtures::r3();
  auto so3 = bivector_structure(c, fixtures::curl_bivector(c, fixtures::coords(c)));
  auto br = bracket_sections(so3.frame[0], so3.frame[1], so3);
  CHECK(br == so3.frame[2]);

  auto outside = PolyForm(s.chart, {GradedPoly::generator(s.chart->chart(), "dp2"), GradedPoly(s.chart->chart())});
  CHECK_THROWS_AS(bracket_sections(outside, s.frame[0], s), NoExpansion);
}

TEST_CASE("admissible functions and their bracket", "[poly_poisson]") {
  auto s = fixtures::canonical_r2();
  const auto& base = s.base();
  auto x = GradedPoly::generator(base, "x");
  auto p1 = GradedPoly::generator(base, "p1"), p2 = GradedPoly::generator(base, "p2");
  GradedPoly zero(base);

  auto a = admissible({p1, p2}, s);
  REQUIRE(a.admissible);
  CHECK(anchor_of(s, de_rham(PolyForm::from_base(s.chart, a.alpha))) == Derivation::coordinate(base, 0));
  // d alpha = i_{d/dx}(omega_1, omega_2) = (dp1, dp2).
  CHECK(a.expansion[0] == RationalFunction(GradedPoly::constant(base, 1)));

  auto c = admissible({GradedPoly::constant(base, 3), GradedPoly::constant(base, -1)}, s);
  REQUIRE(c.admissible);
  for (const auto& e : c.expansion) CHECK(e.is_zero());

  // (x, 0) is admissible: d(x, 0) = -eta_2.
  auto xs = admissible({x, zero}, s);
  REQUIRE(xs.admissible);
  CHECK(xs.expansion[1] == RationalFunction(GradedPoly::constant(base, -1)));

  auto bad = admissible({p2, zero}, s);
  CHECK_FALSE(bad.admissible);
  CHECK_FALSE(bad.obstruction.empty());

  auto b = admissible({-x, zero}, s);
  REQUIRE(b.admissible);
  CHECK(admissible_bracket(a, b, s) == std::vector<GradedPoly>{GradedPoly::constant(base, -1), zero});
  CHECK(admissible_bracket(a, a, s) == std::vector<GradedPoly>{zero, zero});
  CHECK(admissible_bracket(a, c, s) == std::vector<GradedPoly>{zero, zero});
  CHECK_THROWS(admissible_bracket(a, bad, s));
}

namespace {

// alpha = (h p1 + u, h p2 + v) with h, u, v polynomials in x is admissible
// for the canonical r = 2 structure.
std::vector<GradedPoly> random_canonical_admissible(random::Engine& rng, const ChartPtr& base) {
  auto xc = Chart::make({{"x", 0}});
  random::Limits lim;
  lim.max_monomial_degree = 3;
  lim.max_terms = 3;
  std::vector<GradedPoly> img{GradedPoly::generator(base, "x")};
  auto h = substitute(random::poly(rng, xc, lim), base, img);
  auto u = substitute(random::poly(rng, xc, lim), base, img);
  auto v = substitute(random::poly(rng, xc, lim), base, img);
  return {h * GradedPoly::generator(base, "p1") + u, h * GradedPoly::generator(base, "p2") + v};
}

void check_bracket_identities(const PolyPoissonStructure& s, const std::vector<std::vector<GradedPoly>>& triple) {
  std::vector<AdmissibleFunction> f;
  for (const auto& t : triple) {
    f.push_back(admissible(t, s));
    REQUIRE(f.back().admissible);
  }
  auto d = [&](const std::vector<GradedPoly>& a) { return de_rham(PolyForm::from_base(s.chart, a)); };
  auto br = [&](const AdmissibleFunction& a, const AdmissibleFunction& b) {
    auto out = admissible(admissible_bracket(a, b, s), s);
    REQUIRE(out.admissible);
    return out;
  };
  auto ab = br(f[0], f[1]);
  CHECK(d(ab.alpha) == bracket_sections(d(f[0].alpha), d(f[1].alpha), s));
  CHECK(commutator(anchor_of(s, d(f[0].alpha)), anchor_of(s, d(f[1].alpha))) == anchor_of(s, d(ab.alpha)));
  auto j1 = admissible_bracket(f[0], br(f[1], f[2]), s);
  auto j2 = admissible_bracket(f[1], br(f[2], f[0]), s);
  auto j3 = admissible_bracket(f[2], br(f[0], f[1]), s);
  for (std::size_t j = 0; j < j1.size(); ++j) CHECK((j1[j] + j2[j] + j3[j]).is_zero());
}

}  // namespace

TEST_CASE("admissible bracket identities on random triples", "[poly_poisson][property]") {
  random::Engine rng(8080);
  auto s = fixtures::canonical_r2();
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::vector<GradedPoly>> t;
    for (int i = 0; i < 3; ++i) t.push_back(random_canonical_admissible(rng, s.base()));
    check_bracket_identities(s, t);
  }
  auto c = fixtures::r3();
  auto so3 = bivector_structure(c, fixtures::curl_bivector(c, fixtures::coords(c)));
  random::Limits lim;
  lim.max_monomial_degree = 3;
  lim.max_terms = 3;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::vector<GradedPoly>> t;
    for (int i = 0; i < 3; ++i) t.push_back({random::poly(rng, c, lim)});
    check_bracket_identities(so3, t);
  }
}

TEST_CASE("Jacobi verdict agrees with the bivector oracle", "[poly_poisson]") {
  auto c = fixtures::r3();
  auto x = fixtures::coords(c);
  auto one = GradedPoly::constant(c, 1);
  GradedPoly zero(c);
  struct Case {
    const char* name;
    std::vector<GradedPoly> v;
    bool expected;
  };
  std::vector<Case> cases{{"so3", x, true},
                          {"constant", {one, zero, zero}, true},
                          {"quadratic casimir scaling", {x[0] * x[2], x[1] * x[2], pow(x[2], 2)}, true},
                          {"twisted", {x[0], x[0], x[2]}, false},
                          {"sheared", {x[0], x[1] + x[2], x[2]}, false}};
  for (const auto& cs : cases) {
    INFO(cs.name);
    auto pi = fixtures::curl_bivector(c, cs.v);
    bool oracle = fixtures::bivector_jacobi_oracle(pi);
    CHECK(oracle == cs.expected);
    auto rep = check_axioms(bivector_structure(c, pi));
    CHECK(rep.skew.verdict == Verdict::Pass);
    CHECK(rep.closure.verdict == Verdict::Pass);
    CHECK((rep.jacobi.verdict == Verdict::Pass) == oracle);
  }
}

TEST_CASE("supplied structure functions are cross-checked", "[poly_poisson]") {
  auto c = fixtures::r3();
  auto s = bivector_structure(c, fixtures::curl_bivector(c, fixtures::coords(c)));
  auto solved = *check_axioms(s).structure_functions;
  CHECK(solved[0][1][2] == RationalFunction(GradedPoly::constant(c, 1)));
  CHECK(solved[1][0][2] == RationalFunction(GradedPoly::constant(c, -1)));
  s.structure_functions = solved;
  CHECK(check_axioms(s).passed());
  (*s.structure_functions)[0][1][2] = RationalFunction(GradedPoly::constant(c, 2));
  auto rep = check_axioms(s);
  CHECK(rep.closure.verdict == Verdict::Fail);
  CHECK(rep.closure.kind == "StructureFunctionMismatch");
  CHECK(rep.closure.indices == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("from_polysymplectic always yields a passing structure", "[poly_poisson][property]") {
  random::Engine rng(2718);
  random::Limits lim;
  lim.max_monomial_degree = 2;
  lim.max_terms = 2;
  lim.max_coefficient = 3;
  int accepted = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    auto base = random::chart(rng, n, 0, 0);
    auto sc = ShiftedChart::make(base);
    // Closed by construction: omega_j = d theta_j plus a constant 2-form.
    std::vector<GradedPoly> comps;
    for (std::size_t j = 0; j < r; ++j) {
      GradedPoly theta(sc->chart());
      for (std::size_t i = 0; i < n; ++i)
        theta += sc->embed(random::poly(rng, base, lim)) * GradedPoly::generator(sc->chart(), sc->d(i));
      GradedPoly w = de_rham(PolyForm(sc, {theta}))[0];
      for (std::size_t i = 0; i + 1 < n; ++i)
        w += GradedPoly::generator(sc->chart(), sc->d(i)) * GradedPoly::generator(sc->chart(), sc->d(i + 1)) *
             Rational(static_cast<long>(j + 1));
      comps.push_back(w);
    }
    PolyForm omega(sc, comps);
    if (omega.form_degree() != 2u) continue;
    try {
      auto s = from_polysymplectic(omega);
      auto rep = check_axioms(s);
      CHECK(rep.passed());
      ++accepted;
    } catch (const DegenerateKernel&) {
    }
  }
  CHECK(accepted > 10);
}
