#include <catch_amalgamated.hpp>

#include "polysym/graded_polysymplectic.hpp"
#include "polysym/random.hpp"

using namespace polysym;

namespace {

QMatrix random_invertible(random::Engine& rng, std::size_t n) {
  std::uniform_int_distribution<long> coef(-4, 4);
  for (;;) {
    QMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) = Rational(coef(rng), std::uniform_int_distribution<long>(1, 3)(rng));
        m(r, c).canonicalize();
      }
    if (inverse(m)) return m;
  }
}

GradedPoly gen(const PolyForm& w, std::string_view n) { return GradedPoly::generator(w.chart()->chart(), n); }

}  // namespace

TEST_CASE("canonical forms satisfy every invariant", "[graded_polysymplectic]") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t r = 1; r <= 3; ++r) {
      INFO("m = " << m << ", r = " << r);
      PolyForm w = canonical(m, r);
      CHECK(w.order() == r);
      CHECK(w.chart()->base_size() == m + r * m);
      auto inv = check_invariants(w);
      CHECK(inv.closed);
      CHECK(inv.homogeneous);
      CHECK(inv.nondegenerate);
      CHECK(is_exact(w).exact);
      CHECK(reconstruct(w.chart(), normal_form(w)) == w);
    }
}

TEST_CASE("canonical form layout", "[graded_polysymplectic]") {
  PolyForm w11 = canonical(1, 1);
  CHECK(to_string(w11) == "(dq1*dp1_1)");
  PolyForm w12 = canonical(1, 2);
  CHECK(w12[0] == gen(w12, "dq1") * gen(w12, "dp1_1"));
  CHECK(w12[1] == gen(w12, "dq1") * gen(w12, "dp2_1"));
  PolyForm w22 = canonical(2, 2);
  CHECK(w22[0].size() == 2);
  CHECK(w22[1].size() == 2);
  CHECK(w22.chart()->base()->generators()[5].name == "p2_2");
}

TEST_CASE("normal form data", "[graded_polysymplectic]") {
  auto nf = normal_form(canonical(1, 2));
  REQUIRE(nf.c.size() == 2);
  CHECK(nf.c[0].to_string() == "[[1], [0]]");
  CHECK(nf.c[1].to_string() == "[[0], [1]]");

  auto sc = ShiftedChart::make(Chart::make({{"q", 0}, {"p", 1}}));
  auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
  PolyForm two(sc, {g("dq") * g("dp") * Rational(2)});
  CHECK(normal_form(two).c[0].to_string() == "[[2]]");
  // Written in reverse order the coefficient is unchanged: dp is even.
  PolyForm rev(sc, {g("dp") * g("dq") * Rational(2)});
  CHECK(rev == two);

  PolyForm nonconst(sc, {g("q") * g("dq") * g("dp")});
  auto inv = check_invariants(nonconst);
  CHECK(inv.closed);
  CHECK(inv.homogeneous);
  CHECK_THROWS_AS(normal_form(nonconst), NonConstantCoefficient);

  auto sc2 = ShiftedChart::make(Chart::make({{"q", 0}, {"u", 0}, {"p", 1}}));
  PolyForm even_even(sc2, {GradedPoly::generator(sc2->chart(), "dq") * GradedPoly::generator(sc2->chart(), "du")});
  CHECK_THROWS_AS(normal_form(even_even), DegreeMismatch);
}

TEST_CASE("exactness", "[graded_polysymplectic]") {
  PolyForm w = canonical(1, 2);
  auto t = is_exact(w).t;
  CHECK(t.to_string() == "[[1, 0], [0, 1]]");

  std::vector<GradedPoly> same{gen(w, "dq1") * gen(w, "dp1_1"), gen(w, "dq1") * gen(w, "dp1_1")};
  auto rep = is_exact(PolyForm(w.chart(), same));
  CHECK_FALSE(rep.exact);
  CHECK(rep.t.to_string() == "[[1, 1], [0, 0]]");
  CHECK(check_invariants(PolyForm(w.chart(), same)).kernel.size() == 1);
  CHECK_THROWS_AS(schwarz_normalize(PolyForm(w.chart(), same)), NotExact);

  auto sc = ShiftedChart::make(Chart::make({{"q", 0}, {"p", 1}, {"s", 1}}));
  auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
  auto count = is_exact(PolyForm(sc, {g("dq") * g("dp")}));
  CHECK_FALSE(count.exact);
}

TEST_CASE("Schwarz normalization examples", "[graded_polysymplectic]") {
  PolyForm w = canonical(2, 2);
  auto id = schwarz_normalize(w);
  CHECK(id.odd_matrix.to_string() == QMatrix::identity(4).to_string());

  auto sc = ShiftedChart::make(Chart::make({{"q", 0}, {"p", 1}}));
  auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
  PolyForm two(sc, {g("dq") * g("dp") * Rational(2)});
  auto ch = schwarz_normalize(two);
  CHECK(ch.odd_matrix.to_string() == "[[1/2]]");
  CHECK(ch.apply(two) == PolyForm(sc, {g("dq") * g("dp")}));
}

TEST_CASE("Schwarz normalization undoes random odd twists", "[graded_polysymplectic][property]") {
  random::Engine rng(1729);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t m = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    PolyForm w = canonical(m, r);
    QMatrix a = random_invertible(rng, r * m);
    PolyForm twisted = linear_odd_change(w.chart(), a).apply(w);
    REQUIRE(check_invariants(twisted).ok());
    REQUIRE(is_exact(twisted).exact);
    auto ch = schwarz_normalize(twisted);
    CHECK(ch.apply(twisted) == w);
    // The recovered change composes with the twist to the identity on omega.
    CHECK(ch.odd_matrix.to_string() == (*inverse(a)).to_string());
  }
}

TEST_CASE("graded Hamiltonian vector fields", "[graded_polysymplectic]") {
  PolyForm w = canonical(1, 2);
  const auto& base = w.chart()->base();
  auto q = GradedPoly::generator(base, "q1");
  auto p1 = GradedPoly::generator(base, "p1_1");

  auto sol = graded_hamiltonian_vf({q, q}, w);
  REQUIRE(sol.solvable);
  CHECK(sol.unique);
  CHECK(*sol.field == Derivation::coordinate(base, 1) + Derivation::coordinate(base, 2));

  auto zero = graded_hamiltonian_vf({GradedPoly(base), GradedPoly(base)}, w);
  REQUIRE(zero.solvable);
  CHECK(zero.field->is_zero());

  auto bad = graded_hamiltonian_vf({p1, GradedPoly(base)}, w);
  CHECK_FALSE(bad.solvable);
  CHECK_FALSE(bad.obstruction.empty());
}
