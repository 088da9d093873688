#include "polysym/selftest.hpp"

#include <functional>

#include "polysym/aksz.hpp"
#include "polysym/expr.hpp"
#include "polysym/random.hpp"

namespace polysym::selftest {

namespace {

Rational koszul(long a, long b) { return is_odd(a) && is_odd(b) ? -1 : 1; }
long deg(const GradedPoly& f) { return f.degree().value_or(0); }

void record(SuiteResult& r, bool ok, const std::function<std::string()>& describe) {
  if (ok) return;
  ++r.failures;
  if (!r.witness) r.witness = describe();
}

}  // namespace

SuiteResult algebra(std::uint64_t seed, std::size_t cases) {
  SuiteResult r;
  r.name = "algebra";
  random::Engine rng(seed);
  std::uniform_int_distribution<long> dist(-1, 2);
  for (; r.cases < cases; ++r.cases) {
    auto c = random::chart(rng);
    auto a = random::homogeneous(rng, c);
    auto b = random::homogeneous(rng, c);
    auto f = random::poly(rng, c);
    long dx = dist(rng), dy = dist(rng), dz = dist(rng);
    auto X = random::derivation(rng, c, dx);
    auto Y = random::derivation(rng, c, dy);
    auto Z = random::derivation(rng, c, dz);
    auto what = [&](const char* law) {
      return [&, law] {
        return std::string(law) + ": a = " + to_string(a) + ", b = " + to_string(b) + ", f = " + to_string(f) +
               ", X = " + to_string(X);
      };
    };
    record(r, a * b == koszul(deg(a), deg(b)) * (b * a), what("graded commutativity"));
    record(r, (a * b) * f == a * (b * f), what("associativity"));
    record(r, a * (b + f) == a * b + a * f, what("distributivity"));
    record(r, X(a * f) == X(a) * f + koszul(dx, deg(a)) * (a * X(f)), what("Leibniz"));
    auto XY = commutator(X, Y);
    record(r, XY(f) == X(Y(f)) - koszul(dx, dy) * Y(X(f)), what("commutator"));
    record(r,
           commutator(X, commutator(Y, Z)) == commutator(XY, Z) + commutator(Y, commutator(X, Z)) * koszul(dx, dy),
           what("graded Jacobi"));
  }
  return r;
}

SuiteResult cartan(std::uint64_t seed, std::size_t cases) {
  SuiteResult r;
  r.name = "cartan";
  random::Engine rng(seed);
  random::Limits lim;
  lim.max_generators = 4;
  lim.max_monomial_degree = 3;
  lim.max_terms = 3;
  std::uniform_int_distribution<long> dist(-1, 1);
  for (; r.cases < cases; ++r.cases) {
    auto base = random::chart(rng, lim);
    auto sc = ShiftedChart::make(base);
    auto alpha = random::form(rng, sc, 2, lim);
    long dx = dist(rng), dy = dist(rng);
    auto X = random::derivation(rng, base, dx, lim);
    auto Y = random::derivation(rng, base, dy, lim);
    auto what = [&](const char* law) {
      return [&, law] {
        return std::string(law) + ": alpha = " + to_string(alpha) + ", X = " + to_string(X) + ", Y = " + to_string(Y);
      };
    };
    Derivation d = de_rham_derivation(*sc);
    Derivation iX = interior_derivation(*sc, X);
    Derivation LX = lie_derivation(*sc, X);
    const Rational s = is_odd(dx) ? -1 : 1;
    record(r, de_rham(de_rham(alpha)).is_zero(), what("d^2 = 0"));
    record(r, lie_derivative(X, alpha) == apply(iX, de_rham(alpha)) + apply(d, apply(iX, alpha)) * s,
           what("L_X = [i_X, d]"));
    record(r, lie_derivative(X, de_rham(alpha)) == de_rham(lie_derivative(X, alpha)) * s, what("[L_X, d] = 0"));
    record(r, commutator(LX, interior_derivation(*sc, Y)) == interior_derivation(*sc, commutator(X, Y)),
           what("[L_X, i_Y] = i_[X,Y]"));
  }
  return r;
}

SuiteResult parser(std::uint64_t seed, std::size_t cases) {
  SuiteResult r;
  r.name = "parser";
  random::Engine rng(seed);
  for (; r.cases < cases; ++r.cases) {
    auto sc = ShiftedChart::make(random::chart(rng));
    auto f = random::poly(rng, sc->chart());
    const std::string text = to_string(f);
    bool ok = false;
    try {
      ok = parse_expr(text, sc->chart()) == f;
    } catch (const Error&) {
    }
    record(r, ok, [&] { return "round trip of '" + text + "'"; });
  }
  return r;
}

SuiteResult transgression(std::uint64_t seed, std::size_t cases) {
  SuiteResult r;
  r.name = "transgression";
  random::Engine rng(seed);
  random::Limits lim;
  lim.max_generators = 3;
  lim.max_monomial_degree = 3;
  lim.max_terms = 3;
  const std::vector<SourcePtr> sources{
      std::make_shared<const SimplicialSource>(SimplicialSource::point()),
      std::make_shared<const SimplicialSource>(SimplicialSource::interval(2)),
      std::make_shared<const SimplicialSource>(SimplicialSource::circle(3)),
      std::make_shared<const SimplicialSource>(SimplicialSource::disk2())};
  for (; r.cases < cases; ++r.cases) {
    auto target = random::chart(rng, lim);
    const auto& src = sources[r.cases % sources.size()];
    MappingChart mc(target, src);
    auto alpha = random::form(rng, mc.target_shifted(), 1, lim);
    auto t = transgress(alpha, mc, CupConvention::Symmetrized);
    auto what = [&](const char* law) {
      return [&, law] { return std::string(law) + ": alpha = " + to_string(alpha); };
    };
    record(r, de_rham(t) == transgress(de_rham(alpha), mc, CupConvention::Symmetrized), what("chain map"));
    auto deg = alpha[0].degree();
    record(r, !deg || t[0].is_zero() || t[0].degree() == *deg - static_cast<long>(src->dimension()),
           what("degree law"));
  }
  return r;
}

}  // namespace polysym::selftest
