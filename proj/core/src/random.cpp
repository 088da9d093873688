#include "polysym/random.hpp"

namespace polysym::random {

namespace {

long uniform(Engine& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational coefficient(Engine& rng, int max) {
  long c = 0;
  while (c == 0) c = uniform(rng, -max, max);
  return Rational(c);
}

}  // namespace

ChartPtr chart(Engine& rng, std::size_t generators, int min_degree, int max_degree) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < generators; ++i)
    gens.emplace_back("g" + std::to_string(i), static_cast<int>(uniform(rng, min_degree, max_degree)));
  return Chart::make(std::move(gens));
}

ChartPtr chart(Engine& rng, const Limits& lim) {
  auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(lim.max_generators)));
  return chart(rng, n, lim.min_degree, lim.max_degree);
}

Monomial monomial(Engine& rng, const Chart& c, std::uint32_t max_total) {
  Monomial m(c.size(), 0);
  auto total = static_cast<std::uint32_t>(uniform(rng, 0, max_total));
  for (std::uint32_t k = 0; k < total; ++k) {
    auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(c.size()) - 1));
    if (c[i].odd() && m[i] == 1) continue;
    ++m[i];
  }
  return m;
}

GradedPoly poly(Engine& rng, const ChartPtr& c, const Limits& lim) {
  GradedPoly p(c);
  auto terms = uniform(rng, 0, static_cast<long>(lim.max_terms));
  for (long t = 0; t < terms; ++t)
    p += GradedPoly::monomial(c, monomial(rng, *c, lim.max_monomial_degree), coefficient(rng, lim.max_coefficient));
  return p;
}

GradedPoly homogeneous_of_degree(Engine& rng, const ChartPtr& c, long degree, const Limits& lim) {
  GradedPoly p(c);
  std::size_t found = 0;
  auto wanted = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(lim.max_terms)));
  for (int attempt = 0; attempt < 200 && found < wanted; ++attempt) {
    Monomial m = monomial(rng, *c, lim.max_monomial_degree);
    if (monomial_degree(*c, m) != degree) continue;
    p += GradedPoly::monomial(c, m, coefficient(rng, lim.max_coefficient));
    ++found;
  }
  return p;
}

GradedPoly homogeneous(Engine& rng, const ChartPtr& c, const Limits& lim) {
  Monomial m = monomial(rng, *c, lim.max_monomial_degree);
  GradedPoly p = GradedPoly::monomial(c, m, coefficient(rng, lim.max_coefficient));
  return p + homogeneous_of_degree(rng, c, monomial_degree(*c, m), lim);
}

Derivation derivation(Engine& rng, const ChartPtr& c, long degree, const Limits& lim) {
  std::vector<GradedPoly> comps;
  Limits small = lim;
  small.max_terms = std::max<std::size_t>(1, lim.max_terms / 2);
  for (std::size_t g = 0; g < c->size(); ++g) {
    if (uniform(rng, 0, 2) == 0) {
      comps.emplace_back(c);
      continue;
    }
    comps.push_back(homogeneous_of_degree(rng, c, (*c)[g].degree + degree, small));
  }
  return Derivation(c, std::move(comps), degree);
}

PolyForm form(Engine& rng, const ShiftedChartPtr& c, std::size_t order, const Limits& lim) {
  std::vector<GradedPoly> comps;
  for (std::size_t j = 0; j < order; ++j) comps.push_back(poly(rng, c->chart(), lim));
  return PolyForm(c, std::move(comps));
}

}  // namespace polysym::random
