#pragma once

// Seeded generators of random charts, polynomials, derivations and forms for
// the randomized law suites (tests and `polysym selftest`).

#include <cstdint>
#include <random>

#include "polysym/cartan.hpp"
#include "polysym/graded_algebra.hpp"

namespace polysym::random {

using Engine = std::mt19937_64;

struct Limits {
  std::size_t max_generators = 6;
  int min_degree = -1;
  int max_degree = 2;
  std::uint32_t max_monomial_degree = 4;  // total exponent
  std::size_t max_terms = 4;
  int max_coefficient = 9;  // coefficients drawn from [-max, max]
};

ChartPtr chart(Engine& rng, const Limits& lim = {});
ChartPtr chart(Engine& rng, std::size_t generators, int min_degree, int max_degree);

Monomial monomial(Engine& rng, const Chart& c, std::uint32_t max_total);
GradedPoly poly(Engine& rng, const ChartPtr& c, const Limits& lim = {});
// Homogeneous of the degree of its first sampled monomial (possibly zero).
GradedPoly homogeneous(Engine& rng, const ChartPtr& c, const Limits& lim = {});
GradedPoly homogeneous_of_degree(Engine& rng, const ChartPtr& c, long degree, const Limits& lim = {});
Derivation derivation(Engine& rng, const ChartPtr& c, long degree, const Limits& lim = {});
PolyForm form(Engine& rng, const ShiftedChartPtr& c, std::size_t order, const Limits& lim = {});

}  // namespace polysym::random
