#pragma once

// Seeded randomized law suites. Each returns the number of cases run and the
// first counterexample, if any.

#include <cstdint>
#include <optional>
#include <string>

namespace polysym::selftest {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::string> witness;  // first failing case, printed
  bool passed() const { return failures == 0; }
};

// Graded commutativity, associativity, distributivity, Leibniz for
// derivations and graded Jacobi for commutators. Up to 6 generators and
// monomial degree 4.
SuiteResult algebra(std::uint64_t seed, std::size_t cases);
// d^2 = 0, L_X = [i_X, d], [L_X, i_Y] = i_[X,Y], [L_X, d] = 0.
SuiteResult cartan(std::uint64_t seed, std::size_t cases);
// parse(print(f)) == f.
SuiteResult parser(std::uint64_t seed, std::size_t cases);
// d T(alpha) = T(d alpha) and the degree drop, symmetrized cup.
SuiteResult transgression(std::uint64_t seed, std::size_t cases);

}  // namespace polysym::selftest
