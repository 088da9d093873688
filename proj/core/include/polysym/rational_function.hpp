#pragma once

// Quotients of polynomials on a chart of degree-0 generators, and Gaussian
// elimination over that fraction field. Representations are not reduced by a
// gcd; equality is decided by cross-multiplication, so it is exact regardless.

#include <optional>
#include <string>
#include <vector>

#include "polysym/graded_algebra.hpp"

namespace polysym {

// q with a == q * b, or nullopt. Requires a chart without odd generators.
std::optional<GradedPoly> exact_divide(const GradedPoly& a, const GradedPoly& b);

class RationalFunction {
 public:
  explicit RationalFunction(ChartPtr chart);
  RationalFunction(GradedPoly numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(GradedPoly numerator, GradedPoly denominator);

  const ChartPtr& chart() const { return num_.chart(); }
  const GradedPoly& numerator() const { return num_; }
  // Monic in its leading term; 1 for polynomials.
  const GradedPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // Throws unless is_polynomial().
  GradedPoly polynomial() const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;
  bool operator==(const RationalFunction& o) const;
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  // nullopt where the denominator vanishes.
  std::optional<Rational> evaluate(const std::vector<Rational>& point) const;

 private:
  void normalize();
  GradedPoly num_;
  GradedPoly den_;
};

// X(n/d) = (X(n) d - n X(d)) / d^2 for an even derivation X.
RationalFunction apply(const Derivation& x, const RationalFunction& f);

std::string to_string(const RationalFunction& f);

using RMatrix = std::vector<std::vector<RationalFunction>>;

struct RSolution {
  bool consistent = false;
  std::size_t rank = 0;
  // One particular solution (free unknowns set to 0) when consistent.
  std::vector<RationalFunction> solution;
  // Reduced right-hand sides of zero rows that did not vanish.
  std::vector<RationalFunction> obstruction;
};

// Rank over the fraction field.
std::size_t rank(const RMatrix& m, const ChartPtr& chart);
// Basis of the right kernel over the fraction field.
std::vector<std::vector<RationalFunction>> nullspace(const RMatrix& m, const ChartPtr& chart);
RSolution solve(const RMatrix& m, const std::vector<RationalFunction>& rhs, const ChartPtr& chart);

}  // namespace polysym
