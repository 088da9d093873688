#pragma once

// Exact arithmetic in free Z-graded commutative algebras.
//
// A Chart is an ordered list of generators with integer degrees. A GradedPoly
// is a finite sum of monomials, each monomial written with its factors in
// chart order; odd generators (odd degree) appear at most once. All Koszul
// signs are produced by a single routine (monomial multiplication), so every
// other operation inherits them.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "polysym/errors.hpp"
#include "polysym/rational.hpp"

namespace polysym {

constexpr bool is_odd(long degree) { return (degree % 2) != 0; }

struct Generator {
  std::string name;
  int degree = 0;
  // Weight seen by the Euler field. Equals `degree` except for the companion
  // generators dx of a shifted chart, which carry the weight of x.
  int internal_degree = 0;

  Generator() = default;
  Generator(std::string n, int deg) : name(std::move(n)), degree(deg), internal_degree(deg) {}
  Generator(std::string n, int deg, int internal)
      : name(std::move(n)), degree(deg), internal_degree(internal) {}

  bool odd() const { return is_odd(degree); }
  bool operator==(const Generator&) const = default;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

class Chart {
 public:
  explicit Chart(std::vector<Generator> generators);

  static ChartPtr make(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Generator>& generators() const { return generators_; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws UnknownGenerator.
  std::size_t index_of(std::string_view name) const;

  bool nonnegatively_graded() const;
  bool all_degree_zero() const;

  bool operator==(const Chart& other) const { return generators_ == other.generators_; }

 private:
  std::vector<Generator> generators_;
  std::unordered_map<std::string, std::size_t> index_;
};

bool same_chart(const ChartPtr& a, const ChartPtr& b);

// Exponent vector against chart order.
using Monomial = std::vector<std::uint32_t>;

// Total exponent first, then earlier generators with larger exponents first.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using Terms = std::map<Monomial, Rational, MonomialLess>;

long monomial_degree(const Chart& chart, const Monomial& m);
long monomial_internal_degree(const Chart& chart, const Monomial& m);
bool monomial_odd(const Chart& chart, const Monomial& m);

// Product of two normal-ordered monomials. Returns 0 when an odd generator
// repeats, otherwise the Koszul sign (+1/-1) and writes the product to `out`.
int multiply_monomials(const Chart& chart, const Monomial& a, const Monomial& b, Monomial& out);

class GradedPoly {
 public:
  explicit GradedPoly(ChartPtr chart);
  GradedPoly(ChartPtr chart, Terms terms);

  static GradedPoly constant(ChartPtr chart, const Rational& c);
  static GradedPoly generator(ChartPtr chart, std::size_t index);
  static GradedPoly generator(ChartPtr chart, std::string_view name);
  static GradedPoly monomial(ChartPtr chart, const Monomial& m, const Rational& c);

  const ChartPtr& chart() const { return chart_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  // Common degree of all terms; nullopt when zero or inhomogeneous.
  std::optional<long> degree() const;
  std::optional<long> internal_degree() const;
  // Common parity of all terms; nullopt when zero or of mixed parity.
  std::optional<bool> odd() const;
  bool homogeneous() const { return is_zero() || degree().has_value(); }
  // Highest total exponent over all terms (0 for the zero polynomial).
  std::uint32_t total_exponent() const;
  // True when generator `index` occurs in some term.
  bool depends_on(std::size_t index) const;

  GradedPoly& operator+=(const GradedPoly& other);
  GradedPoly& operator-=(const GradedPoly& other);
  GradedPoly& operator*=(const Rational& c);

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
  GradedPoly operator-() const;

  bool operator==(const GradedPoly& other) const;
  bool operator!=(const GradedPoly& other) const { return !(*this == other); }

 private:
  void add_term(const Monomial& m, const Rational& c);

  ChartPtr chart_;
  Terms terms_;
};

// Graded-commutative product.
GradedPoly mul(const GradedPoly& a, const GradedPoly& b);
inline GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return mul(a, b); }
GradedPoly pow(const GradedPoly& a, std::uint32_t e);

// Normal form of coeff * g_{word[0]} * g_{word[1]} * ...
GradedPoly normalize(const ChartPtr& chart, const Rational& coeff, std::span<const std::size_t> word);
GradedPoly normalize(const ChartPtr& chart, const Rational& coeff,
                     const std::vector<std::string>& word);

// Left graded derivative: bring one occurrence of the generator to the front,
// then remove it.
GradedPoly partial(const GradedPoly& f, std::size_t generator);

// Algebra morphism sending generator i to images[i] (on a common target chart).
// Images must have the degree of their generator (zero is allowed).
GradedPoly substitute(const GradedPoly& f, const ChartPtr& target,
                      const std::vector<GradedPoly>& images);

// Evaluate the degree-0 generators listed in `values`, keeping the others.
GradedPoly evaluate(const GradedPoly& f, const std::vector<std::optional<Rational>>& values);

std::string to_string(const GradedPoly& f);

class Derivation {
 public:
  // Components are indexed by generator. The degree is inferred from the
  // nonzero components; `declared` fixes it for the zero derivation and is
  // cross-checked otherwise. A derivation whose components disagree on degree
  // but agree on parity is accepted with degree() == nullopt.
  Derivation(ChartPtr chart, std::vector<GradedPoly> components,
             std::optional<long> declared = std::nullopt);

  static Derivation zero(ChartPtr chart, long degree);
  // d/d(generator), of degree -|generator|.
  static Derivation coordinate(ChartPtr chart, std::size_t generator);

  const ChartPtr& chart() const { return chart_; }
  std::optional<long> degree() const { return degree_; }
  bool odd() const { return odd_; }
  const GradedPoly& component(std::size_t generator) const { return components_[generator]; }
  const std::vector<GradedPoly>& components() const { return components_; }
  bool is_zero() const;

  GradedPoly operator()(const GradedPoly& f) const;

  Derivation operator+(const Derivation& other) const;
  Derivation operator-(const Derivation& other) const;
  Derivation operator-() const;
  Derivation operator*(const Rational& c) const;

  bool operator==(const Derivation& other) const;

 private:
  ChartPtr chart_;
  std::vector<GradedPoly> components_;
  std::optional<long> degree_;
  bool odd_ = false;
};

// f * X, the derivation g -> f X(g). f must be homogeneous.
Derivation left_multiply(const GradedPoly& f, const Derivation& x);

// [X, Y] = XY - (-1)^{|X||Y|} YX, evaluated on generators.
Derivation commutator(const Derivation& x, const Derivation& y);

std::string to_string(const Derivation& x);

}  // namespace polysym
