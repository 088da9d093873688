#pragma once

// Differential forms on a graded chart, modelled as functions on the shifted
// tangent chart T[1]: each generator x gets a companion dx of degree |x|+1.
// Wedge product is the graded product; d, i_X and L_X are derivations of the
// shifted chart, so every sign comes out of the graded_algebra machinery.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polysym/graded_algebra.hpp"
#include "polysym/linalg.hpp"

namespace polysym {

class ShiftedChart;
using ShiftedChartPtr = std::shared_ptr<const ShiftedChart>;

class ShiftedChart {
 public:
  explicit ShiftedChart(ChartPtr base);
  static ShiftedChartPtr make(ChartPtr base);

  const ChartPtr& base() const { return base_; }
  // Base generators followed by their differentials, in base order.
  const ChartPtr& chart() const { return chart_; }
  std::size_t base_size() const { return base_->size(); }
  std::size_t d(std::size_t base_index) const { return base_->size() + base_index; }
  bool is_differential(std::size_t index) const { return index >= base_->size(); }

  // Base function viewed on the shifted chart.
  GradedPoly embed(const GradedPoly& base_function) const;
  // Inverse of embed; throws if `f` involves differentials.
  GradedPoly restrict_to_base(const GradedPoly& f) const;
  // Number of differentials in a monomial of the shifted chart.
  std::uint32_t form_degree(const Monomial& m) const;

 private:
  ChartPtr base_;
  ChartPtr chart_;
};

// R^r-valued differential form: r components on one shifted chart.
class PolyForm {
 public:
  PolyForm(ShiftedChartPtr chart, std::vector<GradedPoly> components);
  static PolyForm zero(ShiftedChartPtr chart, std::size_t order);
  static PolyForm from_base(ShiftedChartPtr chart, const std::vector<GradedPoly>& functions);

  const ShiftedChartPtr& chart() const { return chart_; }
  std::size_t order() const { return components_.size(); }
  const GradedPoly& operator[](std::size_t j) const { return components_[j]; }
  const std::vector<GradedPoly>& components() const { return components_; }
  bool is_zero() const;
  // Common number of differentials in every term; nullopt if zero or mixed.
  std::optional<std::uint32_t> form_degree() const;

  PolyForm operator+(const PolyForm& other) const;
  PolyForm operator-(const PolyForm& other) const;
  PolyForm operator-() const;
  PolyForm operator*(const Rational& c) const;
  bool operator==(const PolyForm& other) const;

 private:
  ShiftedChartPtr chart_;
  std::vector<GradedPoly> components_;
};

std::string to_string(const PolyForm& form);

// d on the shifted chart: x -> dx, dx -> 0.
Derivation de_rham_derivation(const ShiftedChart& chart);
// i_X: x -> 0, dx -> X(x).
Derivation interior_derivation(const ShiftedChart& chart, const Derivation& x);
// L_X = [i_X, d].
Derivation lie_derivation(const ShiftedChart& chart, const Derivation& x);

PolyForm apply(const Derivation& on_shifted, const PolyForm& form);

PolyForm de_rham(const PolyForm& form);
PolyForm interior(const Derivation& x, const PolyForm& form);
PolyForm lie_derivative(const Derivation& x, const PolyForm& form);

// E(x) = w(x) x with w the internal degree. On a shifted chart this gives
// E(dx) = |x| dx.
Derivation euler(const ChartPtr& chart);

struct CohomologicalReport {
  bool cohomological = false;
  bool degree_one = false;
  std::optional<long> degree;
  Derivation square;  // [Q, Q]
};

CohomologicalReport is_cohomological(const Derivation& q);

// Pull a form back along the chart map x -> images[x] (base generators of
// `form` to functions on target->base()); dx goes to d(images[x]).
PolyForm pullback(const PolyForm& form, const ShiftedChartPtr& target,
                  const std::vector<GradedPoly>& images);

// Solve i_X omega_j = d F_j for all j at once, omega a tuple of 2-forms with
// constant coefficients and F base functions. Linear in X(g); exact.
struct HamiltonianSolution {
  bool solvable = false;
  bool unique = false;
  std::optional<Derivation> field;
  // When unsolvable: reduced equations that do not vanish.
  std::vector<GradedPoly> obstruction;
};

HamiltonianSolution hamiltonian_vector_field(const PolyForm& omega,
                                             const std::vector<GradedPoly>& functions);

// Constant vectors c (one entry per base generator) with
// sum_g c_g i_{d/dg} omega_j = 0 for every j.
std::vector<std::vector<Rational>> contraction_kernel(const PolyForm& omega);

// True when every term of every component is a constant times dg dh.
bool constant_two_form(const PolyForm& omega);

}  // namespace polysym
