#pragma once

// Discrete AKSZ constructions. A finite oriented simplicial complex stands in
// for the source T[1]Sigma; maps into a graded target chart become fields
// g_c, one per target generator g and cell c, of degree |g| - dim c. Target
// functions and forms are transgressed by substituting superfields
// sum_c g_c chi_c, multiplying cochains with a cup product and evaluating on
// the fundamental chain.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polysym/cartan.hpp"
#include "polysym/poly_poisson.hpp"

namespace polysym {

// Integrate over odd generators, first listed innermost: the integral of
// f d(v0) d(v1) ... is taken over v0 first. Each step takes the right
// derivative, so that the integral of theta d(theta) is 1.
GradedPoly berezin_integrate(const GradedPoly& f, const std::vector<std::size_t>& odd_vars);
GradedPoly berezin_integrate(const GradedPoly& f, const std::vector<std::string>& odd_vars);

struct Cell {
  std::size_t dim = 0;
  std::vector<std::size_t> vertices;  // ordered; orientation is the order
  std::string name;                   // v3, e0, f1
};

class SimplicialSource {
 public:
  // Edges are (source, target); faces are ordered vertex triples whose edges
  // must all be present (either orientation). `fundamental` lists signed top
  // cells by index into the edge list (dimension 1) or face list (dimension 2),
  // or vertices for dimension 0.
  SimplicialSource(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges,
                   std::vector<std::vector<std::size_t>> faces, std::vector<std::pair<std::size_t, int>> fundamental,
                   std::vector<bool> boundary_vertices = {});

  static SimplicialSource point();
  static SimplicialSource circle(std::size_t n);
  // n edges 0 -> 1 -> ... -> n; vertices 0 and n are boundary.
  static SimplicialSource interval(std::size_t n);
  // Faces (0,1,2), (0,2,3); edges 01, 12, 02, 23, 03; every vertex on the boundary.
  static SimplicialSource disk2();

  std::size_t dimension() const { return dimension_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t face_count() const { return cells_.size() - vertex_count_ - edge_count_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t vertex(std::size_t i) const { return i; }
  std::size_t edge(std::size_t i) const { return vertex_count_ + i; }
  std::size_t face(std::size_t i) const { return vertex_count_ + edge_count_ + i; }
  // Fundamental chain as (cell index, coefficient).
  const std::vector<std::pair<std::size_t, int>>& fundamental() const { return fundamental_; }
  bool is_boundary_vertex(std::size_t v) const { return boundary_[v]; }
  // True when the fundamental chain has zero boundary.
  bool closed() const;

  // Cell spanned by the ordered vertices, with the sign of the permutation
  // relating the order to the stored orientation.
  std::optional<std::pair<std::size_t, int>> find(const std::vector<std::size_t>& ordered) const;
  // Coefficient of cell `lower` in the boundary of cell `upper`.
  int incidence(std::size_t upper, std::size_t lower) const;

 private:
  std::size_t vertex_count_ = 0;
  std::size_t edge_count_ = 0;
  std::size_t dimension_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::pair<std::size_t, int>> fundamental_;
  std::vector<bool> boundary_;
};

using SourcePtr = std::shared_ptr<const SimplicialSource>;

enum class CupConvention {
  // Average of the Alexander-Whitney cup over all orderings of the factors,
  // with Koszul signs. Makes transgression multiplicative on the graded
  // commutative target algebra, hence a chain map.
  Symmetrized,
  // Alexander-Whitney cup applied in chart order.
  AlexanderWhitney,
};

CupConvention parse_convention(const std::string& name);
std::string to_string(CupConvention c);

class MappingChart {
 public:
  MappingChart(ChartPtr target, SourcePtr source);

  const ChartPtr& target() const { return target_; }
  const SimplicialSource& source() const { return *source_; }
  const SourcePtr& source_ptr() const { return source_; }
  // Field generators g_c named "<g>.<cell>", grouped by target generator.
  const ChartPtr& chart() const { return shifted_->base(); }
  const ShiftedChartPtr& shifted() const { return shifted_; }
  const ShiftedChartPtr& target_shifted() const { return target_shifted_; }
  std::size_t field(std::size_t generator, std::size_t cell) const {
    return generator * source_->cells().size() + cell;
  }

 private:
  ChartPtr target_;
  ShiftedChartPtr target_shifted_;
  SourcePtr source_;
  ShiftedChartPtr shifted_;
};

// chi_cell component of the superfield of a function on the target's shifted
// chart; lands on the mapping chart's shifted chart.
GradedPoly superfield_component(const GradedPoly& f, std::size_t cell, const MappingChart& mc, CupConvention conv);

// Transgression: sum over the fundamental chain of the top components.
PolyForm transgress(const PolyForm& alpha, const MappingChart& mc, CupConvention conv);
GradedPoly transgress_function(const GradedPoly& f, const MappingChart& mc, CupConvention conv);

// Source lift: Q(g_e) = (-1)^|g| (g_t - g_s), Q(g_f) = (-1)^{|g|-1} sum_e [e:f] g_e, Q(g_v) = 0.
Derivation lift_source(const MappingChart& mc);
// Target lift: Q(g_c) = chi_c component of the superfield of Q_tgt(g).
Derivation lift_target(const Derivation& q_tgt, const MappingChart& mc, CupConvention conv);

struct AlgebroidTarget {
  ChartPtr chart;            // x^i (degree 0), then u^a (degree 1)
  ShiftedChartPtr shifted;
  std::size_t n = 0, k = 0;
  StructureFunctions f;      // used for Q_P
  Derivation q;              // Q_P
  std::vector<GradedPoly> s; // S_P
  PolyForm omega;            // pullback of the canonical form along S[1] -> sum_r T*[1]M
  PolyForm theta;            // pullback of sum_i x^i dp_i, a primitive of omega
  std::vector<std::vector<Rational>> omega_kernel;
};

// Uses the structure's own structure functions when supplied, otherwise the
// solved ones. Throws NoExpansion when the bracket does not close and Error
// for non-polynomial structure functions.
AlgebroidTarget algebroid_target(const PolyPoissonStructure& s);

// Hamiltonian bracket on a mapping chart: (F, G)_j = X_F(G_j) with
// i_{X_F} Omega_j = d F_j.
struct BracketResult {
  bool defined = false;
  bool unique = false;
  std::vector<GradedPoly> value;
  std::string note;
};

BracketResult hamiltonian_bracket(const PolyForm& omega, const std::vector<GradedPoly>& f,
                                  const std::vector<GradedPoly>& g);

struct CmePieces {
  PolyForm theta;
  PolyForm omega;
  Derivation q_hat;
  Derivation q_check;
  std::vector<GradedPoly> s_hat;
  std::vector<GradedPoly> s_check;
  std::vector<GradedPoly> s_total;
  BracketResult hat_hat;
  BracketResult check_check;
  BracketResult hat_check;
};

// Throws Error when omega != d theta or when S_tgt is not a Hamiltonian for
// Q_tgt (i_{Q} omega = -d S).
CmePieces cme_pieces(const MappingChart& mc, const PolyForm& omega_tgt, const PolyForm& theta_tgt,
                     const std::vector<GradedPoly>& s_tgt, const Derivation& q_tgt, CupConvention conv);

struct FieldAssignment {
  std::vector<std::vector<Rational>> x;    // per vertex, one value per coordinate
  std::vector<std::vector<Rational>> eta;  // per edge, one coefficient per frame element
};

// Sum_e <eta_e, X_t - X_s> with the frame at X_s, plus
// sum_f mu_f 1/2 <P(X_v0) eta_01, eta_12> on ordered faces.
std::vector<Rational> ppsm_action(const FieldAssignment& fields, const SimplicialSource& src,
                                  const PolyPoissonStructure& s);

struct GaugeOptions {
  CupConvention convention = CupConvention::Symmetrized;
  bool jacobian_at_target = false;
};

struct GaugeResult {
  ShiftedChartPtr chart;  // degree-0 fields X_v^i and eta_e^a
  PolyForm omega;
  Derivation xi;
  std::vector<GradedPoly> h;
  PolyForm residual;      // i_xi Omega - dH
};

// beta: per vertex, one coefficient per frame element; zero on boundary
// vertices. Requires a constant frame.
GaugeResult gauge_residual(const std::vector<std::vector<Rational>>& beta, const PolyPoissonStructure& s,
                           const SimplicialSource& interval, const GaugeOptions& options = {});

}  // namespace polysym
