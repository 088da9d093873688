#pragma once

// Poly-Poisson structures (S, P) on a chart of degree-0 coordinates. S is a
// subbundle of the r-fold sum of the cotangent bundle given by a global frame
// eta_1..eta_k; P is given on the frame and extended linearly over functions.
// Sections are r-tuples of 1-forms (PolyForm of order r).

#include <optional>
#include <string>
#include <vector>

#include "polysym/cartan.hpp"
#include "polysym/rational_function.hpp"

namespace polysym {

class FrameDependent : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  NotClosed(std::size_t component, const std::string& what) : Error(what), component(component) {}
  std::size_t component;  // 0-based
};

class DegenerateKernel : public Error {
 public:
  DegenerateKernel(std::vector<RationalFunction> w, const std::string& what) : Error(what), witness(std::move(w)) {}
  std::vector<RationalFunction> witness;
};

class NoExpansion : public Error {
 public:
  using Error::Error;
};

// f[a][b][c] is the coefficient of eta_c in the bracket of eta_a and eta_b.
using StructureFunctions = std::vector<std::vector<std::vector<RationalFunction>>>;

struct PolyPoissonStructure {
  ShiftedChartPtr chart;
  std::vector<PolyForm> frame;
  std::vector<Derivation> anchor;
  std::optional<StructureFunctions> structure_functions;

  // Validates chart, orders, form degrees and anchor degrees.
  PolyPoissonStructure(ShiftedChartPtr chart, std::vector<PolyForm> frame, std::vector<Derivation> anchor,
                       std::optional<StructureFunctions> structure_functions = std::nullopt);

  const ChartPtr& base() const { return chart->base(); }
  std::size_t dimension() const { return chart->base_size(); }
  std::size_t order() const { return frame.front().order(); }
  std::size_t rank() const { return frame.size(); }
};

// Coefficient of dx_i in component j of a 1-form tuple, at index j*n + i.
std::vector<GradedPoly> section_coefficients(const PolyForm& section);
PolyForm section_from_coefficients(const ShiftedChartPtr& chart, std::size_t order,
                                   const std::vector<GradedPoly>& coefficients);

enum class Verdict { Pass, Fail, Inconclusive, Skipped };
const char* to_string(Verdict v);

struct AxiomVerdict {
  std::string axiom;
  Verdict verdict = Verdict::Skipped;
  std::string kind;                  // failure class, e.g. "NoExpansion", "RankInconclusive"
  std::vector<std::size_t> indices;  // 1-based frame indices of the first witness
  std::vector<std::string> residual;
  std::string details;
};

struct AxiomReport {
  AxiomVerdict frame;    // pointwise independence
  AxiomVerdict skew;     // (i)
  AxiomVerdict annihilator;  // (ii)
  AxiomVerdict closure;  // (iii), bracket closes on S
  AxiomVerdict jacobi;   // (iii), Jacobi identity
  std::optional<StructureFunctions> structure_functions;  // solved
  std::vector<RationalFunction> denominators;              // of solved structure functions
  bool passed() const;
  std::vector<const AxiomVerdict*> verdicts() const;
};

// Throws FrameDependent when the frame has generic rank < k.
AxiomReport check_axioms(const PolyPoissonStructure& s, const std::vector<std::vector<Rational>>& samples = {});

struct Expansion {
  bool in_span = false;
  std::vector<RationalFunction> coefficients;  // per frame element
  std::vector<RationalFunction> obstruction;
};

Expansion expand(const PolyPoissonStructure& s, const PolyForm& section);

// P applied to a section of S; throws NoExpansion outside S, Error when the
// expansion has non-polynomial coefficients.
Derivation anchor_of(const PolyPoissonStructure& s, const PolyForm& section);

// L_{P(eta)} gamma - i_{P(gamma)} d eta.
PolyForm bracket_sections(const PolyForm& eta, const PolyForm& gamma, const PolyPoissonStructure& s);

struct AdmissibleFunction {
  bool admissible = false;
  std::vector<GradedPoly> alpha;
  std::vector<RationalFunction> expansion;  // d alpha = sum_a expansion[a] eta_a
  std::vector<RationalFunction> obstruction;
};

AdmissibleFunction admissible(const std::vector<GradedPoly>& alpha, const PolyPoissonStructure& s);

// i_{P(d alpha)} d beta. Throws if either argument is not admissible.
std::vector<GradedPoly> admissible_bracket(const AdmissibleFunction& alpha, const AdmissibleFunction& beta,
                                           const PolyPoissonStructure& s);

// Frame (i_{d/dx_i} omega_1, ..., i_{d/dx_i} omega_r), anchor d/dx_i.
PolyPoissonStructure from_polysymplectic(const PolyForm& omega);

// r = 1 structure with frame dx_a and anchor P(dx_a) = sum_b pi[a][b] d/dx_b.
PolyPoissonStructure bivector_structure(const ChartPtr& chart, const std::vector<std::vector<GradedPoly>>& pi);

}  // namespace polysym
