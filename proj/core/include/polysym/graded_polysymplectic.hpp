#pragma once

// Degree-1 graded poly-symplectic forms on charts with even coordinates q of
// degree 0 and odd coordinates p of degree 1.

#include <string>
#include <vector>

#include "polysym/cartan.hpp"
#include "polysym/linalg.hpp"

namespace polysym {

class NonConstantCoefficient : public Error {
 public:
  using Error::Error;
};

class NotExact : public Error {
 public:
  using Error::Error;
};

struct InvariantReport {
  bool closed = false;
  bool homogeneous = false;  // L_E omega = omega
  bool nondegenerate = false;
  std::vector<std::vector<Rational>> kernel;  // constant fields in the common kernel
  bool ok() const { return closed && homogeneous && nondegenerate; }
};

InvariantReport check_invariants(const PolyForm& omega);

// Chart q1..qm, p1_1..p1_m, ..., pr_1..pr_m; omega_j = sum_l dq_l dpj_l.
PolyForm canonical(std::size_t m, std::size_t r);

// The canonical form on an arbitrary chart with m degree-0 and r*m degree-1
// generators: omega_j pairs the l-th even generator with the ((j-1)m + l)-th
// odd generator, both counted in chart order.
PolyForm canonical_on(const ShiftedChartPtr& chart, std::size_t r);

struct NormalFormData {
  std::vector<std::size_t> even;  // base generator indices, chart order
  std::vector<std::size_t> odd;
  // c[j](a, l): coefficient of dq_l dp_a in omega_j.
  std::vector<QMatrix> c;
};

// Throws NonConstantCoefficient, or DegreeMismatch for pairings other than
// (degree-0, degree-1) generators.
NormalFormData normal_form(const PolyForm& omega);
PolyForm reconstruct(const ShiftedChartPtr& chart, const NormalFormData& data);

struct ExactnessReport {
  bool exact = false;
  QMatrix t;  // T(a, j*m + l) = c[j](a, l); square when the counts match
  std::string reason;
};

ExactnessReport is_exact(const PolyForm& omega);

struct CoordinateChange {
  ShiftedChartPtr chart;
  QMatrix odd_matrix;  // p_odd[a] -> sum_b odd_matrix(a, b) p_odd[b]
  std::vector<GradedPoly> images;  // per base generator
  PolyForm apply(const PolyForm& omega) const { return pullback(omega, chart, images); }
};

CoordinateChange linear_odd_change(const ShiftedChartPtr& chart, const QMatrix& m);

// Change with apply(omega) == canonical_on(chart, r). Throws NotExact.
CoordinateChange schwarz_normalize(const PolyForm& omega);

// i_Q omega_j = d F_j for all j; see hamiltonian_vector_field.
HamiltonianSolution graded_hamiltonian_vf(const std::vector<GradedPoly>& f, const PolyForm& omega);

}  // namespace polysym
