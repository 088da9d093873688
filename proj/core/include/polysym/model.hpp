#pragma once

// YAML model files. Every expression is a string in the grammar of expr.hpp;
// rationals may be YAML numbers or strings such as "-3/2". See
// docs/model_format.md for the schema.

#include <optional>
#include <string>
#include <vector>

#include "polysym/aksz.hpp"
#include "polysym/cartan.hpp"
#include "polysym/poly_poisson.hpp"

namespace polysym {

// Schema or invariant violation; line and column are 1-based, 0 when unknown.
class ModelError : public Error {
 public:
  ModelError(const std::string& file, std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct GradedModel {
  PolyForm omega;
  std::optional<PolyForm> theta;
  std::vector<GradedPoly> hamiltonian;  // one per component; zero when absent
  Derivation q;                         // zero of degree 1 when absent
};

struct ActionModel {
  FieldAssignment fields;
  std::optional<std::vector<Rational>> expected;
};

struct GaugeModel {
  std::vector<std::vector<Rational>> beta;
  bool jacobian_at_target = false;
  std::optional<std::string> expected_residual;
};

struct Model {
  std::string file;
  ChartPtr chart;
  ShiftedChartPtr shifted;
  std::optional<PolyPoissonStructure> poly_poisson;
  std::optional<PolyForm> polysymplectic;  // r-tuple of 2-forms on an even chart
  std::optional<GradedModel> graded;
  std::optional<PolyForm> transgress;      // form to transgress
  std::optional<SimplicialSource> source;
  std::optional<ActionModel> action;
  std::optional<GaugeModel> gauge;
  std::vector<std::vector<Rational>> sample_points;
  std::vector<std::string> warnings;
};

Model load_model(const std::string& path);
// `file` names the source in error messages.
Model load_model_text(const std::string& text, const std::string& file = "<string>");

}  // namespace polysym
