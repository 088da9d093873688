#include "polysym/model.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "polysym/expr.hpp"

namespace polysym {

ModelError::ModelError(const std::string& file, std::size_t line, std::size_t column, const std::string& message)
    : Error(file + (line ? ":" + std::to_string(line) + ":" + std::to_string(column) : std::string()) + ": " +
            message),
      line_(line),
      column_(column) {}

namespace {

class Loader {
 public:
  explicit Loader(std::string file) : file_(std::move(file)) {}

  Model load(const YAML::Node& root) {
    Model m;
    m.file = file_;
    if (!root.IsMap()) fail(root, "top level must be a mapping");
    static const std::set<std::string> known{"chart",  "poly_poisson", "polysymplectic", "graded",       "transgress",
                                             "source", "fields",       "gauge",          "sample_points", "description"};
    for (const auto& kv : root) {
      auto key = kv.first.as<std::string>();
      if (!known.count(key)) fail(kv.first, "unknown key '" + key + "'");
    }
    m.chart = chart(require(root, "chart"));
    m.shifted = ShiftedChart::make(m.chart);
    chart_ = m.chart;
    shifted_ = m.shifted;
    if (root["poly_poisson"]) m.poly_poisson = poly_poisson(root["poly_poisson"]);
    if (root["polysymplectic"]) m.polysymplectic = polysymplectic(root["polysymplectic"]);
    if (root["graded"]) m.graded = graded(root["graded"]);
    if (root["transgress"]) m.transgress = forms(require(root["transgress"], "forms"), "transgress.forms");
    if (root["source"]) m.source = source(root["source"]);
    if (root["fields"]) m.action = action(root["fields"]);
    if (root["gauge"]) m.gauge = gauge(root["gauge"]);
    if (root["sample_points"]) {
      for (const auto& p : seq(root["sample_points"], "sample_points")) {
        auto pt = rationals(p);
        if (pt.size() != m.chart->size()) fail(p, "sample point needs one value per generator");
        m.sample_points.push_back(std::move(pt));
      }
    }
    m.warnings = std::move(warnings_);
    return m;
  }

 private:
  [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
    const auto mark = at.Mark();
    if (mark.is_null()) throw ModelError(file_, 0, 0, msg);
    throw ModelError(file_, static_cast<std::size_t>(mark.line + 1), static_cast<std::size_t>(mark.column + 1), msg);
  }

  YAML::Node require(const YAML::Node& parent, const std::string& key) {
    if (!parent.IsMap()) fail(parent, "expected a mapping with key '" + key + "'");
    YAML::Node n = parent[key];
    if (!n) fail(parent, "missing key '" + key + "'");
    return n;
  }

  const YAML::Node& seq(const YAML::Node& n, const std::string& what) {
    if (!n.IsSequence()) fail(n, what + " must be a list");
    return n;
  }

  std::string scalar(const YAML::Node& n, const std::string& what) {
    if (!n.IsScalar()) fail(n, what + " must be a scalar");
    return n.Scalar();
  }

  long integer(const YAML::Node& n, const std::string& what) {
    const std::string s = scalar(n, what);
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(n, what + " must be an integer, got '" + s + "'");
  }

  std::size_t natural(const YAML::Node& n, const std::string& what) {
    long v = integer(n, what);
    if (v < 0) fail(n, what + " must be nonnegative");
    return static_cast<std::size_t>(v);
  }

  Rational rational(const YAML::Node& n) {
    const std::string s = scalar(n, "rational");
    try {
      return parse_rational(s);
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

  std::vector<Rational> rationals(const YAML::Node& n) {
    std::vector<Rational> out;
    for (const auto& v : seq(n, "value list")) out.push_back(rational(v));
    return out;
  }

  GradedPoly expression(const YAML::Node& n, const ChartPtr& c) {
    const std::string s = scalar(n, "expression");
    try {
      auto r = parse_expr_with_warnings(s, c);
      for (auto& w : r.warnings) warnings_.push_back(location(n) + w);
      return r.value;
    } catch (const ParseError& e) {
      fail(n, "in '" + s + "': " + e.what());
    }
  }

  std::string location(const YAML::Node& n) const {
    const auto mark = n.Mark();
    if (mark.is_null()) return file_ + ": ";
    return file_ + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1) + ": ";
  }

  ChartPtr chart(const YAML::Node& n) {
    std::vector<Generator> gens;
    for (const auto& g : seq(n, "chart")) {
      if (!g.IsMap()) fail(g, "chart entries are {name, degree}");
      std::string name = scalar(require(g, "name"), "name");
      int degree = static_cast<int>(integer(require(g, "degree"), "degree"));
      gens.emplace_back(std::move(name), degree);
    }
    try {
      return Chart::make(std::move(gens));
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

  PolyForm tuple(const YAML::Node& n, std::size_t order, const std::string& what) {
    std::vector<GradedPoly> comps;
    for (const auto& e : seq(n, what)) comps.push_back(expression(e, shifted_->chart()));
    if (order && comps.size() != order)
      fail(n, what + " has " + std::to_string(comps.size()) + " components, expected " + std::to_string(order));
    return PolyForm(shifted_, std::move(comps));
  }

  PolyForm forms(const YAML::Node& n, const std::string& what) { return tuple(n, 0, what); }

  Derivation vector_field(const YAML::Node& n, std::optional<long> degree) {
    if (!n.IsMap()) fail(n, "vector fields are mappings from generator to expression");
    std::vector<GradedPoly> comps(chart_->size(), GradedPoly(chart_));
    for (const auto& kv : n) {
      const std::string g = kv.first.as<std::string>();
      auto idx = chart_->find(g);
      if (!idx) fail(kv.first, "unknown generator '" + g + "'");
      comps[*idx] = expression(kv.second, chart_);
    }
    try {
      return Derivation(chart_, std::move(comps), degree);
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

  PolyPoissonStructure poly_poisson(const YAML::Node& n) {
    try {
      if (n["bivector"]) {
        std::vector<std::vector<GradedPoly>> pi;
        for (const auto& row : seq(n["bivector"], "bivector")) {
          auto& r = pi.emplace_back();
          for (const auto& e : seq(row, "bivector row")) r.push_back(expression(e, chart_));
          if (r.size() != chart_->size()) fail(row, "bivector rows need one entry per generator");
        }
        if (pi.size() != chart_->size()) fail(n["bivector"], "bivector needs one row per generator");
        auto s = bivector_structure(chart_, pi);
        if (n["structure_functions"]) s.structure_functions = structure_functions(n["structure_functions"], s.rank());
        return s;
      }
      const YAML::Node frame_node = require(n, "frame");
      const YAML::Node anchor_node = require(n, "anchor");
      std::vector<PolyForm> frame;
      std::size_t order = 0;
      for (const auto& f : seq(frame_node, "frame")) {
        frame.push_back(tuple(f, order, "frame section"));
        order = frame.back().order();
      }
      std::vector<Derivation> anchor;
      for (const auto& a : seq(anchor_node, "anchor")) anchor.push_back(vector_field(a, 0));
      if (frame.size() != anchor.size())
        fail(anchor_node, "frame has " + std::to_string(frame.size()) + " sections but anchor has " +
                              std::to_string(anchor.size()) + " entries");
      std::optional<StructureFunctions> f;
      if (n["structure_functions"]) f = structure_functions(n["structure_functions"], frame.size());
      return PolyPoissonStructure(shifted_, std::move(frame), std::move(anchor), std::move(f));
    } catch (const ModelError&) {
      throw;
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

  // Sparse entries {a, b, c, value}, 1-based; (b, a, c) gets -value.
  StructureFunctions structure_functions(const YAML::Node& n, std::size_t k) {
    StructureFunctions f(k, std::vector<std::vector<RationalFunction>>(
                                k, std::vector<RationalFunction>(k, RationalFunction(GradedPoly(chart_)))));
    for (const auto& e : seq(n, "structure_functions")) {
      std::size_t idx[3];
      const char* keys[3] = {"a", "b", "c"};
      for (int i = 0; i < 3; ++i) {
        idx[i] = natural(require(e, keys[i]), keys[i]);
        if (idx[i] < 1 || idx[i] > k) fail(e, std::string(keys[i]) + " out of range");
        --idx[i];
      }
      GradedPoly v = expression(require(e, "value"), chart_);
      f[idx[0]][idx[1]][idx[2]] = RationalFunction(v);
      f[idx[1]][idx[0]][idx[2]] = RationalFunction(-v);
    }
    return f;
  }

  PolyForm polysymplectic(const YAML::Node& n) { return forms(require(n, "forms"), "polysymplectic.forms"); }

  GradedModel graded(const YAML::Node& n) {
    PolyForm omega = forms(require(n, "forms"), "graded.forms");
    std::optional<PolyForm> theta;
    if (n["theta"]) theta = tuple(n["theta"], omega.order(), "graded.theta");
    std::vector<GradedPoly> h(omega.order(), GradedPoly(chart_));
    if (n["hamiltonian"]) {
      h.clear();
      for (const auto& e : seq(n["hamiltonian"], "graded.hamiltonian")) h.push_back(expression(e, chart_));
      if (h.size() != omega.order()) fail(n["hamiltonian"], "one Hamiltonian component per form component required");
    }
    Derivation q = n["q"] ? vector_field(n["q"], 1) : Derivation::zero(chart_, 1);
    return GradedModel{std::move(omega), std::move(theta), std::move(h), std::move(q)};
  }

  SimplicialSource source(const YAML::Node& n) {
    try {
      if (n["kind"]) {
        const std::string kind = scalar(n["kind"], "source.kind");
        if (kind == "point") return SimplicialSource::point();
        if (kind == "disk") return SimplicialSource::disk2();
        if (kind == "circle") return SimplicialSource::circle(natural(require(n, "n"), "source.n"));
        if (kind == "interval") return SimplicialSource::interval(natural(require(n, "n"), "source.n"));
        fail(n["kind"], "unknown source kind '" + kind + "' (point, circle, interval, disk)");
      }
      const std::size_t vertices = natural(require(n, "vertices"), "source.vertices");
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      if (n["edges"])
        for (const auto& e : seq(n["edges"], "source.edges")) {
          if (!e.IsSequence() || e.size() != 2) fail(e, "edges are [source, target]");
          edges.emplace_back(natural(e[0], "vertex"), natural(e[1], "vertex"));
        }
      std::vector<std::vector<std::size_t>> faces;
      if (n["faces"])
        for (const auto& f : seq(n["faces"], "source.faces")) {
          auto& v = faces.emplace_back();
          for (const auto& x : seq(f, "face")) v.push_back(natural(x, "vertex"));
        }
      std::vector<std::pair<std::size_t, int>> fundamental;
      for (const auto& c : seq(require(n, "fundamental"), "source.fundamental")) {
        if (!c.IsSequence() || c.size() != 2) fail(c, "fundamental chain entries are [cell, coefficient]");
        fundamental.emplace_back(natural(c[0], "cell"), static_cast<int>(integer(c[1], "coefficient")));
      }
      std::vector<bool> boundary;
      if (n["boundary"]) {
        boundary.assign(vertices, false);
        for (const auto& v : seq(n["boundary"], "source.boundary")) {
          std::size_t i = natural(v, "vertex");
          if (i >= vertices) fail(v, "boundary vertex out of range");
          boundary[i] = true;
        }
      }
      return SimplicialSource(vertices, std::move(edges), std::move(faces), std::move(fundamental),
                              std::move(boundary));
    } catch (const ModelError&) {
      throw;
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

  std::vector<std::vector<Rational>> table(const YAML::Node& n, const std::string& what) {
    std::vector<std::vector<Rational>> out;
    for (const auto& row : seq(n, what)) out.push_back(rationals(row));
    return out;
  }

  ActionModel action(const YAML::Node& n) {
    ActionModel a;
    a.fields.x = table(require(n, "x"), "fields.x");
    a.fields.eta = table(require(n, "eta"), "fields.eta");
    if (n["expected"]) a.expected = rationals(n["expected"]);
    return a;
  }

  GaugeModel gauge(const YAML::Node& n) {
    GaugeModel g;
    g.beta = table(require(n, "beta"), "gauge.beta");
    if (n["jacobian_at"]) {
      const std::string at = scalar(n["jacobian_at"], "gauge.jacobian_at");
      if (at != "source" && at != "target") fail(n["jacobian_at"], "jacobian_at must be source or target");
      g.jacobian_at_target = at == "target";
    }
    if (n["expected_residual"]) g.expected_residual = scalar(n["expected_residual"], "gauge.expected_residual");
    return g;
  }

  std::string file_;
  ChartPtr chart_;
  ShiftedChartPtr shifted_;
  std::vector<std::string> warnings_;
};

}  // namespace

Model load_model_text(const std::string& text, const std::string& file) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ModelError(file, static_cast<std::size_t>(e.mark.line + 1), static_cast<std::size_t>(e.mark.column + 1),
                     e.msg);
  }
  return Loader(file).load(root);
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str(), path);
}

}  // namespace polysym
