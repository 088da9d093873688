#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>

#include "polysym/aksz.hpp"
#include "polysym/graded_polysymplectic.hpp"
#include "polysym/model.hpp"
#include "polysym/selftest.hpp"

namespace polysym::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct Check {
  std::string name;
  std::string verdict;  // pass, fail, inconclusive, skipped, reported
  std::vector<std::string> witness;
  std::string details;
};

struct Report {
  std::string command;
  std::string input;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> convention;
  std::vector<std::string> warnings;
  std::vector<Check> checks;
  json results = json::object();

  std::string status() const {
    bool inconclusive = false;
    for (const auto& c : checks) {
      if (c.verdict == "fail") return "fail";
      inconclusive = inconclusive || c.verdict == "inconclusive";
    }
    return inconclusive ? "inconclusive" : "pass";
  }
};

class UsageFailure : public Error {
 public:
  using Error::Error;
};

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

std::vector<std::string> components(const PolyForm& f) {
  std::vector<std::string> out;
  for (const auto& c : f.components()) out.push_back(to_string(c));
  return out;
}

std::vector<std::string> components(const std::vector<GradedPoly>& f) {
  std::vector<std::string> out;
  for (const auto& c : f) out.push_back(to_string(c));
  return out;
}

bool all_zero(const std::vector<GradedPoly>& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

std::vector<std::string> rationals(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

std::string kernel_vector(const std::vector<Rational>& v, const Chart& c) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(v[i]) + ")*d/d" + c[i].name;
  }
  return s;
}

// -------------------------------------------------------------- commands

struct Options {
  std::string input;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  CupConvention convention = CupConvention::Symmetrized;
};

Model load(const Options& o) {
  if (o.input.empty()) throw UsageFailure("--input is required for this command");
  return load_model(o.input);
}

PolyPoissonStructure require_poisson(const Model& m, const char* command) {
  if (!m.poly_poisson) throw UsageFailure(std::string(command) + " needs a poly_poisson block");
  return *m.poly_poisson;
}

const SimplicialSource& require_source(const Model& m, const char* command) {
  if (!m.source) throw UsageFailure(std::string(command) + " needs a source block");
  return *m.source;
}

void add_axioms(Report& r, const PolyPoissonStructure& s, const Model& m) {
  AxiomReport rep;
  try {
    rep = check_axioms(s, m.sample_points);
  } catch (const FrameDependent& e) {
    r.checks.push_back({"frame", "fail", {}, e.what()});
    return;
  }
  for (const AxiomVerdict* v : rep.verdicts()) {
    std::string details = v->kind;
    if (!v->indices.empty()) {
      details += details.empty() ? "at (" : " at (";
      for (std::size_t i = 0; i < v->indices.size(); ++i) details += (i ? "," : "") + std::to_string(v->indices[i]);
      details += ")";
    }
    if (!v->details.empty()) details += (details.empty() ? "" : "; ") + v->details;
    r.checks.push_back({v->axiom, to_string(v->verdict), v->residual, details});
  }
  if (rep.structure_functions) {
    json f = json::array();
    const auto& sf = *rep.structure_functions;
    for (std::size_t a = 0; a < sf.size(); ++a)
      for (std::size_t b = a + 1; b < sf.size(); ++b)
        for (std::size_t c = 0; c < sf.size(); ++c)
          if (!sf[a][b][c].is_zero())
            f.push_back({{"a", a + 1}, {"b", b + 1}, {"c", c + 1}, {"value", to_string(sf[a][b][c])}});
    r.results["structure_functions"] = f;
  }
}

void check_poisson(Report& r, const Options& o) {
  Model m = load(o);
  r.warnings = m.warnings;
  if (m.poly_poisson) return add_axioms(r, *m.poly_poisson, m);
  if (!m.polysymplectic) throw UsageFailure("check-poisson needs a poly_poisson or polysymplectic block");
  try {
    add_axioms(r, from_polysymplectic(*m.polysymplectic), m);
  } catch (const NotClosed& e) {
    r.checks.push_back({"polysymplectic", "fail", {}, e.what()});
  } catch (const DegenerateKernel& e) {
    r.checks.push_back({"polysymplectic", "fail", {}, e.what()});
  }
}

void check_symplectic(Report& r, const Options& o) {
  Model m = load(o);
  r.warnings = m.warnings;
  if (m.graded) {
    const PolyForm& w = m.graded->omega;
    InvariantReport inv = check_invariants(w);
    r.checks.push_back({"closed", verdict(inv.closed), inv.closed ? std::vector<std::string>{} : components(de_rham(w)), ""});
    PolyForm le = lie_derivative(euler(w.chart()->base()), w) - w;
    r.checks.push_back({"homogeneous", verdict(inv.homogeneous), inv.homogeneous ? std::vector<std::string>{} : components(le),
                        "L_E omega - omega"});
    std::vector<std::string> kernel;
    for (const auto& v : inv.kernel) kernel.push_back(kernel_vector(v, *w.chart()->base()));
    r.checks.push_back({"nondegenerate", verdict(inv.nondegenerate), kernel, "constant kernel vectors"});
    try {
      ExactnessReport ex = is_exact(w);
      r.checks.push_back({"exact", verdict(ex.exact), {}, ex.reason});
      r.results["t"] = ex.t.to_string();
    } catch (const Error& e) {
      r.checks.push_back({"exact", "fail", {}, e.what()});
    }
    return;
  }
  if (!m.polysymplectic) throw UsageFailure("check-symplectic needs a graded or polysymplectic block");
  const PolyForm& w = *m.polysymplectic;
  PolyForm dw = de_rham(w);
  r.checks.push_back({"closed", verdict(dw.is_zero()), dw.is_zero() ? std::vector<std::string>{} : components(dw), ""});
  try {
    auto s = from_polysymplectic(w);
    r.checks.push_back({"nondegenerate", "pass", {}, ""});
    auto rep = check_axioms(s, m.sample_points);
    r.checks.push_back({"induced_poisson", verdict(rep.passed()), {}, "frame i_{d/dx} omega, anchor d/dx"});
  } catch (const DegenerateKernel& e) {
    std::vector<std::string> witness;
    for (const auto& v : e.witness) witness.push_back(to_string(v));
    r.checks.push_back({"nondegenerate", "fail", witness, e.what()});
  } catch (const NotClosed&) {
    r.checks.push_back({"nondegenerate", "skipped", {}, "form is not closed"});
  }
}

void schwarz(Report& r, const Options& o) {
  Model m = load(o);
  r.warnings = m.warnings;
  if (!m.graded) throw UsageFailure("schwarz needs a graded block");
  const PolyForm& w = m.graded->omega;
  ExactnessReport ex;
  try {
    ex = is_exact(w);
  } catch (const Error& e) {
    r.checks.push_back({"exact", "fail", {}, e.what()});
    return;
  }
  r.results["t"] = ex.t.to_string();
  r.checks.push_back({"exact", verdict(ex.exact), {}, ex.reason});
  if (!ex.exact) return;
  CoordinateChange ch = schwarz_normalize(w);
  PolyForm img = ch.apply(w);
  const bool ok = img == canonical_on(w.chart(), w.order());
  r.checks.push_back({"normalized", verdict(ok), ok ? std::vector<std::string>{} : components(img), ""});
  r.results["odd_matrix"] = ch.odd_matrix.to_string();
  json images = json::object();
  const Chart& base = *w.chart()->base();
  for (std::size_t i = 0; i < base.size(); ++i) images[base[i].name] = to_string(ch.images[i]);
  r.results["images"] = images;
}

void algebroid_cme(Report& r, const Options& o) {
  Model m = load(o);
  r.warnings = m.warnings;
  auto s = require_poisson(m, "algebroid-cme");
  std::optional<AlgebroidTarget> at;
  try {
    at = algebroid_target(s);
  } catch (const NoExpansion& e) {
    r.checks.push_back({"closure", "fail", {}, e.what()});
    return;
  }
  auto coh = is_cohomological(at->q);
  std::vector<std::string> sq;
  if (!coh.cohomological)
    for (std::size_t g = 0; g < at->chart->size(); ++g)
      if (!coh.square.component(g).is_zero())
        sq.push_back((*at->chart)[g].name + " -> " + to_string(coh.square.component(g)));
  r.checks.push_back({"cohomological", verdict(coh.cohomological), sq, "[Q_P, Q_P]"});
  std::vector<GradedPoly> qs;
  for (const auto& sj : at->s) qs.push_back(at->q(sj));
  r.checks.push_back({"target_cme", verdict(all_zero(qs)), all_zero(qs) ? std::vector<std::string>{} : components(qs),
                      "Q_P(S_P)"});
  PolyForm ham = interior(at->q, at->omega) + de_rham(PolyForm::from_base(at->shifted, at->s));
  r.checks.push_back({"hamiltonian", verdict(ham.is_zero()), ham.is_zero() ? std::vector<std::string>{} : components(ham),
                      "i_Q omega + dS"});
  r.results["q"] = to_string(at->q);
  r.results["s"] = components(at->s);
  r.results["omega"] = components(at->omega);
  json kernel = json::array();
  for (const auto& v : at->omega_kernel) kernel.push_back(kernel_vector(v, *at->chart));
  r.results["omega_kernel"] = kernel;
}

void transgress_cmd(Report& r, const Options& o) {
  Model m = load(o);
  r.warnings = m.warnings;
  r.convention = to_string(o.convention);
  const auto& src = require_source(m, "transgress");
  std::optional<PolyForm> alpha = m.transgress;
  if (!alpha && m.graded) alpha = m.graded->omega;
  if (!alpha) throw UsageFailure("transgress needs a transgress or graded block");
  MappingChart mc(m.chart, std::make_shared<const SimplicialSource>(src));
  PolyForm a(mc.target_shifted(), alpha->components());
  PolyForm t = transgress(a, mc, o.convention);
  PolyForm gap = de_rham(t) - transgress(de_rham(a), mc, o.convention);
  r.checks.push_back({"chain_map", verdict(gap.is_zero()), gap.is_zero() ? std::vector<std::string>{} : components(gap),
                      "d T(alpha) - T(d alpha)"});
  bool law = true;
  for (std::size_t j = 0; j < a.order(); ++j)
    if (auto d = a[j].degree(); d && !t[j].is_zero())
      law = law && t[j].degree() == *d - static_cast<long>(src.dimension());
  r.checks.push_back({"degree_law", verdict(law), {}, "degree drops by " + std::to_string(src.dimension())});
  r.results["generators"] = mc.chart()->size();
  r.results["transgressed"] = components(t);
}

void cme(Report& r, const Options& o) {
  Model m = load(o);
  r.warnings = m.warnings;
  r.convention = to_string(o.convention);
  const auto& src = require_source(m, "cme");
  ChartPtr target;
  PolyForm omega = PolyForm::zero(m.shifted, 1), theta = omega;
  std::vector<GradedPoly> s;
  std::optional<Derivation> q;
  if (m.graded) {
    if (!m.graded->theta) throw UsageFailure("cme needs graded.theta, a primitive of the form");
    target = m.chart;
    omega = m.graded->omega;
    theta = *m.graded->theta;
    s = m.graded->hamiltonian;
    q = m.graded->q;
  } else {
    auto ps = require_poisson(m, "cme");
    AlgebroidTarget at = algebroid_target(ps);
    target = at.chart;
    omega = at.omega;
    theta = at.theta;
    s = at.s;
    q = at.q;
  }
  MappingChart mc(target, std::make_shared<const SimplicialSource>(src));
  PolyForm w(mc.target_shifted(), omega.components()), th(mc.target_shifted(), theta.components());
  std::optional<CmePieces> p;
  try {
    p = cme_pieces(mc, w, th, s, *q, o.convention);
  } catch (const Error& e) {
    r.checks.push_back({"preconditions", "fail", {}, e.what()});
    return;
  }
  r.checks.push_back({"preconditions", "pass", {}, "omega = d theta, i_Q omega = -dS, dT(theta) = T(omega)"});
  const bool closed = src.closed();
  auto piece = [&](const char* name, const BracketResult& b, bool asserted) {
    if (!b.defined) {
      r.checks.push_back({name, asserted ? "fail" : "reported", {}, b.note});
      return;
    }
    const bool zero = all_zero(b.value);
    std::string v = asserted ? verdict(zero) : "reported";
    r.checks.push_back({name, v, zero ? std::vector<std::string>{} : components(b.value), b.note});
  };
  piece("kinetic", p->hat_hat, closed);
  piece("target", p->check_check, false);
  piece("mixed", p->hat_check, false);
  r.results["closed_source"] = closed;
  r.results["generators"] = mc.chart()->size();
  r.results["s_hat"] = components(p->s_hat);
  r.results["s_check"] = components(p->s_check);
}

void action(Report& r, const Options& o) {
  Model m = load(o);
  r.warnings = m.warnings;
  auto s = require_poisson(m, "action");
  const auto& src = require_source(m, "action");
  if (!m.action) throw UsageFailure("action needs a fields block");
  std::vector<Rational> value = ppsm_action(m.action->fields, src, s);
  r.results["value"] = rationals(value);
  if (m.action->expected) {
    const bool ok = *m.action->expected == value;
    r.checks.push_back({"expected", verdict(ok), ok ? std::vector<std::string>{} : rationals(value), "action value"});
  } else {
    r.checks.push_back({"value", "reported", rationals(value), ""});
  }
}

void gauge(Report& r, const Options& o) {
  Model m = load(o);
  r.warnings = m.warnings;
  r.convention = to_string(o.convention);
  auto s = require_poisson(m, "gauge");
  const auto& src = require_source(m, "gauge");
  if (!m.gauge) throw UsageFailure("gauge needs a gauge block");
  GaugeResult g = gauge_residual(m.gauge->beta, s, src, {o.convention, m.gauge->jacobian_at_target});
  bool constant_anchor = true;
  for (const auto& a : s.anchor)
    for (const auto& c : a.components()) constant_anchor = constant_anchor && c.is_constant();
  const std::string residual = to_string(g.residual);
  std::vector<std::string> witness = g.residual.is_zero() ? std::vector<std::string>{} : components(g.residual);
  if (constant_anchor)
    r.checks.push_back({"residual", verdict(g.residual.is_zero()), witness, "i_xi Omega - dH, constant anchors"});
  else if (m.gauge->expected_residual)
    r.checks.push_back({"residual", verdict(residual == *m.gauge->expected_residual), witness,
                        "regression against gauge.expected_residual"});
  else
    r.checks.push_back({"residual", "reported", witness, "x-dependent anchors"});
  r.results["xi"] = to_string(g.xi);
  r.results["h"] = components(g.h);
  r.results["residual"] = residual;
}

void selftest_cmd(Report& r, const Options& o) {
  r.seed = o.seed;
  const std::size_t n = o.samples ? o.samples : 100;
  for (auto suite : {selftest::algebra, selftest::cartan, selftest::parser, selftest::transgression}) {
    auto res = suite(o.seed, n);
    std::vector<std::string> witness;
    if (res.witness) witness.push_back(*res.witness);
    r.checks.push_back({res.name, verdict(res.passed()), witness,
                        std::to_string(res.cases) + " cases, " + std::to_string(res.failures) + " failures"});
  }
}

// -------------------------------------------------------------- output

json to_json(const Report& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = r.command;
  j["input"] = r.input.empty() ? json(nullptr) : json(r.input);
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["convention"] = r.convention ? json(*r.convention) : json(nullptr);
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"verdict", c.verdict}, {"witness", c.witness}, {"details", c.details}});
  j["results"] = r.results;
  j["warnings"] = r.warnings;
  j["status"] = r.status();
  return j;
}

void print_text(const Report& r, std::ostream& out, double ms) {
  out << "polysym " << r.command;
  if (!r.input.empty()) out << "  input: " << r.input;
  if (r.seed) out << "  seed: " << *r.seed;
  if (r.convention) out << "  convention: " << *r.convention;
  out << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  std::size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.checks) {
    out << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << c.verdict;
    if (!c.witness.empty()) {
      out << "  witness (";
      for (std::size_t i = 0; i < c.witness.size(); ++i) out << (i ? ", " : "") << c.witness[i];
      out << ")";
    }
    if (!c.details.empty()) out << "  [" << c.details << "]";
    out << "\n";
  }
  for (const auto& [k, v] : r.results.items()) out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  out << "status: " << r.status() << "\n";
  out << "elapsed: " << std::fixed << std::setprecision(1) << ms << " ms\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for poly-Poisson structures, graded poly-symplectic forms and discrete AKSZ models",
               "polysym"};
  app.require_subcommand(1);
  Options opt;
  std::string format = "text", convention = "symmetrized";

  using Handler = void (*)(Report&, const Options&);
  const std::vector<std::tuple<const char*, const char*, Handler>> commands{
      {"check-poisson", "Check the poly-Poisson axioms of a model", check_poisson},
      {"check-symplectic", "Check a poly-symplectic or graded poly-symplectic form", check_symplectic},
      {"schwarz", "Bring an exact graded form to canonical coordinates", schwarz},
      {"algebroid-cme", "Build Q_P and S_P and check the target master equation", algebroid_cme},
      {"transgress", "Transgress a target form to the mapping chart of a source", transgress_cmd},
      {"cme", "Master-equation pieces on a mapping chart", cme},
      {"action", "Evaluate the discrete Poisson sigma model action", action},
      {"gauge", "Gauge transformation and moment-map residual on an interval", gauge},
      {"selftest", "Randomized algebra, Cartan, parser and transgression suites", selftest_cmd},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", opt.input, "Model file");
    sub->add_option("--format,-f", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", opt.seed, "Seed for randomized suites");
    sub->add_option("--samples", opt.samples, "Number of randomized cases");
    sub->add_option("--convention", convention, "Cup product convention")
        ->check(CLI::IsMember({"symmetrized", "alexander-whitney"}));
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "polysym: " << e.what() << "\n";
    return UsageError;
  }

  Report report;
  Handler handler = nullptr;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) {
      report.command = std::get<0>(commands[i]);
      handler = std::get<2>(commands[i]);
    }
  report.input = opt.input;
  opt.convention = parse_convention(convention);

  const auto start = std::chrono::steady_clock::now();
  try {
    handler(report, opt);
  } catch (const ModelError& e) {
    err << "polysym: schema error: " << e.what() << "\n";
    return UsageError;
  } catch (const UsageFailure& e) {
    err << "polysym: " << e.what() << "\n";
    return UsageError;
  } catch (const Error& e) {
    err << "polysym: " << e.what() << "\n";
    return UsageError;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (format == "json")
    out << to_json(report).dump(2) << "\n";
  else
    print_text(report, out, ms);
  return report.status() == "fail" ? VerdictFailed : Ok;
}

}  // namespace polysym::cli
