#include "polysym/aksz.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace polysym {

// ---------------------------------------------------------------- Berezin

GradedPoly berezin_integrate(const GradedPoly& f, const std::vector<std::size_t>& odd_vars) {
  const Chart& c = *f.chart();
  GradedPoly cur = f;
  for (std::size_t g : odd_vars) {
    if (g >= c.size() || !c[g].odd()) throw DegreeMismatch("berezin: can only integrate over odd generators");
    Terms out;
    for (const auto& [m, v] : cur.terms()) {
      if (!m[g]) continue;
      // Right derivative: move g past the odd generators after it.
      bool flip = false;
      for (std::size_t i = g + 1; i < m.size(); ++i)
        if (m[i] && c[i].odd()) flip = !flip;
      Monomial r = m;
      r[g] = 0;
      out.emplace(std::move(r), flip ? Rational(-v) : v);
    }
    cur = GradedPoly(f.chart(), std::move(out));
  }
  return cur;
}

GradedPoly berezin_integrate(const GradedPoly& f, const std::vector<std::string>& odd_vars) {
  std::vector<std::size_t> idx;
  for (const auto& n : odd_vars) idx.push_back(f.chart()->index_of(n));
  return berezin_integrate(f, idx);
}

// ---------------------------------------------------------------- sources

namespace {

int permutation_sign(std::vector<std::size_t> p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

}  // namespace

SimplicialSource::SimplicialSource(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges,
                                   std::vector<std::vector<std::size_t>> faces,
                                   std::vector<std::pair<std::size_t, int>> fundamental,
                                   std::vector<bool> boundary_vertices)
    : vertex_count_(vertices), edge_count_(edges.size()) {
  if (vertices == 0) throw Error("source needs at least one vertex");
  for (std::size_t v = 0; v < vertices; ++v) cells_.push_back({0, {v}, "v" + std::to_string(v)});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [s, t] = edges[e];
    if (s >= vertices || t >= vertices || s == t) throw Error("edge e" + std::to_string(e) + " is malformed");
    if (find({s, t})) throw Error("edge e" + std::to_string(e) + " is repeated");
    cells_.push_back({1, {s, t}, "e" + std::to_string(e)});
  }
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& v = faces[f];
    if (v.size() != 3) throw Error("face f" + std::to_string(f) + " must have three vertices");
    for (std::size_t i = 0; i < 3; ++i) {
      if (v[i] >= vertices) throw Error("face f" + std::to_string(f) + " uses an unknown vertex");
      for (std::size_t j = i + 1; j < 3; ++j)
        if (!find({v[i], v[j]})) throw Error("face f" + std::to_string(f) + " has a missing edge");
    }
    if (find(v)) throw Error("face f" + std::to_string(f) + " is repeated");
    cells_.push_back({2, v, "f" + std::to_string(f)});
  }
  if (fundamental.empty()) throw Error("source needs a fundamental chain");
  std::optional<std::size_t> dim;
  for (auto [idx, coeff] : fundamental) {
    std::size_t d = dim.value_or(faces.empty() ? (edges.empty() ? 0 : 1) : 2);
    std::size_t count = d == 0 ? vertices : d == 1 ? edges.size() : faces.size();
    if (idx >= count) throw Error("fundamental chain refers to a missing cell");
    dim = d;
    std::size_t cell = d == 0 ? vertex(idx) : d == 1 ? edge(idx) : face(idx);
    fundamental_.emplace_back(cell, coeff);
  }
  dimension_ = *dim;
  if (boundary_vertices.empty()) {
    boundary_.assign(vertices, false);
    if (dimension_ > 0) {
      std::map<std::size_t, int> bd;
      for (auto [c, m] : fundamental_)
        for (std::size_t l = 0; l < cells_.size(); ++l)
          if (cells_[l].dim + 1 == dimension_)
            if (int i = incidence(c, l)) bd[l] += i * m;
      for (auto [l, m] : bd)
        if (m != 0)
          for (auto v : cells_[l].vertices) boundary_[v] = true;
    }
  } else {
    if (boundary_vertices.size() != vertices) throw Error("boundary flags must cover every vertex");
    boundary_ = std::move(boundary_vertices);
  }
}

SimplicialSource SimplicialSource::point() { return SimplicialSource(1, {}, {}, {{0, 1}}); }

SimplicialSource SimplicialSource::circle(std::size_t n) {
  if (n < 2) throw Error("circle needs at least two vertices");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::pair<std::size_t, int>> mu;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(i, (i + 1) % n);
    mu.emplace_back(i, 1);
  }
  // n = 2 would repeat the edge; use opposite orientations of two edges instead.
  if (n == 2) throw Error("circle needs at least three vertices");
  return SimplicialSource(n, std::move(edges), {}, std::move(mu));
}

SimplicialSource SimplicialSource::interval(std::size_t n) {
  if (n < 1) throw Error("interval needs at least one edge");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::pair<std::size_t, int>> mu;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(i, i + 1);
    mu.emplace_back(i, 1);
  }
  return SimplicialSource(n + 1, std::move(edges), {}, std::move(mu));
}

SimplicialSource SimplicialSource::disk2() {
  return SimplicialSource(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}}, {{0, 1, 2}, {0, 2, 3}}, {{0, 1}, {1, 1}});
}

std::optional<std::pair<std::size_t, int>> SimplicialSource::find(const std::vector<std::size_t>& ordered) const {
  const std::size_t d = ordered.size() - 1;
  auto sorted = ordered;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c].dim != d) continue;
    auto cs = cells_[c].vertices;
    std::sort(cs.begin(), cs.end());
    if (cs != sorted) continue;
    // Positions of `ordered` within the stored orientation.
    std::vector<std::size_t> perm;
    for (auto v : ordered)
      perm.push_back(static_cast<std::size_t>(
          std::find(cells_[c].vertices.begin(), cells_[c].vertices.end(), v) - cells_[c].vertices.begin()));
    return std::make_pair(c, permutation_sign(perm));
  }
  return std::nullopt;
}

int SimplicialSource::incidence(std::size_t upper, std::size_t lower) const {
  const Cell& u = cells_[upper];
  const Cell& l = cells_[lower];
  if (u.dim != l.dim + 1) return 0;
  int total = 0;
  for (std::size_t drop = 0; drop <= u.dim; ++drop) {
    std::vector<std::size_t> facet;
    for (std::size_t i = 0; i <= u.dim; ++i)
      if (i != drop) facet.push_back(u.vertices[i]);
    auto hit = find(facet);
    if (!hit || hit->first != lower) continue;
    total += ((drop % 2) ? -1 : 1) * hit->second;
  }
  return total;
}

bool SimplicialSource::closed() const {
  if (dimension_ == 0) return true;
  for (std::size_t l = 0; l < cells_.size(); ++l) {
    if (cells_[l].dim + 1 != dimension_) continue;
    int m = 0;
    for (auto [c, mu] : fundamental_) m += mu * incidence(c, l);
    if (m != 0) return false;
  }
  return true;
}

CupConvention parse_convention(const std::string& name) {
  if (name == "symmetrized") return CupConvention::Symmetrized;
  if (name == "alexander-whitney") return CupConvention::AlexanderWhitney;
  throw Error("unknown cup convention '" + name + "' (expected symmetrized or alexander-whitney)");
}

std::string to_string(CupConvention c) {
  return c == CupConvention::Symmetrized ? "symmetrized" : "alexander-whitney";
}

// ---------------------------------------------------------------- mapping chart

MappingChart::MappingChart(ChartPtr target, SourcePtr source)
    : target_(std::move(target)), target_shifted_(ShiftedChart::make(target_)), source_(std::move(source)) {
  std::vector<Generator> gens;
  for (const auto& g : target_->generators())
    for (const auto& c : source_->cells())
      gens.emplace_back(g.name + "." + c.name, g.degree - static_cast<int>(c.dim),
                        g.internal_degree - static_cast<int>(c.dim));
  shifted_ = ShiftedChart::make(Chart::make(std::move(gens)));
}

namespace {

// All compositions of `total` into `parts` nonnegative pieces.
void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t d = 0; d <= total; ++d) {
    cur.push_back(d);
    compositions(total - d, parts, cur, out);
    cur.pop_back();
  }
}

}  // namespace

GradedPoly superfield_component(const GradedPoly& f, std::size_t cell, const MappingChart& mc, CupConvention conv) {
  const ShiftedChart& ts = *mc.target_shifted();
  const Chart& tchart = *ts.chart();
  if (!same_chart(f.chart(), ts.chart())) throw ChartMismatch("superfield: function not on the target's shifted chart");
  const SimplicialSource& src = mc.source();
  const Cell& target_cell = src.cells().at(cell);
  const std::size_t dim = target_cell.dim;
  const ShiftedChart& fs = *mc.shifted();
  const ChartPtr& fchart = fs.chart();
  const std::size_t nt = ts.base_size();

  auto field_index = [&](std::size_t w, std::size_t c) {
    return w < nt ? mc.field(w, c) : fs.d(mc.field(w - nt, c));
  };

  GradedPoly out(fchart);
  for (const auto& [m, coeff] : f.terms()) {
    std::vector<std::size_t> factors;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) factors.push_back(i);
    const std::size_t k = factors.size();
    if (k == 0) {
      if (dim == 0) out += GradedPoly::constant(fchart, coeff);
      continue;
    }
    std::vector<std::vector<std::size_t>> arrangements;
    if (conv == CupConvention::Symmetrized) {
      std::vector<std::size_t> w = factors;
      do arrangements.push_back(w);
      while (std::next_permutation(w.begin(), w.end()));
    } else {
      arrangements.push_back(factors);
    }
    std::vector<std::vector<std::size_t>> dims;
    std::vector<std::size_t> scratch;
    compositions(dim, k, scratch, dims);
    const Rational weight = coeff / Rational(static_cast<long>(arrangements.size()));

    for (const auto& w : arrangements) {
      // m = s * (w_1 ... w_k) with s = +-1.
      Rational s = normalize(ts.chart(), 1, w).coefficient(m);
      for (const auto& d : dims) {
        int sign = 1;
        std::size_t offset = 0;
        std::vector<std::size_t> word;
        bool present = true;
        for (std::size_t i = 0; i < k && present; ++i) {
          std::vector<std::size_t> face(target_cell.vertices.begin() + static_cast<long>(offset),
                                        target_cell.vertices.begin() + static_cast<long>(offset + d[i] + 1));
          auto hit = src.find(face);
          if (!hit) {
            present = false;
            break;
          }
          sign *= hit->second;
          word.push_back(field_index(w[i], hit->first));
          offset += d[i];
        }
        if (!present) continue;
        // Move every chi to the right of the later field coefficients.
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j)
            if (is_odd(static_cast<long>(d[i])) && is_odd(tchart[w[j]].degree - static_cast<long>(d[j]))) sign = -sign;
        out += normalize(fchart, weight * s * sign, word);
      }
    }
  }
  return out;
}

PolyForm transgress(const PolyForm& alpha, const MappingChart& mc, CupConvention conv) {
  std::vector<GradedPoly> comps;
  for (const auto& a : alpha.components()) {
    GradedPoly total(mc.shifted()->chart());
    for (auto [cell, mu] : mc.source().fundamental())
      total += superfield_component(a, cell, mc, conv) * Rational(mu);
    comps.push_back(std::move(total));
  }
  return PolyForm(mc.shifted(), std::move(comps));
}

GradedPoly transgress_function(const GradedPoly& f, const MappingChart& mc, CupConvention conv) {
  PolyForm t = transgress(PolyForm(mc.target_shifted(), {mc.target_shifted()->embed(f)}), mc, conv);
  return mc.shifted()->restrict_to_base(t[0]);
}

Derivation lift_source(const MappingChart& mc) {
  const ChartPtr& fc = mc.chart();
  const SimplicialSource& src = mc.source();
  const Chart& tc = *mc.target();
  std::vector<GradedPoly> comps(fc->size(), GradedPoly(fc));
  for (std::size_t g = 0; g < tc.size(); ++g) {
    const Rational sign = is_odd(tc[g].degree) ? -1 : 1;
    for (std::size_t c = 0; c < src.cells().size(); ++c) {
      const Cell& cell = src.cells()[c];
      if (cell.dim == 0) continue;
      GradedPoly v(fc);
      for (std::size_t l = 0; l < src.cells().size(); ++l)
        if (int i = src.incidence(c, l)) v += GradedPoly::generator(fc, mc.field(g, l)) * Rational(i);
      // (-1)^{|g_l|} with |g_l| = |g| - dim + 1.
      comps[mc.field(g, c)] = cell.dim % 2 == 1 ? v * sign : v * -sign;
    }
  }
  return Derivation(fc, std::move(comps), 1);
}

Derivation lift_target(const Derivation& q_tgt, const MappingChart& mc, CupConvention conv) {
  if (!same_chart(q_tgt.chart(), mc.target())) throw ChartMismatch("lift_target: field not on the target chart");
  const ChartPtr& fc = mc.chart();
  const ShiftedChart& ts = *mc.target_shifted();
  std::vector<GradedPoly> comps(fc->size(), GradedPoly(fc));
  for (std::size_t g = 0; g < mc.target()->size(); ++g) {
    GradedPoly img = ts.embed(q_tgt.component(g));
    if (img.is_zero()) continue;
    for (std::size_t c = 0; c < mc.source().cells().size(); ++c)
      comps[mc.field(g, c)] = mc.shifted()->restrict_to_base(superfield_component(img, c, mc, conv));
  }
  std::optional<long> deg = q_tgt.degree();
  if (deg) return Derivation(fc, std::move(comps), deg);
  return Derivation(fc, std::move(comps));
}

// ---------------------------------------------------------------- algebroid

namespace {

GradedPoly move_to(const GradedPoly& f, const ChartPtr& target, const std::vector<GradedPoly>& images) {
  return substitute(f, target, images);
}

std::string fresh_prefix(const Chart& base) {
  std::string p = "u";
  for (;;) {
    bool clash = false;
    for (const auto& g : base.generators())
      if (g.name.rfind(p, 0) == 0) clash = true;
    if (!clash) return p;
    p += "_";
  }
}

}  // namespace

AlgebroidTarget algebroid_target(const PolyPoissonStructure& s) {
  const std::size_t n = s.dimension(), k = s.rank(), r = s.order();
  const ChartPtr& base = s.base();
  StructureFunctions f;
  if (s.structure_functions) {
    f = *s.structure_functions;
  } else {
    AxiomReport rep = check_axioms(s);
    if (!rep.structure_functions)
      throw NoExpansion("algebroid target: bracket of frame elements does not close (" + rep.closure.details + ")");
    f = *rep.structure_functions;
  }
  for (const auto& ab : f)
    for (const auto& a : ab)
      for (const auto& v : a)
        if (!v.is_polynomial())
          throw Error("algebroid target: structure function " + to_string(v) + " has a pole; unsupported");

  std::vector<Generator> gens = base->generators();
  const std::string prefix = fresh_prefix(*base);
  for (std::size_t a = 0; a < k; ++a) gens.emplace_back(prefix + std::to_string(a + 1), 1);
  ChartPtr chart = Chart::make(std::move(gens));
  std::vector<GradedPoly> lift_base;
  for (std::size_t i = 0; i < n; ++i) lift_base.push_back(GradedPoly::generator(chart, i));
  auto lift = [&](const GradedPoly& p) { return move_to(p, chart, lift_base); };
  auto u = [&](std::size_t a) { return GradedPoly::generator(chart, n + a); };

  std::vector<GradedPoly> comps(n + k, GradedPoly(chart));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a) comps[i] += lift(s.anchor[a].component(i)) * u(a);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (!f[a][b][c].is_zero()) comps[n + c] -= lift(f[a][b][c].polynomial()) * u(a) * u(b) * Rational(1, 2);
  Derivation q(chart, std::move(comps), 1);

  std::vector<GradedPoly> sp(r, GradedPoly(chart));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      PolyForm pairing = interior(s.anchor[a], s.frame[b]);
      for (std::size_t j = 0; j < r; ++j)
        sp[j] += lift(s.chart->restrict_to_base(pairing[j])) * u(a) * u(b) * Rational(1, 2);
    }

  // Canonical form on the r-fold shifted cotangent chart, pulled back along
  // p^(j)_i = sum_a u^a eta^(j)_{a,i}.
  std::vector<Generator> cg = base->generators();
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) cg.emplace_back("p" + std::to_string(j + 1) + "_" + (*base)[i].name, 1);
  auto csc = ShiftedChart::make(Chart::make(std::move(cg)));
  std::vector<GradedPoly> omega_can(r, GradedPoly(csc->chart())), theta_can(r, GradedPoly(csc->chart()));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      GradedPoly dp = GradedPoly::generator(csc->chart(), csc->d(n + j * n + i));
      omega_can[j] += GradedPoly::generator(csc->chart(), csc->d(i)) * dp;
      theta_can[j] += GradedPoly::generator(csc->chart(), i) * dp;
    }
  std::vector<GradedPoly> tau = lift_base;
  std::vector<std::vector<GradedPoly>> coeffs;
  for (const auto& eta : s.frame) coeffs.push_back(section_coefficients(eta));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      GradedPoly p(chart);
      for (std::size_t a = 0; a < k; ++a) p += u(a) * lift(coeffs[a][j * n + i]);
      tau.push_back(p);
    }
  auto sc = ShiftedChart::make(chart);
  PolyForm omega = pullback(PolyForm(csc, omega_can), sc, tau);
  PolyForm theta = pullback(PolyForm(csc, theta_can), sc, tau);
  auto kernel = contraction_kernel(omega);
  return AlgebroidTarget{chart, sc, n, k, std::move(f), std::move(q), std::move(sp), std::move(omega),
                         std::move(theta), std::move(kernel)};
}

// ---------------------------------------------------------------- CME

BracketResult hamiltonian_bracket(const PolyForm& omega, const std::vector<GradedPoly>& f,
                                  const std::vector<GradedPoly>& g) {
  BracketResult out;
  HamiltonianSolution sol;
  try {
    sol = hamiltonian_vector_field(omega, f);
  } catch (const Error& e) {
    out.note = e.what();
    return out;
  }
  if (!sol.solvable) {
    out.note = "no Hamiltonian vector field; obstruction " + to_string(sol.obstruction.front());
    return out;
  }
  out.defined = true;
  out.unique = sol.unique;
  if (!sol.unique) out.note = "Hamiltonian vector field defined up to the kernel of the form";
  for (const auto& gj : g) out.value.push_back((*sol.field)(gj));
  return out;
}

CmePieces cme_pieces(const MappingChart& mc, const PolyForm& omega_tgt, const PolyForm& theta_tgt,
                     const std::vector<GradedPoly>& s_tgt, const Derivation& q_tgt, CupConvention conv) {
  const ShiftedChartPtr& ts = mc.target_shifted();
  if (!same_chart(omega_tgt.chart()->chart(), ts->chart()) || !same_chart(theta_tgt.chart()->chart(), ts->chart()))
    throw ChartMismatch("cme: forms not on the target chart");
  PolyForm omega_t(ts, omega_tgt.components());
  PolyForm theta_t(ts, theta_tgt.components());
  if (!(de_rham(theta_t) == omega_t)) throw Error("cme: omega is not d(theta)");
  if (s_tgt.size() != omega_t.order()) throw Error("cme: one Hamiltonian component per form component required");
  PolyForm ds = de_rham(PolyForm::from_base(ts, s_tgt));
  if (!(interior(q_tgt, omega_t) == -ds)) throw Error("cme: S is not a Hamiltonian for Q (i_Q omega != -dS)");

  PolyForm theta = transgress(theta_t, mc, conv);
  PolyForm omega = transgress(omega_t, mc, conv);
  if (!(de_rham(theta) == omega)) throw Error("cme: transgression is not a chain map here");

  Derivation q_hat = lift_source(mc);
  Derivation q_check = lift_target(q_tgt, mc, conv);
  PolyForm ih = -interior(q_hat, theta);
  std::vector<GradedPoly> s_hat, s_check, s_total;
  for (std::size_t j = 0; j < omega.order(); ++j) {
    s_hat.push_back(mc.shifted()->restrict_to_base(ih[j]));
    s_check.push_back(transgress_function(s_tgt[j], mc, conv));
    s_total.push_back(s_hat.back() + s_check.back());
  }
  BracketResult hh = hamiltonian_bracket(omega, s_hat, s_hat);
  BracketResult cc = hamiltonian_bracket(omega, s_check, s_check);
  BracketResult hc = hamiltonian_bracket(omega, s_hat, s_check);
  return CmePieces{std::move(theta), std::move(omega), std::move(q_hat), std::move(q_check), std::move(s_hat),
                   std::move(s_check), std::move(s_total), std::move(hh), std::move(cc), std::move(hc)};
}

// ---------------------------------------------------------------- PPSM action

namespace {

Rational at(const GradedPoly& p, const std::vector<Rational>& x) {
  std::vector<std::optional<Rational>> v(x.begin(), x.end());
  GradedPoly e = evaluate(p, v);
  if (!e.is_constant()) throw Error("evaluation left free generators");
  return e.constant_term();
}

}  // namespace

std::vector<Rational> ppsm_action(const FieldAssignment& fields, const SimplicialSource& src,
                                  const PolyPoissonStructure& s) {
  const std::size_t n = s.dimension(), k = s.rank(), r = s.order();
  if (fields.x.size() != src.vertex_count()) throw Error("action: one X value per vertex required");
  if (fields.eta.size() != src.edge_count()) throw Error("action: one eta value per edge required");
  for (const auto& x : fields.x)
    if (x.size() != n) throw Error("action: X value has the wrong dimension");
  for (const auto& e : fields.eta)
    if (e.size() != k) throw Error("action: eta value has the wrong number of frame coefficients");

  std::vector<std::vector<GradedPoly>> coeffs;
  for (const auto& eta : s.frame) coeffs.push_back(section_coefficients(eta));
  // pairing[a][b][j] = (i_{P(eta_a)} eta_b)_j
  std::vector<std::vector<std::vector<GradedPoly>>> pairing(k, std::vector<std::vector<GradedPoly>>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      PolyForm p = interior(s.anchor[a], s.frame[b]);
      for (std::size_t j = 0; j < r; ++j) pairing[a][b].push_back(s.chart->restrict_to_base(p[j]));
    }

  std::vector<Rational> value(r);
  for (std::size_t e = 0; e < src.edge_count(); ++e) {
    const Cell& c = src.cells()[src.edge(e)];
    const auto& xs = fields.x[c.vertices[0]];
    const auto& xt = fields.x[c.vertices[1]];
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t a = 0; a < k; ++a) {
        if (fields.eta[e][a] == 0) continue;
        for (std::size_t i = 0; i < n; ++i) value[j] += fields.eta[e][a] * at(coeffs[a][j * n + i], xs) * (xt[i] - xs[i]);
      }
  }
  for (auto [cell, mu] : src.fundamental()) {
    const Cell& f = src.cells()[cell];
    if (f.dim != 2) continue;
    auto e01 = *src.find({f.vertices[0], f.vertices[1]});
    auto e12 = *src.find({f.vertices[1], f.vertices[2]});
    const auto& eta01 = fields.eta[e01.first - src.vertex_count()];
    const auto& eta12 = fields.eta[e12.first - src.vertex_count()];
    const auto& x0 = fields.x[f.vertices[0]];
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          Rational w = eta01[a] * eta12[b] * e01.second * e12.second;
          if (w == 0) continue;
          value[j] += Rational(mu) / 2 * w * at(pairing[a][b][j], x0);
        }
  }
  for (auto& v : value) v.canonicalize();
  return value;
}

// ---------------------------------------------------------------- gauge

GaugeResult gauge_residual(const std::vector<std::vector<Rational>>& beta, const PolyPoissonStructure& s,
                           const SimplicialSource& interval, const GaugeOptions& options) {
  const std::size_t n = s.dimension(), k = s.rank(), r = s.order();
  if (interval.dimension() != 1) throw Error("gauge: source must be one-dimensional");
  if (beta.size() != interval.vertex_count()) throw Error("gauge: one beta value per vertex required");
  for (std::size_t v = 0; v < beta.size(); ++v) {
    if (beta[v].size() != k) throw Error("gauge: beta value has the wrong number of frame coefficients");
    if (interval.is_boundary_vertex(v))
      for (const auto& b : beta[v])
        if (b != 0) throw Error("gauge: beta must vanish on boundary vertex v" + std::to_string(v));
  }
  std::vector<std::vector<GradedPoly>> coeffs;
  for (const auto& eta : s.frame) coeffs.push_back(section_coefficients(eta));
  for (const auto& row : coeffs)
    for (const auto& c : row)
      if (!c.is_constant()) throw Error("gauge: the frame must have constant coefficients");

  AlgebroidTarget at = algebroid_target(s);
  auto src = std::make_shared<const SimplicialSource>(interval);
  MappingChart mc(at.chart, src);
  PolyForm full = transgress(at.omega, mc, options.convention);

  // Degree-0 fields: x on vertices, u on edges.
  const ChartPtr& fc = mc.chart();
  std::vector<Generator> keep;
  std::vector<std::optional<std::size_t>> slot(fc->size());
  for (std::size_t g = 0; g < fc->size(); ++g)
    if ((*fc)[g].degree == 0) {
      slot[g] = keep.size();
      keep.push_back((*fc)[g]);
    }
  auto sc = ShiftedChart::make(Chart::make(std::move(keep)));
  const ChartPtr& small = sc->base();
  std::vector<GradedPoly> images(mc.shifted()->chart()->size(), GradedPoly(sc->chart()));
  for (std::size_t g = 0; g < fc->size(); ++g)
    if (slot[g]) {
      images[g] = GradedPoly::generator(sc->chart(), *slot[g]);
      images[mc.shifted()->d(g)] = GradedPoly::generator(sc->chart(), sc->d(*slot[g]));
    }
  std::vector<GradedPoly> omega_comps;
  for (const auto& c : full.components()) omega_comps.push_back(substitute(c, sc->chart(), images));
  PolyForm omega(sc, std::move(omega_comps));

  auto X = [&](std::size_t v, std::size_t i) { return GradedPoly::generator(small, *slot[mc.field(i, src->vertex(v))]); };
  auto eta = [&](std::size_t e, std::size_t a) {
    return GradedPoly::generator(small, *slot[mc.field(n + a, src->edge(e))]);
  };
  auto at_vertex = [&](const GradedPoly& p, std::size_t v) {
    std::vector<GradedPoly> img;
    for (std::size_t i = 0; i < n; ++i) img.push_back(X(v, i));
    return substitute(p, small, img);
  };
  // (P_{X_v} beta_v)^i
  auto p_beta = [&](std::size_t v, std::size_t i) {
    GradedPoly out(small);
    for (std::size_t b = 0; b < k; ++b)
      if (beta[v][b] != 0) out += at_vertex(s.anchor[b].component(i), v) * beta[v][b];
    return out;
  };
  auto frame_coeff = [&](std::size_t a, std::size_t j, std::size_t i) { return coeffs[a][j * n + i].constant_term(); };

  std::vector<GradedPoly> xi(small->size(), GradedPoly(small));
  for (std::size_t v = 0; v < src->vertex_count(); ++v)
    for (std::size_t i = 0; i < n; ++i) xi[*slot[mc.field(i, src->vertex(v))]] = -p_beta(v, i);
  for (std::size_t e = 0; e < src->edge_count(); ++e) {
    const Cell& c = src->cells()[src->edge(e)];
    const std::size_t s0 = c.vertices[0], t0 = c.vertices[1];
    const std::size_t w = options.jacobian_at_target ? t0 : s0;
    for (std::size_t cc = 0; cc < k; ++cc) {
      GradedPoly v = GradedPoly::constant(small, beta[t0][cc] - beta[s0][cc]);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          if (beta[w][b] != 0 && !at.f[a][b][cc].is_zero())
            v += at_vertex(at.f[a][b][cc].polynomial(), w) * eta(e, a) * beta[w][b];
      xi[*slot[mc.field(n + cc, src->edge(e))]] = v;
    }
  }
  Derivation xi_field(small, std::move(xi), 0);

  std::vector<GradedPoly> h(r, GradedPoly(small));
  const bool sym = options.convention == CupConvention::Symmetrized;
  for (std::size_t e = 0; e < src->edge_count(); ++e) {
    const Cell& c = src->cells()[src->edge(e)];
    const std::size_t s0 = c.vertices[0], t0 = c.vertices[1];
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        GradedPoly dx = X(t0, i) - X(s0, i);
        for (std::size_t b = 0; b < k; ++b) {
          Rational kin = sym ? (beta[s0][b] + beta[t0][b]) / 2 : beta[t0][b];
          if (kin != 0) h[j] += dx * (kin * frame_coeff(b, j, i));
        }
        GradedPoly pb = sym ? (p_beta(s0, i) + p_beta(t0, i)) * Rational(1, 2) : p_beta(s0, i);
        for (std::size_t a = 0; a < k; ++a)
          if (frame_coeff(a, j, i) != 0) h[j] -= eta(e, a) * pb * frame_coeff(a, j, i);
      }
  }
  PolyForm residual = interior(xi_field, omega) - de_rham(PolyForm::from_base(sc, h));
  return GaugeResult{sc, std::move(omega), std::move(xi_field), std::move(h), std::move(residual)};
}

}  // namespace polysym
