#include "polysym/poly_poisson.hpp"

#include <algorithm>
#include <sstream>

namespace polysym {

namespace {

std::string point_string(const std::vector<Rational>& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i].get_str();
  os << ")";
  return os.str();
}

std::vector<std::string> strings(const std::vector<GradedPoly>& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(to_string(p));
  return out;
}

std::vector<std::string> strings(const std::vector<RationalFunction>& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(to_string(p));
  return out;
}

std::vector<GradedPoly> base_components(const PolyForm& f) {
  std::vector<GradedPoly> out;
  for (const auto& c : f.components()) out.push_back(f.chart()->restrict_to_base(c));
  return out;
}

std::size_t point_rank(const std::vector<std::vector<GradedPoly>>& m, const std::vector<Rational>& point) {
  std::vector<std::optional<Rational>> v(point.begin(), point.end());
  QMatrix q(m.size(), m.empty() ? 0 : m.front().size());
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c) q(r, c) = evaluate(m[r][c], v).constant_term();
  return rank(q);
}

RMatrix lift(const std::vector<std::vector<GradedPoly>>& m) {
  RMatrix out;
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

// entries[a][j*n+i]: coefficient of dx_i in component j of eta_a.
std::vector<std::vector<GradedPoly>> frame_matrix(const PolyPoissonStructure& s) {
  std::vector<std::vector<GradedPoly>> m;
  for (const auto& eta : s.frame) m.push_back(section_coefficients(eta));
  return m;
}

std::vector<std::vector<GradedPoly>> transpose(const std::vector<std::vector<GradedPoly>>& m, const ChartPtr& c) {
  if (m.empty()) return {};
  std::vector<std::vector<GradedPoly>> t(m.front().size(), std::vector<GradedPoly>(m.size(), GradedPoly(c)));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t col = 0; col < m[r].size(); ++col) t[col][r] = m[r][col];
  return t;
}

Derivation combine(const PolyPoissonStructure& s, const std::vector<GradedPoly>& coefficients) {
  Derivation out = Derivation::zero(s.base(), 0);
  for (std::size_t a = 0; a < coefficients.size(); ++a)
    if (!coefficients[a].is_zero()) out = out + left_multiply(coefficients[a], s.anchor[a]);
  return out;
}

AxiomVerdict make_verdict(std::string name) {
  AxiomVerdict v;
  v.axiom = std::move(name);
  v.verdict = Verdict::Pass;
  return v;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

PolyPoissonStructure::PolyPoissonStructure(ShiftedChartPtr c, std::vector<PolyForm> f, std::vector<Derivation> p,
                                           std::optional<StructureFunctions> sf)
    : chart(std::move(c)), frame(std::move(f)), anchor(std::move(p)), structure_functions(std::move(sf)) {
  if (!chart->base()->all_degree_zero()) throw DegreeMismatch("poly-Poisson chart must have degree-0 coordinates");
  if (frame.empty()) throw Error("poly-Poisson structure needs a nonempty frame");
  if (frame.size() != anchor.size()) throw Error("one anchor image per frame element required");
  for (const auto& eta : frame) {
    if (eta.chart() != chart) throw ChartMismatch("frame element on a different chart");
    if (eta.order() != frame.front().order()) throw Error("frame elements have different orders");
    section_coefficients(eta);
  }
  for (const auto& x : anchor) {
    if (!same_chart(x.chart(), chart->base())) throw ChartMismatch("anchor not on the base chart");
    if (!x.is_zero() && x.degree() != 0) throw DegreeMismatch("anchor images must be degree-0 vector fields");
  }
  if (structure_functions) {
    const std::size_t k = frame.size();
    bool ok = structure_functions->size() == k;
    for (const auto& row : *structure_functions) {
      ok = ok && row.size() == k;
      for (const auto& col : row) ok = ok && col.size() == k;
    }
    if (!ok) throw Error("structure functions must form a k x k x k array");
  }
}

std::vector<GradedPoly> section_coefficients(const PolyForm& section) {
  const ShiftedChart& sc = *section.chart();
  auto fd = section.form_degree();
  if (fd && *fd != 1) throw DegreeMismatch("section must be a tuple of 1-forms");
  if (!fd && !section.is_zero()) throw DegreeMismatch("section must be a tuple of 1-forms");
  const std::size_t n = sc.base_size();
  std::vector<GradedPoly> out;
  out.reserve(section.order() * n);
  for (std::size_t j = 0; j < section.order(); ++j)
    for (std::size_t i = 0; i < n; ++i) out.push_back(sc.restrict_to_base(partial(section[j], sc.d(i))));
  return out;
}

PolyForm section_from_coefficients(const ShiftedChartPtr& chart, std::size_t order,
                                   const std::vector<GradedPoly>& coefficients) {
  const std::size_t n = chart->base_size();
  if (coefficients.size() != order * n) throw Error("section: wrong number of coefficients");
  std::vector<GradedPoly> comps(order, GradedPoly(chart->chart()));
  for (std::size_t j = 0; j < order; ++j)
    for (std::size_t i = 0; i < n; ++i)
      comps[j] += chart->embed(coefficients[j * n + i]) * GradedPoly::generator(chart->chart(), chart->d(i));
  return PolyForm(chart, std::move(comps));
}

bool AxiomReport::passed() const {
  auto vs = verdicts();
  return std::all_of(vs.begin(), vs.end(), [](const auto* v) { return v->verdict == Verdict::Pass; });
}

std::vector<const AxiomVerdict*> AxiomReport::verdicts() const { return {&frame, &skew, &annihilator, &closure, &jacobi}; }

AxiomReport check_axioms(const PolyPoissonStructure& s, const std::vector<std::vector<Rational>>& samples) {
  const std::size_t n = s.dimension();
  const std::size_t k = s.rank();
  const std::size_t r = s.order();
  const ChartPtr& base = s.base();
  for (const auto& p : samples)
    if (p.size() != n) throw Error("sample point has wrong dimension");

  AxiomReport rep;
  auto fm = frame_matrix(s);

  rep.frame = make_verdict("frame");
  if (rank(lift(fm), base) < k) {
    auto ker = nullspace(lift(transpose(fm, base)), base);
    throw FrameDependent("frame is linearly dependent; relation " + [&] {
      std::string out = "(";
      for (std::size_t a = 0; a < ker.front().size(); ++a) out += (a ? ", " : "") + to_string(ker.front()[a]);
      return out + ")";
    }());
  }
  for (const auto& p : samples)
    if (point_rank(fm, p) < k) {
      rep.frame.verdict = Verdict::Inconclusive;
      rep.frame.kind = "RankInconclusive";
      rep.frame.details = "frame drops rank at " + point_string(p);
      break;
    }

  rep.skew = make_verdict("skew");
  std::size_t skew_failures = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      auto res = base_components(interior(s.anchor[a], s.frame[b]) + interior(s.anchor[b], s.frame[a]));
      if (std::all_of(res.begin(), res.end(), [](const auto& p) { return p.is_zero(); })) continue;
      if (skew_failures++ == 0) {
        rep.skew.verdict = Verdict::Fail;
        rep.skew.indices = {a + 1, b + 1};
        rep.skew.residual = strings(res);
      }
    }
  if (skew_failures) rep.skew.details = std::to_string(skew_failures) + " failing pair(s)";

  rep.annihilator = make_verdict("annihilator");
  auto am = transpose(fm, base);  // rows (j, i), cols a
  // Rows (a, j), cols i.
  std::vector<std::vector<GradedPoly>> ann;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < r; ++j) ann.emplace_back(fm[a].begin() + static_cast<long>(j * n),
                                                         fm[a].begin() + static_cast<long>((j + 1) * n));
  if (rank(lift(ann), base) < n) {
    auto ker = nullspace(lift(ann), base);
    rep.annihilator.verdict = Verdict::Fail;
    rep.annihilator.kind = "NonzeroAnnihilator";
    rep.annihilator.residual = strings(ker.front());
    rep.annihilator.details = "vector field annihilating S";
  } else {
    for (const auto& p : samples)
      if (point_rank(ann, p) < n) {
        rep.annihilator.verdict = Verdict::Inconclusive;
        rep.annihilator.kind = "RankInconclusive";
        rep.annihilator.details = "annihilator condition degenerates at " + point_string(p);
        break;
      }
  }

  rep.closure = make_verdict("closure");
  rep.jacobi = make_verdict("jacobi");
  StructureFunctions f(k, std::vector<std::vector<RationalFunction>>(k, std::vector<RationalFunction>(k, RationalFunction(base))));
  RMatrix span = lift(am);
  for (std::size_t a = 0; a < k && rep.closure.verdict == Verdict::Pass; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      PolyForm br = lie_derivative(s.anchor[a], s.frame[b]) - interior(s.anchor[b], de_rham(s.frame[a]));
      auto coeffs = section_coefficients(br);
      RSolution sol = solve(span, std::vector<RationalFunction>(coeffs.begin(), coeffs.end()), base);
      if (!sol.consistent) {
        rep.closure.verdict = Verdict::Fail;
        rep.closure.kind = "NoExpansion";
        rep.closure.indices = {a + 1, b + 1};
        rep.closure.residual = {to_string(br)};
        rep.closure.details = "bracket of frame elements leaves the span of the frame; obstruction " +
                              to_string(sol.obstruction.front());
        break;
      }
      f[a][b] = std::move(sol.solution);
    }
  if (rep.closure.verdict != Verdict::Pass) {
    rep.jacobi.verdict = Verdict::Skipped;
    rep.jacobi.details = "closure failed";
    return rep;
  }

  for (const auto& byab : f)
    for (const auto& bya : byab)
      for (const auto& v : bya)
        if (!v.is_polynomial() &&
            std::none_of(rep.denominators.begin(), rep.denominators.end(),
                         [&](const auto& d) { return d.numerator() == v.denominator(); }))
          rep.denominators.emplace_back(v.denominator());

  if (s.structure_functions) {
    const auto& g = *s.structure_functions;
    for (std::size_t a = 0; a < k && rep.closure.verdict == Verdict::Pass; ++a)
      for (std::size_t b = 0; b < k && rep.closure.verdict == Verdict::Pass; ++b)
        for (std::size_t c = 0; c < k; ++c)
          if (g[a][b][c] != f[a][b][c]) {
            rep.closure.verdict = Verdict::Fail;
            rep.closure.kind = "StructureFunctionMismatch";
            rep.closure.indices = {a + 1, b + 1, c + 1};
            rep.closure.residual = {to_string(g[a][b][c]), to_string(f[a][b][c])};
            rep.closure.details = "supplied structure function differs from the bracket expansion (supplied, solved)";
            break;
          }
  }

  std::size_t jacobi_failures = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b)
      for (std::size_t c = b; c < k; ++c) {
        std::vector<RationalFunction> j(k, RationalFunction(base));
        const std::size_t t[3] = {a, b, c};
        for (int rot = 0; rot < 3; ++rot) {
          std::size_t x = t[rot], y = t[(rot + 1) % 3], z = t[(rot + 2) % 3];
          for (std::size_t e = 0; e < k; ++e) {
            j[e] = j[e] + apply(s.anchor[x], f[y][z][e]);
            for (std::size_t d = 0; d < k; ++d)
              if (!f[y][z][d].is_zero() && !f[x][d][e].is_zero()) j[e] = j[e] + f[y][z][d] * f[x][d][e];
          }
        }
        if (std::all_of(j.begin(), j.end(), [](const auto& v) { return v.is_zero(); })) continue;
        if (jacobi_failures++ == 0) {
          rep.jacobi.verdict = Verdict::Fail;
          rep.jacobi.indices = {a + 1, b + 1, c + 1};
          rep.jacobi.residual = strings(j);
        }
      }
  if (jacobi_failures) rep.jacobi.details = std::to_string(jacobi_failures) + " failing triple(s)";
  rep.structure_functions = std::move(f);
  return rep;
}

Expansion expand(const PolyPoissonStructure& s, const PolyForm& section) {
  if (section.chart() != s.chart) throw ChartMismatch("section on a different chart");
  if (section.order() != s.order()) throw Error("section has the wrong order");
  auto coeffs = section_coefficients(section);
  RSolution sol = solve(lift(transpose(frame_matrix(s), s.base())),
                        std::vector<RationalFunction>(coeffs.begin(), coeffs.end()), s.base());
  Expansion e;
  e.in_span = sol.consistent;
  if (e.in_span)
    e.coefficients = std::move(sol.solution);
  else
    e.obstruction = std::move(sol.obstruction);
  return e;
}

Derivation anchor_of(const PolyPoissonStructure& s, const PolyForm& section) {
  Expansion e = expand(s, section);
  if (!e.in_span) throw NoExpansion("section " + to_string(section) + " is not in S");
  std::vector<GradedPoly> g;
  for (const auto& c : e.coefficients) g.push_back(c.polynomial());
  return combine(s, g);
}

PolyForm bracket_sections(const PolyForm& eta, const PolyForm& gamma, const PolyPoissonStructure& s) {
  Derivation pe = anchor_of(s, eta);
  Derivation pg = anchor_of(s, gamma);
  return lie_derivative(pe, gamma) - interior(pg, de_rham(eta));
}

AdmissibleFunction admissible(const std::vector<GradedPoly>& alpha, const PolyPoissonStructure& s) {
  if (alpha.size() != s.order()) throw Error("admissible: function must have one component per form");
  AdmissibleFunction out;
  out.alpha = alpha;
  Expansion e = expand(s, de_rham(PolyForm::from_base(s.chart, alpha)));
  out.admissible = e.in_span;
  out.expansion = std::move(e.coefficients);
  out.obstruction = std::move(e.obstruction);
  return out;
}

std::vector<GradedPoly> admissible_bracket(const AdmissibleFunction& alpha, const AdmissibleFunction& beta,
                                           const PolyPoissonStructure& s) {
  if (!alpha.admissible || !beta.admissible) throw NoExpansion("admissible_bracket: argument not admissible");
  PolyForm dbeta = de_rham(PolyForm::from_base(s.chart, beta.alpha));
  std::vector<RationalFunction> acc(s.order(), RationalFunction(s.base()));
  for (std::size_t a = 0; a < s.rank(); ++a) {
    if (alpha.expansion[a].is_zero()) continue;
    auto c = base_components(interior(s.anchor[a], dbeta));
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = acc[j] + alpha.expansion[a] * RationalFunction(c[j]);
  }
  std::vector<GradedPoly> out;
  for (const auto& v : acc) {
    if (!v.is_polynomial()) throw Error("admissible bracket has a pole along " + to_string(v.denominator()));
    out.push_back(v.polynomial());
  }
  return out;
}

PolyPoissonStructure from_polysymplectic(const PolyForm& omega) {
  const auto& sc = omega.chart();
  const ChartPtr& base = sc->base();
  if (!base->all_degree_zero()) throw DegreeMismatch("from_polysymplectic needs degree-0 coordinates");
  auto fd = omega.form_degree();
  if (!fd || *fd != 2) throw DegreeMismatch("from_polysymplectic needs a tuple of 2-forms");
  PolyForm dw = de_rham(omega);
  for (std::size_t j = 0; j < omega.order(); ++j)
    if (!dw[j].is_zero()) throw NotClosed(j, "component " + std::to_string(j + 1) + " is not closed: d = " + to_string(dw[j]));
  std::vector<PolyForm> frame;
  std::vector<Derivation> anchor;
  for (std::size_t i = 0; i < base->size(); ++i) {
    anchor.push_back(Derivation::coordinate(base, i));
    frame.push_back(interior(anchor.back(), omega));
  }
  std::vector<std::vector<GradedPoly>> fm;
  for (const auto& eta : frame) fm.push_back(section_coefficients(eta));
  auto ker = nullspace(lift(transpose(fm, base)), base);
  if (!ker.empty()) {
    std::string w;
    for (std::size_t i = 0; i < ker.front().size(); ++i) {
      if (ker.front()[i].is_zero()) continue;
      if (!w.empty()) w += " + ";
      w += "(" + to_string(ker.front()[i]) + ")*d/d" + (*base)[i].name;
    }
    throw DegenerateKernel(ker.front(), "common kernel is nonzero, contains " + w);
  }
  return PolyPoissonStructure(sc, std::move(frame), std::move(anchor));
}

PolyPoissonStructure bivector_structure(const ChartPtr& chart, const std::vector<std::vector<GradedPoly>>& pi) {
  const std::size_t n = chart->size();
  if (pi.size() != n) throw Error("bivector: matrix has wrong size");
  auto sc = ShiftedChart::make(chart);
  std::vector<PolyForm> frame;
  std::vector<Derivation> anchor;
  for (std::size_t a = 0; a < n; ++a) {
    if (pi[a].size() != n) throw Error("bivector: matrix has wrong size");
    frame.emplace_back(sc, std::vector<GradedPoly>{GradedPoly::generator(sc->chart(), sc->d(a))});
    anchor.emplace_back(chart, pi[a], 0);
  }
  return PolyPoissonStructure(sc, std::move(frame), std::move(anchor));
}

}  // namespace polysym
