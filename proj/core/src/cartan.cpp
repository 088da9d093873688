#include "polysym/cartan.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace polysym {

namespace {

ChartPtr build_shifted(const Chart& base) {
  std::vector<Generator> gens = base.generators();
  for (const auto& g : base.generators())
    gens.emplace_back("d" + g.name, g.degree + 1, g.internal_degree);
  return Chart::make(std::move(gens));
}

}  // namespace

ShiftedChart::ShiftedChart(ChartPtr base) : base_(std::move(base)), chart_(build_shifted(*base_)) {}

ShiftedChartPtr ShiftedChart::make(ChartPtr base) { return std::make_shared<const ShiftedChart>(std::move(base)); }

GradedPoly ShiftedChart::embed(const GradedPoly& base_function) const {
  if (!same_chart(base_function.chart(), base_)) throw ChartMismatch("embed: function not on the base chart");
  Terms t;
  for (const auto& [m, c] : base_function.terms()) {
    Monomial e = m;
    e.resize(chart_->size(), 0);
    t.emplace(std::move(e), c);
  }
  return GradedPoly(chart_, std::move(t));
}

GradedPoly ShiftedChart::restrict_to_base(const GradedPoly& f) const {
  if (!same_chart(f.chart(), chart_)) throw ChartMismatch("restrict: function not on the shifted chart");
  Terms t;
  const std::size_t n = base_->size();
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = n; i < m.size(); ++i)
      if (m[i]) throw Error("restrict: expression involves differentials");
    t.emplace(Monomial(m.begin(), m.begin() + static_cast<long>(n)), c);
  }
  return GradedPoly(base_, std::move(t));
}

std::uint32_t ShiftedChart::form_degree(const Monomial& m) const {
  std::uint32_t k = 0;
  for (std::size_t i = base_->size(); i < m.size(); ++i) k += m[i];
  return k;
}

// ---------------------------------------------------------------- PolyForm

PolyForm::PolyForm(ShiftedChartPtr chart, std::vector<GradedPoly> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (!chart_) throw Error("null shifted chart");
  if (components_.empty()) throw Error("poly-form needs at least one component");
  for (const auto& c : components_)
    if (!same_chart(c.chart(), chart_->chart())) throw ChartMismatch("poly-form component on wrong chart");
}

PolyForm PolyForm::zero(ShiftedChartPtr chart, std::size_t order) {
  std::vector<GradedPoly> comps(order, GradedPoly(chart->chart()));
  return PolyForm(std::move(chart), std::move(comps));
}

PolyForm PolyForm::from_base(ShiftedChartPtr chart, const std::vector<GradedPoly>& functions) {
  std::vector<GradedPoly> comps;
  comps.reserve(functions.size());
  for (const auto& f : functions) comps.push_back(chart->embed(f));
  return PolyForm(std::move(chart), std::move(comps));
}

bool PolyForm::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

std::optional<std::uint32_t> PolyForm::form_degree() const {
  std::optional<std::uint32_t> k;
  for (const auto& c : components_)
    for (const auto& [m, v] : c.terms()) {
      auto km = chart_->form_degree(m);
      if (k && *k != km) return std::nullopt;
      k = km;
    }
  return k;
}

PolyForm PolyForm::operator+(const PolyForm& other) const {
  if (order() != other.order()) throw Error("poly-form sum: orders differ");
  std::vector<GradedPoly> c = components_;
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += other.components_[j];
  return PolyForm(chart_, std::move(c));
}

PolyForm PolyForm::operator-(const PolyForm& other) const { return *this + (-other); }

PolyForm PolyForm::operator-() const { return *this * Rational(-1); }

PolyForm PolyForm::operator*(const Rational& s) const {
  std::vector<GradedPoly> c = components_;
  for (auto& p : c) p *= s;
  return PolyForm(chart_, std::move(c));
}

bool PolyForm::operator==(const PolyForm& other) const {
  return same_chart(chart_->chart(), other.chart_->chart()) && components_ == other.components_;
}

std::string to_string(const PolyForm& form) {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < form.order(); ++j) {
    if (j) os << ", ";
    os << to_string(form[j]);
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- operators

Derivation de_rham_derivation(const ShiftedChart& chart) {
  const auto& sc = chart.chart();
  std::vector<GradedPoly> comps(sc->size(), GradedPoly(sc));
  for (std::size_t i = 0; i < chart.base_size(); ++i) comps[i] = GradedPoly::generator(sc, chart.d(i));
  return Derivation(sc, std::move(comps), 1);
}

Derivation interior_derivation(const ShiftedChart& chart, const Derivation& x) {
  if (!same_chart(x.chart(), chart.base())) throw ChartMismatch("interior: field not on the base chart");
  const auto& sc = chart.chart();
  std::vector<GradedPoly> comps(sc->size(), GradedPoly(sc));
  for (std::size_t i = 0; i < chart.base_size(); ++i) comps[chart.d(i)] = chart.embed(x.component(i));
  std::optional<long> declared;
  if (x.degree()) declared = *x.degree() - 1;
  if (!declared) return Derivation(sc, std::move(comps));
  return Derivation(sc, std::move(comps), declared);
}

Derivation lie_derivation(const ShiftedChart& chart, const Derivation& x) {
  return commutator(interior_derivation(chart, x), de_rham_derivation(chart));
}

PolyForm apply(const Derivation& on_shifted, const PolyForm& form) {
  if (!same_chart(on_shifted.chart(), form.chart()->chart())) throw ChartMismatch();
  std::vector<GradedPoly> comps;
  comps.reserve(form.order());
  for (const auto& c : form.components()) comps.push_back(on_shifted(c));
  return PolyForm(form.chart(), std::move(comps));
}

PolyForm de_rham(const PolyForm& form) { return apply(de_rham_derivation(*form.chart()), form); }

PolyForm interior(const Derivation& x, const PolyForm& form) {
  return apply(interior_derivation(*form.chart(), x), form);
}

PolyForm lie_derivative(const Derivation& x, const PolyForm& form) {
  return apply(lie_derivation(*form.chart(), x), form);
}

Derivation euler(const ChartPtr& chart) {
  std::vector<GradedPoly> comps;
  comps.reserve(chart->size());
  for (std::size_t i = 0; i < chart->size(); ++i)
    comps.push_back(GradedPoly::generator(chart, i) * Rational((*chart)[i].internal_degree));
  return Derivation(chart, std::move(comps), 0);
}

CohomologicalReport is_cohomological(const Derivation& q) {
  Derivation sq = commutator(q, q);
  CohomologicalReport r{false, q.degree() && *q.degree() == 1, q.degree(), sq};
  r.cohomological = r.degree_one && sq.is_zero();
  return r;
}

PolyForm pullback(const PolyForm& form, const ShiftedChartPtr& target, const std::vector<GradedPoly>& images) {
  const ShiftedChart& src = *form.chart();
  if (images.size() != src.base_size()) throw Error("pullback: one image per base generator required");
  Derivation d = de_rham_derivation(*target);
  std::vector<GradedPoly> full;
  full.reserve(src.chart()->size());
  for (const auto& img : images) full.push_back(target->embed(img));
  for (std::size_t i = 0; i < src.base_size(); ++i) full.push_back(d(full[i]));
  std::vector<GradedPoly> comps;
  comps.reserve(form.order());
  for (const auto& c : form.components()) comps.push_back(substitute(c, target->chart(), full));
  return PolyForm(target, std::move(comps));
}

bool constant_two_form(const PolyForm& omega) {
  const ShiftedChart& sc = *omega.chart();
  for (const auto& c : omega.components())
    for (const auto& [m, v] : c.terms()) {
      for (std::size_t i = 0; i < sc.base_size(); ++i)
        if (m[i]) return false;
      if (sc.form_degree(m) != 2) return false;
    }
  return true;
}

HamiltonianSolution hamiltonian_vector_field(const PolyForm& omega, const std::vector<GradedPoly>& functions) {
  const ShiftedChart& sc = *omega.chart();
  const Chart& base = *sc.base();
  const std::size_t n = base.size();
  const std::size_t r = omega.order();
  if (functions.size() != r) throw Error("hamiltonian: one function per form component required");
  if (!constant_two_form(omega)) throw Error("hamiltonian: form must be a constant-coefficient 2-form");

  std::optional<long> form_deg;
  for (const auto& c : omega.components()) {
    if (c.is_zero()) continue;
    auto d = c.degree();
    if (!d || (form_deg && *form_deg != *d)) throw DegreeMismatch("hamiltonian: form components not homogeneous");
    form_deg = d;
  }
  std::optional<long> f_deg;
  for (const auto& f : functions) {
    if (!same_chart(f.chart(), sc.base())) throw ChartMismatch("hamiltonian: function not on the base chart");
    if (f.is_zero()) continue;
    auto d = f.degree();
    if (!d || (f_deg && *f_deg != *d)) throw DegreeMismatch("hamiltonian: functions not homogeneous of one degree");
    f_deg = d;
  }
  // |i_X omega| = |X| - 1 + |omega| must equal |dF| = |F| + 1.
  const long field_degree = (f_deg && form_deg) ? *f_deg + 2 - *form_deg : 0;

  // Coefficient of dh (placed on the left) in i_X omega_j is
  //   sum_g (-1)^{(|g|+delta)(|h|+1)} B_{jgh} X(g)
  // where d/d(dg) omega_j = sum_h B_{jgh} dh.
  QMatrix k(r * n, n);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t g = 0; g < n; ++g) {
      GradedPoly one_form = partial(omega[j], sc.d(g));
      for (const auto& [m, c] : one_form.terms()) {
        std::size_t h = 0;
        while (h < n && m[sc.d(h)] == 0) ++h;
        bool odd = is_odd((base[g].degree + field_degree) * (base[h].degree + 1L));
        k(j * n + h, g) += odd ? -c : c;
      }
    }
  std::vector<GradedPoly> rhs;
  rhs.reserve(r * n);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t h = 0; h < n; ++h) rhs.push_back(partial(functions[j], h));

  PolySolution sol = solve_constant_system(k, rhs, sc.base());
  HamiltonianSolution out;
  out.unique = sol.unique;
  if (!sol.consistent) {
    out.obstruction = std::move(sol.obstruction);
    return out;
  }
  Derivation x(sc.base(), std::move(sol.solution), field_degree);
  // Independent confirmation through the interior product itself.
  PolyForm lhs = interior(x, omega);
  PolyForm rhs_form = de_rham(PolyForm::from_base(omega.chart(), functions));
  if (!(lhs == rhs_form)) throw Error("hamiltonian: internal sign inconsistency");
  out.solvable = true;
  out.field = std::move(x);
  return out;
}

std::vector<std::vector<Rational>> contraction_kernel(const PolyForm& omega) {
  const ShiftedChart& sc = *omega.chart();
  const std::size_t n = sc.base_size();
  // Rows: (component, monomial) pairs appearing in some contraction.
  std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
  std::vector<std::vector<GradedPoly>> contractions(n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < omega.order(); ++j) {
      contractions[g].push_back(partial(omega[j], sc.d(g)));
      for (const auto& [m, c] : contractions[g].back().terms()) row_of.emplace(std::make_pair(j, m), 0);
    }
  std::size_t next = 0;
  for (auto& [key, idx] : row_of) idx = next++;
  QMatrix k(row_of.size(), n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < omega.order(); ++j)
      for (const auto& [m, c] : contractions[g][j].terms()) k(row_of.at({j, m}), g) = c;
  return nullspace(k);
}

}  // namespace polysym
