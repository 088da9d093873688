#include "polysym/graded_polysymplectic.hpp"

namespace polysym {

namespace {

struct Split {
  std::vector<std::size_t> even, odd;
};

Split split(const Chart& base) {
  Split s;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].degree == 0)
      s.even.push_back(i);
    else if (base[i].degree == 1)
      s.odd.push_back(i);
    else
      throw DegreeMismatch("generator " + base[i].name + " has degree other than 0 or 1");
  }
  return s;
}

std::vector<std::size_t> position_in(const std::vector<std::size_t>& list, std::size_t size) {
  std::vector<std::size_t> pos(size, list.size());
  for (std::size_t i = 0; i < list.size(); ++i) pos[list[i]] = i;
  return pos;
}

}  // namespace

InvariantReport check_invariants(const PolyForm& omega) {
  InvariantReport rep;
  rep.closed = de_rham(omega).is_zero();
  rep.homogeneous = lie_derivative(euler(omega.chart()->base()), omega) == omega;
  rep.kernel = contraction_kernel(omega);
  rep.nondegenerate = rep.kernel.empty();
  return rep;
}

PolyForm canonical(std::size_t m, std::size_t r) {
  if (m == 0 || r == 0) throw Error("canonical: m and r must be positive");
  std::vector<Generator> gens;
  for (std::size_t l = 1; l <= m; ++l) gens.emplace_back("q" + std::to_string(l), 0);
  for (std::size_t j = 1; j <= r; ++j)
    for (std::size_t l = 1; l <= m; ++l) gens.emplace_back("p" + std::to_string(j) + "_" + std::to_string(l), 1);
  return canonical_on(ShiftedChart::make(Chart::make(std::move(gens))), r);
}

PolyForm canonical_on(const ShiftedChartPtr& chart, std::size_t r) {
  Split s = split(*chart->base());
  const std::size_t m = s.even.size();
  if (r == 0 || s.odd.size() != r * m) throw NotExact("chart does not have r times as many odd as even generators");
  const ChartPtr& c = chart->chart();
  std::vector<GradedPoly> comps(r, GradedPoly(c));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = 0; l < m; ++l)
      comps[j] += GradedPoly::generator(c, chart->d(s.even[l])) * GradedPoly::generator(c, chart->d(s.odd[j * m + l]));
  return PolyForm(chart, std::move(comps));
}

NormalFormData normal_form(const PolyForm& omega) {
  const ShiftedChart& sc = *omega.chart();
  const Chart& base = *sc.base();
  Split s = split(base);
  auto even_pos = position_in(s.even, base.size());
  auto odd_pos = position_in(s.odd, base.size());
  NormalFormData out{s.even, s.odd, {}};
  for (std::size_t j = 0; j < omega.order(); ++j) {
    QMatrix c(s.odd.size(), s.even.size());
    for (const auto& [mono, coeff] : omega[j].terms()) {
      const std::string term = to_string(GradedPoly::monomial(sc.chart(), mono, coeff));
      if (sc.form_degree(mono) != 2) throw DegreeMismatch("term " + term + " is not a 2-form");
      for (std::size_t i = 0; i < base.size(); ++i)
        if (mono[i]) throw NonConstantCoefficient("term " + term + " has a non-constant coefficient");
      std::vector<std::size_t> diffs;
      for (std::size_t i = 0; i < base.size(); ++i)
        for (std::uint32_t e = 0; e < mono[sc.d(i)]; ++e) diffs.push_back(i);
      std::size_t q = diffs[0], p = diffs[1];
      if (base[q].degree != 0) std::swap(q, p);
      if (base[q].degree != 0 || base[p].degree != 1)
        throw DegreeMismatch("term " + term + " does not pair an even with an odd coordinate");
      // dp has even degree, so dq dp = dp dq and the stored coefficient is c.
      c(odd_pos[p], even_pos[q]) += coeff;
    }
    out.c.push_back(std::move(c));
  }
  return out;
}

PolyForm reconstruct(const ShiftedChartPtr& chart, const NormalFormData& data) {
  const ChartPtr& c = chart->chart();
  std::vector<GradedPoly> comps(data.c.size(), GradedPoly(c));
  for (std::size_t j = 0; j < data.c.size(); ++j)
    for (std::size_t a = 0; a < data.odd.size(); ++a)
      for (std::size_t l = 0; l < data.even.size(); ++l) {
        const Rational& v = data.c[j](a, l);
        if (v == 0) continue;
        comps[j] += GradedPoly::generator(c, chart->d(data.even[l])) *
                    GradedPoly::generator(c, chart->d(data.odd[a])) * v;
      }
  return PolyForm(chart, std::move(comps));
}

ExactnessReport is_exact(const PolyForm& omega) {
  NormalFormData nf = normal_form(omega);
  const std::size_t m = nf.even.size(), s = nf.odd.size(), r = omega.order();
  ExactnessReport rep;
  rep.t = QMatrix(s, r * m);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t l = 0; l < m; ++l) rep.t(a, j * m + l) = nf.c[j](a, l);
  if (s != r * m) {
    rep.reason = std::to_string(s) + " odd generators, expected r*m = " + std::to_string(r * m);
    return rep;
  }
  std::size_t rk = rank(rep.t);
  rep.exact = rk == s;
  if (!rep.exact) rep.reason = "T is singular (rank " + std::to_string(rk) + " of " + std::to_string(s) + ")";
  return rep;
}

CoordinateChange linear_odd_change(const ShiftedChartPtr& chart, const QMatrix& m) {
  const ChartPtr& base = chart->base();
  Split s = split(*base);
  if (m.rows() != s.odd.size() || m.cols() != s.odd.size()) throw Error("odd change: matrix has wrong shape");
  std::vector<GradedPoly> images;
  for (std::size_t i = 0; i < base->size(); ++i) images.push_back(GradedPoly::generator(base, i));
  for (std::size_t a = 0; a < s.odd.size(); ++a) {
    GradedPoly img(base);
    for (std::size_t b = 0; b < s.odd.size(); ++b)
      if (m(a, b) != 0) img += GradedPoly::generator(base, s.odd[b]) * m(a, b);
    images[s.odd[a]] = img;
  }
  return CoordinateChange{chart, m, std::move(images)};
}

CoordinateChange schwarz_normalize(const PolyForm& omega) {
  ExactnessReport rep = is_exact(omega);
  if (!rep.exact) throw NotExact(rep.reason);
  auto inv = inverse(rep.t.transpose());
  CoordinateChange change = linear_odd_change(omega.chart(), *inv);
  if (!(change.apply(omega) == canonical_on(omega.chart(), omega.order())))
    throw Error("schwarz_normalize: round trip failed");
  return change;
}

HamiltonianSolution graded_hamiltonian_vf(const std::vector<GradedPoly>& f, const PolyForm& omega) {
  return hamiltonian_vector_field(omega, f);
}

}  // namespace polysym
