#include "polysym/graded_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace polysym {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("empty rational literal");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool seen_digit = false;
  bool seen_slash = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (std::isdigit(static_cast<unsigned char>(s[k]))) {
      seen_digit = true;
    } else if (s[k] == '/' && !seen_slash && seen_digit && k + 1 < s.size()) {
      seen_slash = true;
    } else {
      throw Error("malformed rational literal '" + s + "'");
    }
  }
  if (!seen_digit) throw Error("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- Chart

Chart::Chart(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& name = generators_[i].name;
    if (name.empty()) throw Error("generator with empty name");
    if (!index_.emplace(name, i).second) throw Error("duplicate generator name '" + name + "'");
  }
}

ChartPtr Chart::make(std::vector<Generator> generators) {
  return std::make_shared<const Chart>(std::move(generators));
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Chart::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw UnknownGenerator(std::string(name));
  return *i;
}

bool Chart::nonnegatively_graded() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Generator& g) { return g.degree >= 0; });
}

bool Chart::all_degree_zero() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Generator& g) { return g.degree == 0; });
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------- monomials

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  std::uint64_t sa = 0, sb = 0;
  for (auto e : a) sa += e;
  for (auto e : b) sb += e;
  if (sa != sb) return sa < sb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](auto x, auto y) { return x > y; });
}

long monomial_degree(const Chart& chart, const Monomial& m) {
  long d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<long>(m[i]) * chart[i].degree;
  return d;
}

long monomial_internal_degree(const Chart& chart, const Monomial& m) {
  long d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<long>(m[i]) * chart[i].internal_degree;
  return d;
}

bool monomial_odd(const Chart& chart, const Monomial& m) {
  bool odd = false;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (chart[i].odd() && (m[i] & 1u)) odd = !odd;
  return odd;
}

int multiply_monomials(const Chart& chart, const Monomial& a, const Monomial& b, Monomial& out) {
  const std::size_t n = chart.size();
  out.resize(n);
  // Moving each odd factor of b leftwards past the odd factors of a that come
  // later in chart order.
  std::uint32_t odd_in_a_after = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (chart[i].odd()) odd_in_a_after += a[i];
  std::uint64_t swaps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a[i] + b[i];
    if (chart[i].odd()) {
      if (out[i] > 1) return 0;
      odd_in_a_after -= a[i];
      if (b[i]) swaps += odd_in_a_after;
    }
  }
  return (swaps & 1u) ? -1 : 1;
}

// ---------------------------------------------------------------- GradedPoly

GradedPoly::GradedPoly(ChartPtr chart) : chart_(std::move(chart)) {
  if (!chart_) throw Error("null chart");
}

GradedPoly::GradedPoly(ChartPtr chart, Terms terms) : chart_(std::move(chart)) {
  if (!chart_) throw Error("null chart");
  for (auto& [m, c] : terms) {
    if (m.size() != chart_->size()) throw Error("monomial length does not match chart");
    for (std::size_t i = 0; i < m.size(); ++i)
      if ((*chart_)[i].odd() && m[i] > 1) throw Error("odd generator with exponent > 1");
    if (c != 0) terms_.emplace(m, c);
  }
}

GradedPoly GradedPoly::constant(ChartPtr chart, const Rational& c) {
  GradedPoly p(std::move(chart));
  if (c != 0) p.terms_.emplace(Monomial(p.chart_->size(), 0), c);
  return p;
}

GradedPoly GradedPoly::generator(ChartPtr chart, std::size_t index) {
  GradedPoly p(std::move(chart));
  if (index >= p.chart_->size()) throw Error("generator index out of range");
  Monomial m(p.chart_->size(), 0);
  m[index] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

GradedPoly GradedPoly::generator(ChartPtr chart, std::string_view name) {
  auto i = chart->index_of(name);
  return generator(std::move(chart), i);
}

GradedPoly GradedPoly::monomial(ChartPtr chart, const Monomial& m, const Rational& c) {
  Terms t;
  t.emplace(m, c);
  return GradedPoly(std::move(chart), std::move(t));
}

bool GradedPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
}

Rational GradedPoly::constant_term() const { return coefficient(Monomial(chart_->size(), 0)); }

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<long> GradedPoly::degree() const {
  std::optional<long> d;
  for (const auto& [m, c] : terms_) {
    long dm = monomial_degree(*chart_, m);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

std::optional<long> GradedPoly::internal_degree() const {
  std::optional<long> d;
  for (const auto& [m, c] : terms_) {
    long dm = monomial_internal_degree(*chart_, m);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

std::optional<bool> GradedPoly::odd() const {
  std::optional<bool> p;
  for (const auto& [m, c] : terms_) {
    bool pm = monomial_odd(*chart_, m);
    if (p && *p != pm) return std::nullopt;
    p = pm;
  }
  return p;
}

std::uint32_t GradedPoly::total_exponent() const {
  std::uint32_t best = 0;
  for (const auto& [m, c] : terms_) {
    std::uint32_t s = 0;
    for (auto e : m) s += e;
    best = std::max(best, s);
  }
  return best;
}

bool GradedPoly::depends_on(std::size_t index) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[index] != 0; });
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& other) {
  if (!same_chart(chart_, other.chart_)) throw ChartMismatch();
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& other) {
  if (!same_chart(chart_, other.chart_)) throw ChartMismatch();
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r(*this);
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool GradedPoly::operator==(const GradedPoly& other) const {
  return same_chart(chart_, other.chart_) && terms_ == other.terms_;
}

GradedPoly mul(const GradedPoly& a, const GradedPoly& b) {
  if (!same_chart(a.chart(), b.chart())) throw ChartMismatch();
  const Chart& chart = *a.chart();
  Terms out;
  Monomial prod;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = multiply_monomials(chart, ma, mb, prod);
      if (s == 0) continue;
      Rational c = ca * cb;
      if (s < 0) c = -c;
      auto [it, inserted] = out.emplace(prod, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return GradedPoly(a.chart(), std::move(out));
}

GradedPoly pow(const GradedPoly& a, std::uint32_t e) {
  GradedPoly result = GradedPoly::constant(a.chart(), 1);
  GradedPoly base = a;
  while (e) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

GradedPoly normalize(const ChartPtr& chart, const Rational& coeff, std::span<const std::size_t> word) {
  GradedPoly p = GradedPoly::constant(chart, coeff);
  for (auto g : word) {
    if (g >= chart->size()) throw Error("generator index out of range");
    p = mul(p, GradedPoly::generator(chart, g));
  }
  return p;
}

GradedPoly normalize(const ChartPtr& chart, const Rational& coeff,
                     const std::vector<std::string>& word) {
  std::vector<std::size_t> idx;
  idx.reserve(word.size());
  for (const auto& name : word) idx.push_back(chart->index_of(name));
  return normalize(chart, coeff, idx);
}

GradedPoly partial(const GradedPoly& f, std::size_t generator) {
  const Chart& chart = *f.chart();
  if (generator >= chart.size()) throw Error("generator index out of range");
  const bool g_odd = chart[generator].odd();
  Terms out;
  for (const auto& [m, c] : f.terms()) {
    if (m[generator] == 0) continue;
    Rational coeff = c;
    if (g_odd) {
      std::uint32_t passed = 0;
      for (std::size_t i = 0; i < generator; ++i)
        if (chart[i].odd()) passed += m[i];
      if (passed & 1u) coeff = -coeff;
    } else {
      coeff *= m[generator];
    }
    Monomial r = m;
    r[generator] -= 1;
    out.emplace(std::move(r), coeff);
  }
  return GradedPoly(f.chart(), std::move(out));
}

GradedPoly substitute(const GradedPoly& f, const ChartPtr& target,
                      const std::vector<GradedPoly>& images) {
  const Chart& chart = *f.chart();
  if (images.size() != chart.size()) throw Error("substitute: missing image");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!same_chart(images[i].chart(), target)) throw ChartMismatch("substitute: image on wrong chart");
    if (images[i].is_zero()) continue;
    auto d = images[i].degree();
    if (!d || *d != chart[i].degree)
      throw DegreeMismatch("substitute: image of '" + chart[i].name + "' has wrong degree");
  }
  // Powers are cached per generator.
  std::vector<std::vector<GradedPoly>> powers(chart.size());
  auto power = [&](std::size_t i, std::uint32_t e) -> const GradedPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(GradedPoly::constant(target, 1));
    while (cache.size() <= e) cache.push_back(mul(cache.back(), images[i]));
    return cache[e];
  };
  GradedPoly result(target);
  for (const auto& [m, c] : f.terms()) {
    GradedPoly term = GradedPoly::constant(target, c);
    for (std::size_t i = 0; i < m.size() && !term.is_zero(); ++i)
      if (m[i]) term = mul(term, power(i, m[i]));
    result += term;
  }
  return result;
}

GradedPoly evaluate(const GradedPoly& f, const std::vector<std::optional<Rational>>& values) {
  const Chart& chart = *f.chart();
  if (values.size() != chart.size()) throw Error("evaluate: value vector has wrong length");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] && chart[i].degree != 0)
      throw DegreeMismatch("evaluate: only degree-0 generators can take values");
  Terms out;
  for (const auto& [m, c] : f.terms()) {
    Rational coeff = c;
    Monomial r = m;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!values[i] || m[i] == 0) continue;
      Rational p = 1;
      for (std::uint32_t k = 0; k < m[i]; ++k) p *= *values[i];
      coeff *= p;
      r[i] = 0;
    }
    if (coeff == 0) continue;
    auto [it, inserted] = out.emplace(r, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) out.erase(it);
    }
  }
  return GradedPoly(f.chart(), std::move(out));
}

std::string to_string(const GradedPoly& f) {
  if (f.is_zero()) return "0";
  const Chart& chart = *f.chart();
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    bool is_const = std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (is_const || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (need_star) os << "*";
      os << chart[i].name;
      if (m[i] > 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- Derivation

Derivation::Derivation(ChartPtr chart, std::vector<GradedPoly> components, std::optional<long> declared)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_->size()) throw Error("derivation: one component per generator required");
  std::optional<long> deg;
  std::optional<bool> odd;
  bool mixed_degree = false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (!same_chart(c.chart(), chart_)) throw ChartMismatch("derivation component on wrong chart");
    for (const auto& [m, v] : c.terms()) {
      long shift = monomial_degree(*chart_, m) - (*chart_)[i].degree;
      if (deg && *deg != shift) mixed_degree = true;
      if (!deg) deg = shift;
      bool p = is_odd(shift);
      if (odd && *odd != p) throw DegreeMismatch("derivation: components of mixed parity");
      odd = p;
    }
  }
  if (!deg) {
    degree_ = declared.value_or(0);
    odd_ = is_odd(*degree_);
    return;
  }
  if (mixed_degree) {
    if (declared) throw DegreeMismatch("derivation: components disagree with declared degree");
    degree_ = std::nullopt;
    odd_ = *odd;
    return;
  }
  if (declared && *declared != *deg) throw DegreeMismatch("derivation: components disagree with declared degree");
  degree_ = deg;
  odd_ = is_odd(*deg);
}

Derivation Derivation::zero(ChartPtr chart, long degree) {
  std::vector<GradedPoly> comps(chart->size(), GradedPoly(chart));
  return Derivation(chart, std::move(comps), degree);
}

Derivation Derivation::coordinate(ChartPtr chart, std::size_t generator) {
  std::vector<GradedPoly> comps(chart->size(), GradedPoly(chart));
  comps.at(generator) = GradedPoly::constant(chart, 1);
  long deg = -static_cast<long>((*chart)[generator].degree);
  return Derivation(chart, std::move(comps), deg);
}

bool Derivation::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

GradedPoly Derivation::operator()(const GradedPoly& f) const {
  if (!same_chart(f.chart(), chart_)) throw ChartMismatch();
  GradedPoly result(chart_);
  for (std::size_t g = 0; g < components_.size(); ++g) {
    if (components_[g].is_zero() || !f.depends_on(g)) continue;
    result += mul(components_[g], partial(f, g));
  }
  return result;
}

namespace {

std::optional<long> combined_degree(const Derivation& a, const Derivation& b) {
  if (a.odd() != b.odd()) throw DegreeMismatch("derivation sum: parities differ");
  if (a.is_zero()) return b.degree();
  if (b.is_zero()) return a.degree();
  if (a.degree() && b.degree() && *a.degree() == *b.degree()) return a.degree();
  return std::nullopt;
}

}  // namespace

Derivation Derivation::operator+(const Derivation& other) const {
  if (!same_chart(chart_, other.chart_)) throw ChartMismatch();
  auto deg = combined_degree(*this, other);
  std::vector<GradedPoly> comps = components_;
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += other.components_[i];
  Derivation r(chart_, std::move(comps));
  if (r.is_zero() && deg) return Derivation::zero(chart_, *deg);
  return r;
}

Derivation Derivation::operator-(const Derivation& other) const { return *this + (-other); }

Derivation Derivation::operator-() const { return *this * Rational(-1); }

Derivation Derivation::operator*(const Rational& c) const {
  std::vector<GradedPoly> comps = components_;
  for (auto& p : comps) p *= c;
  if (c == 0) return Derivation::zero(chart_, degree_.value_or(odd_ ? 1 : 0));
  Derivation r(chart_, std::move(comps), degree_);
  r.odd_ = odd_;
  return r;
}

bool Derivation::operator==(const Derivation& other) const {
  return same_chart(chart_, other.chart_) && components_ == other.components_;
}

Derivation left_multiply(const GradedPoly& f, const Derivation& x) {
  if (!same_chart(f.chart(), x.chart())) throw ChartMismatch();
  auto fd = f.degree();
  if (!f.is_zero() && !fd) throw DegreeMismatch("left_multiply: factor must be homogeneous");
  std::vector<GradedPoly> comps;
  comps.reserve(x.components().size());
  for (const auto& c : x.components()) comps.push_back(mul(f, c));
  if (f.is_zero()) return Derivation::zero(x.chart(), x.degree().value_or(0));
  std::optional<long> declared;
  if (x.degree()) declared = *x.degree() + *fd;
  return Derivation(x.chart(), std::move(comps), declared);
}

Derivation commutator(const Derivation& x, const Derivation& y) {
  if (!same_chart(x.chart(), y.chart())) throw ChartMismatch();
  const bool minus = !(x.odd() && y.odd());
  std::vector<GradedPoly> comps;
  comps.reserve(x.chart()->size());
  for (std::size_t g = 0; g < x.chart()->size(); ++g) {
    GradedPoly xy = x(y.component(g));
    GradedPoly yx = y(x.component(g));
    comps.push_back(minus ? xy - yx : xy + yx);
  }
  std::optional<long> declared;
  if (x.degree() && y.degree()) declared = *x.degree() + *y.degree();
  bool any = std::any_of(comps.begin(), comps.end(), [](const auto& c) { return !c.is_zero(); });
  if (!any) {
    long fallback = (x.odd() != y.odd()) ? 1 : 0;
    return Derivation::zero(x.chart(), declared.value_or(fallback));
  }
  // Components of an inhomogeneous commutator may not agree on one degree.
  try {
    return Derivation(x.chart(), comps, declared);
  } catch (const DegreeMismatch&) {
    return Derivation(x.chart(), std::move(comps));
  }
}

std::string to_string(const Derivation& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t g = 0; g < x.components().size(); ++g) {
    const auto& c = x.component(g);
    if (c.is_zero()) continue;
    if (!first) os << ", ";
    first = false;
    os << (*x.chart())[g].name << " -> " << to_string(c);
  }
  if (first) return "0";
  return os.str();
}

}  // namespace polysym
