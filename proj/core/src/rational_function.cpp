#include "polysym/rational_function.hpp"

#include <algorithm>

namespace polysym {

namespace {

void require_even(const Chart& c) {
  for (const auto& g : c.generators())
    if (g.odd()) throw DegreeMismatch("rational functions need a chart without odd generators");
}

GradedPoly one(const ChartPtr& c) { return GradedPoly::constant(c, 1); }

}  // namespace

std::optional<GradedPoly> exact_divide(const GradedPoly& a, const GradedPoly& b) {
  if (!same_chart(a.chart(), b.chart())) throw ChartMismatch("exact_divide");
  if (b.is_zero()) throw Error("division by zero polynomial");
  require_even(*a.chart());
  const auto& [lb, cb] = *b.terms().rbegin();
  GradedPoly q(a.chart());
  GradedPoly r = a;
  while (!r.is_zero()) {
    const auto& [lr, cr] = *r.terms().rbegin();
    Monomial m(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      if (lr[i] < lb[i]) return std::nullopt;
      m[i] = lr[i] - lb[i];
    }
    GradedPoly t = GradedPoly::monomial(a.chart(), m, cr / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

RationalFunction::RationalFunction(ChartPtr chart) : num_(chart), den_(one(chart)) {}

RationalFunction::RationalFunction(GradedPoly numerator) : num_(std::move(numerator)), den_(one(num_.chart())) {
  require_even(*num_.chart());
}

RationalFunction::RationalFunction(GradedPoly numerator, GradedPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (!same_chart(num_.chart(), den_.chart())) throw ChartMismatch("rational function");
  require_even(*num_.chart());
  normalize();
}

void RationalFunction::normalize() {
  const ChartPtr& c = num_.chart();
  if (den_.is_zero()) throw Error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = one(c);
    return;
  }
  // Cancel the largest common monomial factor.
  Monomial common = num_.terms().begin()->first;
  for (const auto* p : {&num_, &den_})
    for (const auto& [m, v] : p->terms())
      for (std::size_t i = 0; i < m.size(); ++i) common[i] = std::min(common[i], m[i]);
  if (std::any_of(common.begin(), common.end(), [](auto e) { return e != 0; })) {
    GradedPoly g = GradedPoly::monomial(c, common, 1);
    num_ = *exact_divide(num_, g);
    den_ = *exact_divide(den_, g);
  }
  if (!den_.is_constant()) {
    if (auto q = exact_divide(num_, den_)) {
      num_ = std::move(*q);
      den_ = one(c);
    } else if (auto p = exact_divide(den_, num_)) {
      num_ = one(c);
      den_ = std::move(*p);
    }
  }
  Rational lead = den_.terms().rbegin()->second;
  if (lead != 1) {
    num_ *= 1 / lead;
    den_ *= 1 / lead;
  }
}

GradedPoly RationalFunction::polynomial() const {
  if (!is_polynomial()) throw Error("expected a polynomial, got " + to_string(*this));
  return num_;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction(chart());
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw Error("rational function division by zero");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
  if (!same_chart(chart(), o.chart())) return false;
  if (den_ == o.den_) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

std::optional<Rational> RationalFunction::evaluate(const std::vector<Rational>& point) const {
  std::vector<std::optional<Rational>> v(point.begin(), point.end());
  Rational d = polysym::evaluate(den_, v).constant_term();
  if (d == 0) return std::nullopt;
  return polysym::evaluate(num_, v).constant_term() / d;
}

RationalFunction apply(const Derivation& x, const RationalFunction& f) {
  if (x.odd()) throw DegreeMismatch("rational functions admit only even derivations");
  if (f.is_polynomial()) return RationalFunction(x(f.numerator()) * (1 / f.denominator().constant_term()));
  const auto& n = f.numerator();
  const auto& d = f.denominator();
  return RationalFunction(x(n) * d - n * x(d), d * d);
}

std::string to_string(const RationalFunction& f) {
  if (f.is_polynomial()) return to_string(f.numerator());
  return "(" + to_string(f.numerator()) + ")/(" + to_string(f.denominator()) + ")";
}

namespace {

std::size_t complexity(const RationalFunction& f) {
  return f.numerator().size() * f.numerator().total_exponent() + f.denominator().size() * 4 +
         f.numerator().size();
}

struct Reduced {
  RMatrix m;
  std::vector<std::size_t> pivots;
  std::vector<RationalFunction> rhs;
};

// Gauss-Jordan elimination; pivots are normalized to 1. Among candidate rows
// the simplest entry is chosen, with ties going to the earliest row.
Reduced reduce(RMatrix m, std::vector<RationalFunction> rhs, std::size_t cols, const ChartPtr& chart) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t rows = m.size();
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::optional<std::size_t> best;
    for (std::size_t r = row; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      if (!best || complexity(m[r][col]) < complexity(m[*best][col])) best = r;
    }
    if (!best) continue;
    std::swap(m[*best], m[row]);
    if (!rhs.empty()) std::swap(rhs[*best], rhs[row]);
    RationalFunction inv = RationalFunction(one(chart)) / m[row][col];
    for (auto& e : m[row]) e = e * inv;
    if (!rhs.empty()) rhs[row] = rhs[row] * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      RationalFunction f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c)
        if (!m[row][c].is_zero()) m[r][c] = m[r][c] - f * m[row][c];
      if (!rhs.empty()) rhs[r] = rhs[r] - f * rhs[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots), std::move(rhs)};
}

std::size_t width(const RMatrix& m) { return m.empty() ? 0 : m.front().size(); }

}  // namespace

std::size_t rank(const RMatrix& m, const ChartPtr& chart) { return reduce(m, {}, width(m), chart).pivots.size(); }

std::vector<std::vector<RationalFunction>> nullspace(const RMatrix& m, const ChartPtr& chart) {
  const std::size_t cols = width(m);
  Reduced red = reduce(m, {}, cols, chart);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<std::vector<RationalFunction>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<RationalFunction> v(cols, RationalFunction(chart));
    v[free] = RationalFunction(one(chart));
    for (std::size_t r = 0; r < red.pivots.size(); ++r) v[red.pivots[r]] = -red.m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

RSolution solve(const RMatrix& m, const std::vector<RationalFunction>& rhs, const ChartPtr& chart) {
  if (rhs.size() != m.size()) throw Error("solve: right-hand side has wrong length");
  const std::size_t cols = width(m);
  std::vector<RationalFunction> b = rhs;
  if (b.empty()) return {true, 0, std::vector<RationalFunction>(cols, RationalFunction(chart)), {}};
  Reduced red = reduce(m, std::move(b), cols, chart);
  RSolution out;
  out.rank = red.pivots.size();
  for (std::size_t r = out.rank; r < red.rhs.size(); ++r)
    if (!red.rhs[r].is_zero()) out.obstruction.push_back(red.rhs[r]);
  out.consistent = out.obstruction.empty();
  out.solution.assign(cols, RationalFunction(chart));
  for (std::size_t r = 0; r < out.rank; ++r) out.solution[red.pivots[r]] = red.rhs[r];
  return out;
}

}  // namespace polysym
