#include "polysym/linalg.hpp"

#include <sstream>

namespace polysym {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
  if (cols_ != other.rows_) throw Error("matrix product: shape mismatch");
  QMatrix p(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(r, k) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) p(r, c) += (*this)(r, k) * other(k, c);
    }
  return p;
}

std::string QMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c).get_str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

// Shared elimination driver; `on_swap`, `on_scale` and `on_axpy` replay the
// row operations on an attached right-hand side.
template <class Swap, class Scale, class Axpy>
std::vector<std::size_t> eliminate(QMatrix& m, Swap on_swap, Scale on_scale, Axpy on_axpy) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
      on_swap(p, row);
    }
    Rational inv = 1 / m(row, col);
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) *= inv;
    on_scale(row, inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
      on_axpy(r, row, f);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Echelon row_reduce(QMatrix m) {
  auto pivots = eliminate(
      m, [](auto, auto) {}, [](auto, const Rational&) {}, [](auto, auto, const Rational&) {});
  return Echelon{std::move(m), std::move(pivots)};
}

std::size_t rank(const QMatrix& m) { return row_reduce(m).pivots.size(); }

std::vector<std::vector<Rational>> nullspace(const QMatrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  QMatrix work = m;
  QMatrix inv = QMatrix::identity(n);
  auto pivots = eliminate(
      work,
      [&](std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < n; ++c) std::swap(inv(a, c), inv(b, c));
      },
      [&](std::size_t r, const Rational& s) {
        for (std::size_t c = 0; c < n; ++c) inv(r, c) *= s;
      },
      [&](std::size_t r, std::size_t src, const Rational& f) {
        for (std::size_t c = 0; c < n; ++c) inv(r, c) -= f * inv(src, c);
      });
  if (pivots.size() != n) return std::nullopt;
  return inv;
}

PolySolution solve_constant_system(const QMatrix& k, const std::vector<GradedPoly>& rhs,
                                   const ChartPtr& chart) {
  if (rhs.size() != k.rows()) throw Error("solve: right-hand side has wrong length");
  QMatrix work = k;
  std::vector<GradedPoly> b = rhs;
  auto pivots = eliminate(
      work, [&](std::size_t x, std::size_t y) { std::swap(b[x], b[y]); },
      [&](std::size_t r, const Rational& s) { b[r] *= s; },
      [&](std::size_t r, std::size_t src, const Rational& f) { b[r] -= b[src] * f; });
  PolySolution out;
  out.rank = pivots.size();
  out.unique = out.rank == k.cols();
  for (std::size_t r = pivots.size(); r < k.rows(); ++r)
    if (!b[r].is_zero()) out.obstruction.push_back(b[r]);
  out.consistent = out.obstruction.empty();
  out.solution.assign(k.cols(), GradedPoly(chart));
  for (std::size_t r = 0; r < pivots.size(); ++r) out.solution[pivots[r]] = b[r];
  return out;
}

}  // namespace polysym
