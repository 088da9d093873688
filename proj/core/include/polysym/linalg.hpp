#pragma once

// Dense linear algebra over the rationals, plus elimination of constant
// systems whose right-hand sides are polynomials.

#include <optional>
#include <string>
#include <vector>

#include "polysym/graded_algebra.hpp"
#include "polysym/rational.hpp"

namespace polysym {

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& other) const;
  bool operator==(const QMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  QMatrix reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Fixed pivot order: first nonzero entry scanning rows top-down per column.
Echelon row_reduce(QMatrix m);
std::size_t rank(const QMatrix& m);
// Basis of {v : m v = 0}.
std::vector<std::vector<Rational>> nullspace(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);

// Solve K u = rhs where K is a constant matrix and rhs a vector of
// polynomials on `chart`. Free unknowns are set to zero.
struct PolySolution {
  bool consistent = false;
  bool unique = false;
  std::size_t rank = 0;
  std::vector<GradedPoly> solution;
  // Reduced right-hand sides of the zero rows that fail to vanish.
  std::vector<GradedPoly> obstruction;
};

PolySolution solve_constant_system(const QMatrix& k, const std::vector<GradedPoly>& rhs,
                                   const ChartPtr& chart);

}  // namespace polysym
