#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "sv/rational.hpp"

namespace sv {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  RationalVector operator*(const RationalVector& v) const;
  bool operator==(const Matrix& rhs) const = default;

  bool is_symmetric() const;
  /// Square submatrix on the given index set (rows and columns).
  Matrix principal(const std::vector<std::size_t>& idx) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::size_t rank(Matrix m);
Rational determinant(Matrix m);
/// Leading principal minors d_1..d_n.
RationalVector leading_minors(const Matrix& m);
/// Unique solution of m x = b; nullopt when m is singular.
std::optional<RationalVector> solve(Matrix m, RationalVector b);
std::optional<Matrix> inverse(const Matrix& m);
/// Basis of {x : m x = 0}.
std::vector<RationalVector> kernel(Matrix m);

Rational dot(const RationalVector& a, const RationalVector& b);

/// Incremental row echelon form over sparse rows. Columns are ordered by
/// their integer index; each stored row is normalized to leading entry 1.
class SparseEchelon {
 public:
  using Row = std::map<std::size_t, Rational>;
  /// Reduces the row against stored pivots; stores it and returns true when
  /// it is independent.
  bool insert(Row row);
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, Row> pivots_;
};

}  // namespace sv
