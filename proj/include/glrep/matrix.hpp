#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "glrep/scalar.hpp"

namespace glrep {

// Dense row-major matrix over Q.  A matrix with zero rows or zero columns is
// a valid object and represents the unique map to or from a zero space.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data);
  // Row-list literal, handy in tests: Matrix::from_rows({{1, 0}, {0, 1}}).
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols_if_empty = 0);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix column(const std::vector<Scalar>& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const noexcept { return data_; }

  bool is_zero() const;
  bool is_identity() const;
  std::size_t nonzeros() const;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  void add_block(std::size_t r0, std::size_t c0, const Matrix& m);
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  std::vector<Scalar> col(std::size_t j) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);
  Matrix operator-() const;

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows_if_empty = 0);
Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols_if_empty = 0);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix direct_sum(const std::vector<Matrix>& parts);
Matrix kron(const Matrix& a, const Matrix& b);

struct Rref {
  Matrix reduced;                   // reduced row echelon form, same shape as the input
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

// Gauss-Jordan elimination.  The result depends only on the row space of
// the input, so it is canonical regardless of pivot choices.
Rref rref(Matrix m);
std::size_t rank(const Matrix& m);

// Columns form a basis of the null space.  Column k is the unique null
// vector with a 1 in the k-th free position and 0 in the other free positions.
Matrix kernel_basis(const Matrix& a);

// Some X with A X = B, or nullopt.  Free variables are set to zero.
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& a);

// Canonical basis of the column space: the columns are in reduced column
// echelon form, so each has a 1 in its pivot row and 0 in the pivot rows of
// the others.
struct SpanBasis {
  Matrix basis;                          // n x r
  std::vector<std::size_t> pivot_rows;   // r increasing row indices
};
SpanBasis span_basis(const Matrix& generators);

// Coordinates of the columns of v (assumed to lie in the span) in a
// canonical span basis: these are just the pivot entries.
Matrix span_coordinates(const SpanBasis& basis, const Matrix& v);

// True if every column of v lies in the column space of a.
bool in_column_space(const Matrix& a, const Matrix& v);

}  // namespace glrep
