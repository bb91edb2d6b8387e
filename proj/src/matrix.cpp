#include "glrep/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "glrep/error.hpp"

namespace glrep {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) precondition_failed("Matrix: data size does not match shape");
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols_if_empty) {
  std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
  Matrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) precondition_failed("Matrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::column(const std::vector<Scalar>& v) { return Matrix(v.size(), 1, v); }

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& v = (*this)(i, j);
      if (i == j ? !v.is_one() : !v.is_zero()) return false;
    }
  }
  return true;
}

std::size_t Matrix::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Scalar& s) { return !s.is_zero(); }));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero()) t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) precondition_failed("Matrix::block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) precondition_failed("Matrix::set_block out of range");
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
  }
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) precondition_failed("Matrix::add_block out of range");
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (!m(i, j).is_zero()) (*this)(r0 + i, c0 + j) += m(i, j);
    }
  }
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix r(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
  }
  return r;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix r(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
  }
  return r;
}

std::vector<Scalar> Matrix::col(std::size_t j) const {
  std::vector<Scalar> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) precondition_failed("Matrix +: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) precondition_failed("Matrix -: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  if (s.is_one()) return *this;
  for (auto& v : data_) {
    if (!v.is_zero()) v *= s;
  }
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix r(*this);
  for (auto& v : r.data_) {
    if (!v.is_zero()) v = -v;
  }
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    precondition_failed("Matrix *: shape mismatch " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                        " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  Matrix c(a.rows_, b.cols_);
  std::vector<std::size_t> nz;
  for (std::size_t k = 0; k < a.cols_; ++k) {
    nz.clear();
    for (std::size_t j = 0; j < b.cols_; ++j) {
      if (!b(k, j).is_zero()) nz.push_back(j);
    }
    if (nz.empty()) continue;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      Scalar neg = -aik;
      for (std::size_t j : nz) c(i, j).sub_mul(neg, b(k, j));
    }
  }
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) precondition_failed("Matrix::apply: length mismatch");
  std::vector<Scalar> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
    }
  }
  return r;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "]";
  return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) precondition_failed("hstack: row mismatch");
  Matrix r(a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) precondition_failed("vstack: column mismatch");
  Matrix r(a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows_if_empty) {
  std::size_t rows = parts.empty() ? rows_if_empty : parts.front().rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) precondition_failed("hstack: row mismatch");
    cols += p.cols();
  }
  Matrix r(rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    r.set_block(0, c, p);
    c += p.cols();
  }
  return r;
}

Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols_if_empty) {
  std::size_t cols = parts.empty() ? cols_if_empty : parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) precondition_failed("vstack: column mismatch");
    rows += p.rows();
  }
  Matrix r(rows, cols);
  std::size_t o = 0;
  for (const auto& p : parts) {
    r.set_block(o, 0, p);
    o += p.rows();
  }
  return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Matrix direct_sum(const std::vector<Matrix>& parts) {
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  Matrix r(rows, cols);
  std::size_t ro = 0, co = 0;
  for (const auto& p : parts) {
    r.set_block(ro, co, p);
    ro += p.rows();
    co += p.cols();
  }
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (!b(k, l).is_zero()) r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return r;
}

Rref rref(Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Rref out;
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Prefer a unit pivot so the row needs no rescaling.
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      const Scalar& v = m(i, c);
      if (v.is_zero()) continue;
      if (best == rows) best = i;
      if (v.is_one() || (-v).is_one()) {
        best = i;
        break;
      }
    }
    if (best == rows) continue;
    if (best != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(best, j), m(r, j));
    }
    if (!m(r, c).is_one()) {
      Scalar inv = m(r, c).inverse();
      for (std::size_t j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) m(r, j) *= inv;
      }
    }
    nz.clear();
    for (std::size_t j = c + 1; j < cols; ++j) {
      if (!m(r, j).is_zero()) nz.push_back(j);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j : nz) m(i, j).sub_mul(f, m(r, j));
      m(i, c) = Scalar();
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  // Eliminating along the shorter side is cheaper and gives the same rank.
  if (m.rows() > m.cols()) return rref(m.transpose()).pivots.size();
  return rref(m).pivots.size();
}

Matrix kernel_basis(const Matrix& a) {
  const std::size_t n = a.cols();
  Rref r = rref(a);
  std::vector<char> is_pivot(n, 0);
  for (auto p : r.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free.push_back(j);
  }
  Matrix k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      const Scalar& v = r.reduced(i, free[f]);
      if (!v.is_zero()) k(r.pivots[i], f) = -v;
    }
  }
  return k;
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) precondition_failed("solve_right: row mismatch");
  const std::size_t n = a.cols(), k = b.cols();
  Rref r = rref(hstack(a, b));
  Matrix x(n, k);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] >= n) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) x(r.pivots[i], j) = r.reduced(i, n + j);
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  Rref r = rref(hstack(a, Matrix::identity(n)));
  if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  return r.reduced.block(0, n, n, n);
}

SpanBasis span_basis(const Matrix& generators) {
  const std::size_t n = generators.rows();
  SpanBasis out;
  if (generators.cols() == 0 || n == 0) {
    out.basis = Matrix(n, 0);
    return out;
  }
  Rref r = rref(generators.transpose());
  const std::size_t rk = r.pivots.size();
  out.basis = Matrix(n, rk);
  for (std::size_t i = 0; i < rk; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!r.reduced(i, j).is_zero()) out.basis(j, i) = r.reduced(i, j);
    }
  }
  out.pivot_rows = std::move(r.pivots);
  return out;
}

Matrix span_coordinates(const SpanBasis& basis, const Matrix& v) { return v.select_rows(basis.pivot_rows); }

bool in_column_space(const Matrix& a, const Matrix& v) {
  if (v.cols() == 0) return true;
  return rank(hstack(a, v)) == rank(a);
}

}  // namespace glrep
