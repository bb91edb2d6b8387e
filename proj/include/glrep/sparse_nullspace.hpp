#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "glrep/matrix.hpp"

namespace glrep {

// Null space of a homogeneous linear system fed one equation at a time.
//
// Naturality conditions produce thousands of very short equations in a few
// hundred unknowns; a dense coefficient matrix would be mostly zeros.  The
// equations are stored sparsely and solved on the first query, first modulo
// a few large primes with a rational lift that is then checked exactly, and
// by exact sparse elimination when the lift fails.  The kernel it returns is
// identical to kernel_basis() of the dense coefficient matrix.
class SparseNullspace {
 public:
  using Term = std::pair<std::size_t, Scalar>;

  explicit SparseNullspace(std::size_t unknowns);

  // Adds the equation sum(coefficient * x[index]) = 0.  Repeated indices
  // are summed.
  void add_equation(const std::vector<Term>& terms);

  std::size_t unknowns() const noexcept { return n_; }
  std::size_t rank() const;
  std::vector<std::size_t> free_columns() const;

  // n x (n - rank) matrix whose columns span the null space.
  Matrix kernel() const;

 private:
  void solve() const;
  void solve_exact() const;
  bool solve_modular() const;
  std::optional<Matrix> lift(const std::vector<std::size_t>& free,
                             const std::vector<std::vector<mpz_class>>& residues, const mpz_class& modulus) const;

  std::size_t n_;
  std::vector<std::vector<Term>> equations_;  // merged, increasing columns
  mutable bool solved_ = false;
  mutable std::vector<std::size_t> free_;
  mutable Matrix kernel_;
};

}  // namespace glrep
