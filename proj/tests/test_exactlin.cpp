#include <random>

#include "doctest.h"
#include "glrep/matrix.hpp"
#include "glrep/sparse_nullspace.hpp"

using namespace glrep;

namespace {

// Rank of a rational matrix by plain elimination on mpq_class, independent
// of the library's elimination code.
std::size_t oracle_rank(const Matrix& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).to_mpq();
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range = 3, int density = 2) {
  Matrix m(r, c);
  std::uniform_int_distribution<int> val(-range, range), keep(0, density);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (keep(rng) == 0) m(i, j) = Scalar(val(rng), 1 + (keep(rng) % 3));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic agrees with GMP rationals") {
  std::mt19937_64 rng(7);
  std::vector<long long> samples = {0, 1, -1, 2, -3, 7, 1LL << 31, -(1LL << 40), INT64_MAX, INT64_MIN + 1,
                                    INT64_MAX / 3, 999999937};
  std::uniform_int_distribution<long long> any(INT64_MIN + 1, INT64_MAX);
  for (int i = 0; i < 40; ++i) samples.push_back(any(rng));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = 0; j < samples.size(); j += 3) {
      long long den = (j % 5) + 1;
      Scalar a(samples[i]), b(samples[j], den);
      mpq_class qa(a.to_mpq()), qb(b.to_mpq());
      CHECK((a + b).to_mpq() == qa + qb);
      CHECK((a - b).to_mpq() == qa - qb);
      CHECK((a * b).to_mpq() == qa * qb);
      if (!b.is_zero()) {
        CHECK((a / b).to_mpq() == qa / qb);
      }
      Scalar s = a;
      s.sub_mul(b, b);
      CHECK(s.to_mpq() == qa - qb * qb);
      CHECK(((a <=> b) < 0) == (qa < qb));
      CHECK((a == b) == (qa == qb));
    }
  }
}

TEST_CASE("scalar representation is canonical") {
  Scalar big = Scalar(INT64_MAX) * Scalar(4);
  CHECK_FALSE(big.is_inline());
  Scalar back = big / Scalar(4);
  CHECK(back.is_inline());
  CHECK(back == Scalar(INT64_MAX));
  CHECK(Scalar(6, 4) == Scalar(3, 2));
  CHECK(Scalar::parse("-6/4") == Scalar(-3, 2));
  CHECK(Scalar::parse("123456789012345678901234567890/10").str() == "12345678901234567890123456789");
  CHECK(Scalar(-3, 2).str() == "-3/2");
  CHECK_THROWS(Scalar::parse("1/0"));
  CHECK_THROWS(Scalar::parse("x"));
}

TEST_CASE("rank, kernel and solve on random matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    Matrix a = random_matrix(rng, r, c);
    if (trial % 4 == 0 && r > 1) {
      // Force a dependent row.
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = a(0, j) * Scalar(2) - a(r / 2, j);
    }
    std::size_t rk = rank(a);
    CHECK(rk == oracle_rank(a));
    Matrix k = kernel_basis(a);
    CHECK(k.cols() == c - rk);
    CHECK((a * k).is_zero());
    CHECK(oracle_rank(k) == k.cols());

    Matrix x0 = random_matrix(rng, c, 2);
    Matrix b = a * x0;
    auto x = solve_right(a, b);
    REQUIRE(x.has_value());
    CHECK(a * *x == b);

    SpanBasis sb = span_basis(a);
    CHECK(sb.basis.cols() == rk);
    CHECK(oracle_rank(hstack(sb.basis, a)) == rk);
    CHECK(span_coordinates(sb, a).rows() == rk);
    CHECK(sb.basis * span_coordinates(sb, a) == a);
  }
}

TEST_CASE("inconsistent systems and inverses") {
  Matrix a = Matrix::from_rows({{1, 2}, {2, 4}});
  CHECK_FALSE(solve_right(a, Matrix::from_rows({{1}, {3}})).has_value());
  CHECK_FALSE(inverse(a).has_value());
  Matrix b = Matrix::from_rows({{2, 1}, {1, 1}});
  auto inv = inverse(b);
  REQUIRE(inv.has_value());
  CHECK((b * *inv).is_identity());
  CHECK(kernel_basis(Matrix(0, 3)).cols() == 3);
  CHECK(rank(Matrix(3, 0)) == 0);
}

TEST_CASE("kron satisfies the mixed product rule") {
  std::mt19937 rng(5);
  Matrix a = random_matrix(rng, 2, 3), b = random_matrix(rng, 3, 2);
  Matrix c = random_matrix(rng, 3, 2), d = random_matrix(rng, 2, 3);
  CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
}

TEST_CASE("sparse null space matches the dense kernel") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng() % 12, c = 1 + rng() % 9;
    Matrix a = random_matrix(rng, r, c, 2, 3);
    SparseNullspace ns(c);
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<SparseNullspace::Term> terms;
      for (std::size_t j = 0; j < c; ++j) {
        if (!a(i, j).is_zero()) terms.emplace_back(j, a(i, j));
      }
      ns.add_equation(terms);
    }
    CHECK(ns.rank() == rank(a));
    CHECK(ns.kernel() == kernel_basis(a));
  }
}

TEST_CASE("sparse null space with large entries matches the dense kernel") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    // A product of dense factors has entries far beyond one machine word.
    std::size_t inner = 4 + trial;
    Matrix a = random_matrix(rng, 7, inner, 40, 1) * random_matrix(rng, inner, 9, 40, 1);
    a = a * random_matrix(rng, 9, 9, 40, 1);
    for (std::size_t j = 0; j < 9; ++j) a(0, j) /= Scalar(1000003);
    SparseNullspace ns(9);
    for (std::size_t i = 0; i < 7; ++i) {
      std::vector<SparseNullspace::Term> terms;
      for (std::size_t j = 0; j < 9; ++j) terms.emplace_back(j, a(i, j));
      ns.add_equation(terms);
    }
    CHECK(ns.rank() == rank(a));
    CHECK(ns.kernel() == kernel_basis(a));
  }
}

TEST_CASE("sparse null space survives a coefficient divisible by a modulus") {
  mpz_class p = mpz_class(1) << 61;
  mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  for (const Scalar& big : {Scalar(mpq_class(p)), Scalar(mpq_class(p * p)), Scalar(mpq_class(1, p))}) {
    Matrix a(1, 2);
    a(0, 0) = big;
    a(0, 1) = 1;
    SparseNullspace ns(2);
    ns.add_equation({{0, a(0, 0)}, {1, a(0, 1)}});
    CHECK(ns.free_columns() == std::vector<std::size_t>{1});
    CHECK(ns.kernel() == kernel_basis(a));
  }
}
