#include "glrep/sparse_nullspace.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>

#include "glrep/error.hpp"

namespace glrep {

namespace {

struct RationalOps {
  using Value = Scalar;
  static bool is_zero(const Value& v) { return v.is_zero(); }
  static void add(Value& acc, const Value& v) { acc += v; }
  static void sub_mul(Value& acc, const Value& a, const Value& b) { acc.sub_mul(a, b); }
  static Value inverse(const Value& v) { return v.inverse(); }
  static void mul(Value& acc, const Value& v) { acc *= v; }
};

struct ModOps {
  using Value = std::uint64_t;
  std::uint64_t p;
  bool is_zero(Value v) const { return v == 0; }
  void add(Value& acc, Value v) const { acc = (acc + v) % p; }
  Value mulmod(Value a, Value b) const {
    return static_cast<Value>(static_cast<unsigned __int128>(a) * b % p);
  }
  void sub_mul(Value& acc, Value a, Value b) const { acc = (acc + p - mulmod(a, b)) % p; }
  void mul(Value& acc, Value v) const { acc = mulmod(acc, v); }
  Value inverse(Value v) const {
    Value result = 1, base = v, e = p - 2;
    while (e) {
      if (e & 1) result = mulmod(result, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return result;
  }
};

// Row echelon form built one sparse equation at a time.  Rows are kept with
// leading coefficient 1 and each new equation is reduced against all rows
// whose pivot it touches, in increasing column order.
template <class Ops>
class Echelon {
 public:
  using Value = typename Ops::Value;
  using Row = std::vector<std::pair<std::size_t, Value>>;

  Echelon(std::size_t n, Ops ops) : ops_(ops), pivot_row_(n, -1), scratch_(n), touched_(n, 0) {}

  void add(const Row& terms) {
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> pending;
    std::vector<std::size_t> seen;
    auto touch = [&](std::size_t j) {
      if (!touched_[j]) {
        touched_[j] = 1;
        pending.push(j);
        seen.push_back(j);
      }
    };
    for (const auto& [j, v] : terms) {
      touch(j);
      ops_.add(scratch_[j], v);
    }
    Row reduced;
    while (!pending.empty()) {
      std::size_t c = pending.top();
      pending.pop();
      if (ops_.is_zero(scratch_[c])) continue;
      long p = pivot_row_[c];
      if (p < 0) {
        reduced.emplace_back(c, scratch_[c]);
        continue;
      }
      Value f = scratch_[c];
      for (const auto& [j, v] : rows_[static_cast<std::size_t>(p)]) {
        if (j == c) continue;
        touch(j);
        ops_.sub_mul(scratch_[j], f, v);
      }
      scratch_[c] = Value();
    }
    for (std::size_t j : seen) {
      scratch_[j] = Value();
      touched_[j] = 0;
    }
    if (reduced.empty()) return;
    Value inv = ops_.inverse(reduced.front().second);
    for (auto& t : reduced) ops_.mul(t.second, inv);
    pivot_row_[reduced.front().first] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(reduced));
  }

  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < pivot_row_.size(); ++j) {
      if (pivot_row_[j] < 0) free.push_back(j);
    }
    return free;
  }

  // Column f of the result is the kernel vector equal to 1 at free[f] and 0
  // at every other free column.
  std::vector<std::vector<Value>> kernel(const std::vector<std::size_t>& free) const {
    const std::size_t n = pivot_row_.size();
    std::vector<std::vector<Value>> k(free.size(), std::vector<Value>(n));
    for (std::size_t f = 0; f < free.size(); ++f) k[f][free[f]] = Value(1);
    for (std::size_t c = n; c-- > 0;) {
      long p = pivot_row_[c];
      if (p < 0) continue;
      for (const auto& [j, v] : rows_[static_cast<std::size_t>(p)]) {
        if (j == c) continue;
        for (std::size_t f = 0; f < free.size(); ++f) {
          if (!ops_.is_zero(k[f][j])) ops_.sub_mul(k[f][c], v, k[f][j]);
        }
      }
    }
    return k;
  }

 private:
  Ops ops_;
  std::vector<Row> rows_;
  std::vector<long> pivot_row_;
  std::vector<Value> scratch_;
  std::vector<char> touched_;
};

const std::vector<std::uint64_t>& primes() {
  static const std::vector<std::uint64_t> list = [] {
    std::vector<std::uint64_t> out;
    mpz_class p = mpz_class(1) << 61;
    for (int k = 0; k < 12; ++k) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      out.push_back(static_cast<std::uint64_t>(mpz_get_ui(p.get_mpz_t())));
    }
    return out;
  }();
  return list;
}

// a / b with a = b * r mod m and |a|, b below sqrt(m / 2).
std::optional<mpq_class> reconstruct(const mpz_class& r, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  return out;
}

constexpr std::size_t kMaxPrimes = 8;

}  // namespace

SparseNullspace::SparseNullspace(std::size_t unknowns) : n_(unknowns) {}

void SparseNullspace::add_equation(const std::vector<Term>& terms) {
  std::map<std::size_t, Scalar> merged;
  for (const auto& [j, v] : terms) {
    if (j >= n_) precondition_failed("SparseNullspace: unknown index out of range");
    if (v.is_zero()) continue;
    merged[j] += v;
  }
  std::vector<Term> eq;
  for (auto& [j, v] : merged) {
    if (!v.is_zero()) eq.emplace_back(j, std::move(v));
  }
  if (eq.empty()) return;
  equations_.push_back(std::move(eq));
  solved_ = false;
}

std::size_t SparseNullspace::rank() const {
  solve();
  return n_ - free_.size();
}

std::vector<std::size_t> SparseNullspace::free_columns() const {
  solve();
  return free_;
}

Matrix SparseNullspace::kernel() const {
  solve();
  return kernel_;
}

void SparseNullspace::solve() const {
  if (solved_) return;
  if (!solve_modular()) solve_exact();
  solved_ = true;
}

void SparseNullspace::solve_exact() const {
  Echelon<RationalOps> e(n_, RationalOps{});
  for (const auto& eq : equations_) e.add(eq);
  free_ = e.free_columns();
  auto k = e.kernel(free_);
  kernel_ = Matrix(n_, free_.size());
  for (std::size_t f = 0; f < free_.size(); ++f) {
    for (std::size_t j = 0; j < n_; ++j) kernel_(j, f) = std::move(k[f][j]);
  }
}

// Kernels modulo several primes, combined by CRT and lifted by rational
// reconstruction.  A lift is accepted only after it is checked against every
// equation over Q and has the reduced echelon shape, so the result is the
// exact kernel; otherwise the caller falls back to exact elimination.
bool SparseNullspace::solve_modular() const {
  std::vector<std::vector<std::pair<mpz_class, mpz_class>>> fractions;
  fractions.reserve(equations_.size());
  for (const auto& eq : equations_) {
    std::vector<std::pair<mpz_class, mpz_class>> row;
    row.reserve(eq.size());
    for (const auto& [j, v] : eq) {
      mpq_class q = v.to_mpq();
      row.emplace_back(q.get_num(), q.get_den());
    }
    fractions.push_back(std::move(row));
  }

  std::vector<std::size_t> free;
  std::vector<std::vector<mpz_class>> residues;  // [f][j] modulo `modulus`
  mpz_class modulus = 0;
  std::size_t used = 0;
  for (std::uint64_t p : primes()) {
    if (used == kMaxPrimes) break;
    ModOps ops{p};
    Echelon<ModOps> e(n_, ops);
    bool bad_prime = false;
    for (std::size_t r = 0; r < equations_.size() && !bad_prime; ++r) {
      Echelon<ModOps>::Row row;
      row.reserve(fractions[r].size());
      for (std::size_t t = 0; t < fractions[r].size(); ++t) {
        const auto& [num, den] = fractions[r][t];
        std::uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
        if (d == 0) {
          bad_prime = true;
          break;
        }
        std::uint64_t v = ops.mulmod(mpz_fdiv_ui(num.get_mpz_t(), p), ops.inverse(d));
        if (v != 0) row.emplace_back(equations_[r][t].first, v);
      }
      if (!row.empty()) e.add(row);
    }
    if (bad_prime) continue;
    std::vector<std::size_t> f = e.free_columns();
    if (modulus != 0 && f != free) {
      // The smaller free set has the larger rank and is the right one.
      if (f.size() > free.size()) continue;
      modulus = 0;
      used = 0;
    }
    free = f;
    auto k = e.kernel(free);
    ++used;
    if (modulus == 0) {
      residues.assign(free.size(), std::vector<mpz_class>(n_));
      for (std::size_t c = 0; c < free.size(); ++c) {
        for (std::size_t j = 0; j < n_; ++j) residues[c][j] = static_cast<unsigned long>(k[c][j]);
      }
      modulus = static_cast<unsigned long>(p);
    } else {
      // x = r + m * ((k - r) * m^{-1} mod p)
      mpz_class pz = static_cast<unsigned long>(p), minv;
      mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
      for (std::size_t c = 0; c < free.size(); ++c) {
        for (std::size_t j = 0; j < n_; ++j) {
          mpz_class& r = residues[c][j];
          mpz_class delta = (mpz_class(static_cast<unsigned long>(k[c][j])) - r) * minv;
          mpz_fdiv_r(delta.get_mpz_t(), delta.get_mpz_t(), pz.get_mpz_t());
          r += modulus * delta;
        }
      }
      modulus *= pz;
    }
    if (auto lifted = lift(free, residues, modulus)) {
      free_ = std::move(free);
      kernel_ = std::move(*lifted);
      return true;
    }
  }
  return false;
}

std::optional<Matrix> SparseNullspace::lift(const std::vector<std::size_t>& free,
                                            const std::vector<std::vector<mpz_class>>& residues,
                                            const mpz_class& modulus) const {
  std::vector<char> is_free(n_, 0);
  for (std::size_t f : free) is_free[f] = 1;
  Matrix k(n_, free.size());
  for (std::size_t c = 0; c < free.size(); ++c) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (residues[c][j] == 0) continue;
      if (!is_free[j] && j > free[c]) return std::nullopt;
      auto q = reconstruct(residues[c][j], modulus);
      if (!q) return std::nullopt;
      k(j, c) = Scalar(*q);
    }
  }
  for (const auto& eq : equations_) {
    for (std::size_t c = 0; c < free.size(); ++c) {
      Scalar sum;
      for (const auto& [j, v] : eq) {
        const Scalar& x = k(j, c);
        if (!x.is_zero()) sum.sub_mul(v, x);
      }
      if (!sum.is_zero()) return std::nullopt;
    }
  }
  return k;
}

}  // namespace glrep
