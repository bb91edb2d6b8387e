#pragma once

#include <cstdint>
#include <random>

#include "glrep/complex.hpp"

namespace glrep {

// Seeded instance stream.  The engine is the 64-bit LCG
//   state' = 6364136223846793005 * state + 1442695040888963407 (mod 2^64)
// and every integer draw in [0, n) is (state' >> 33) mod n, so the stream
// is reproducible from the seed in any language.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>((next() >> 33) % n); }
  long long between(long long lo, long long hi) { return lo + static_cast<long long>(below(static_cast<std::size_t>(hi - lo + 1))); }
  Scalar small_scalar() { return Scalar(between(-2, 2)); }
  bool coin() { return below(2) == 1; }

 private:
  std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL> engine_;
};

struct RandomOptions {
  int lo = 0;
  int hi = 3;
  std::size_t max_multiplicity = 2;  // copies of each generator e_G per term
  std::size_t max_generators = 2;    // distinct generators per term
};

// Sum of generators e_G, each with multiplicity at most max_multiplicity.
SumObject random_projective(const Site& site, Rng& rng, const RandomOptions& opt = {});
// Random combination of a Hom-space basis.
RepMap random_map(const RepObject& x, const RepObject& y, Rng& rng);
// Cokernel of a random map between random projectives.
RepObject random_object(const Site& site, Rng& rng, const RandomOptions& opt = {});
// Complex of projectives with random differentials satisfying d^2 = 0.
Complex random_projective_complex(const Site& site, Rng& rng, const RandomOptions& opt = {});
// Complex with arbitrary terms built the same way.
Complex random_complex(const Site& site, Rng& rng, const RandomOptions& opt = {});
// Cone of the identity of a random complex, under a random change of basis.
Complex random_acyclic(const Site& site, Rng& rng, const RandomOptions& opt = {});
// Random element of the chain maps X -> Y.
ChainMap random_chain_map(const Complex& x, const Complex& y, Rng& rng);
// Random pointwise invertible matrices for each degree and object (unitriangular times permutation).
std::vector<std::vector<Matrix>> random_basis_change(const Complex& c, Rng& rng);

}  // namespace glrep
