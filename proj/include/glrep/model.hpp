#pragma once

#include <optional>
#include <vector>

#include "glrep/resolutions.hpp"

namespace glrep {

// Weak equivalences are quasi-isomorphisms, fibrations are degreewise
// surjections, cofibrations are degreewise injections with projective cokernels.
struct MapClass {
  bool we = false;
  bool cof = false;
  bool fib = false;
  bool acf = false;  // we and cof
  bool afb = false;  // we and fib
  friend bool operator==(const MapClass&, const MapClass&) = default;
};
MapClass classify_map(const ChainMap& f);

struct Factorization {
  Complex middle;
  ChainMap first;   // X -> middle
  ChainMap second;  // middle -> Y
  std::vector<SumObject> sums;  // per degree of middle, three parts
  TotalResolution source_resolution;  // PX (only for factor_M)
  TotalResolution target_resolution;  // PY
};

// (Mf)_n = X_n + PX_{n-1} + PY_n with d = [[d, e, 0], [0, -d, 0], [0, -Pf, d]],
// i the inclusion of X and p = [f 0 e].
Factorization factor_M(const ChainMap& f);
// (Nf)_n = X_n + PY_{n+1} + PY_n with d = [[d, 0, 0], [0, -d, 1], [0, 0, d]],
// j the inclusion of X and q = [f 0 e].
Factorization factor_N(const ChainMap& f);

// Cokernel of j in the N factorization, PY_{n+1} + PY_n with d = [[-d, 1], [0, d]],
// together with the projection from Nf and the contraction [[0, 0], [1, 0]].
struct NCokernel {
  Complex complex;
  ChainMap projection;
  GradedMap contraction;
};
NCokernel factor_N_cokernel(const Factorization& n);

// Square with q f = g i, for i: A -> B, q: L -> M, f: A -> L, g: B -> M.
struct LiftingProblem {
  ChainMap i, q, f, g;
};
// A chain map h: B -> L with h i = f and q h = g.  Failure when the classes
// of i and q guarantee a lift throws InternalError.
std::optional<ChainMap> solve_lift(const LiftingProblem& p);

// T = (pullback of B -> M <- L) / A, so that K -> T -> C is a short exact
// sequence with K = ker q and C = cok i; lifts correspond to its splittings.
struct LiftingExtension {
  Complex t;
  ChainMap from_kernel;  // K -> T
  ChainMap to_cokernel;  // T -> C
  bool splits = false;
};
LiftingExtension build_lifting_extension(const LiftingProblem& p);

// Random commuting square with the given i and q, drawn from the space of all squares.
LiftingProblem sample_square(const ChainMap& i, const ChainMap& q, const std::vector<Scalar>& coeffs);
std::size_t square_space_dim(const ChainMap& i, const ChainMap& q);

struct GeneratingSets {
  std::vector<ChainMap> cofibrations;          // Sigma^{n-1} e_G -> Sigma^n Delta(e_G)
  std::vector<ChainMap> acyclic_cofibrations;  // 0 -> Sigma^n Delta(e_G)
};
GeneratingSets generating_sets(const Site& site, int lo, int hi);
// Degree window of generators adequate for maps between the given complexes.
GeneratingSets generating_sets_for(const ChainMap& f);
// True if f has the right lifting property against every generator.  Each
// generator is checked by comparing the space of commuting squares with the
// image of Hom(B, L) under h -> (h i, f h).
bool rlp_check(const ChainMap& f, const std::vector<ChainMap>& generators);
bool has_rlp(const ChainMap& i, const ChainMap& f);

// h: (A (x) D) +_{A (x) C} (B (x) C) -> B (x) D for f: A -> B and g: C -> D,
// with the comparison cok(h) -> cok(f) (x) cok(g).
struct PushoutProduct {
  Pushout pushout;
  ChainMap h;
  ChainMap comparison;
  bool comparison_iso = false;
};
PushoutProduct pushout_product(const ChainMap& f, const ChainMap& g);

// Base change of w: X -> Z along a fibration p: Y -> Z, i.e. the projection P -> Y.
ChainMap pullback_along(const ChainMap& w, const ChainMap& p);
// Cobase change of w: A -> B along a monomorphism i: A -> C, i.e. C -> P.
ChainMap pushout_along(const ChainMap& w, const ChainMap& i);

}  // namespace glrep
