#pragma once

#include <optional>
#include <vector>

#include "glrep/resolutions.hpp"

namespace glrep {

// One summand e_{G,V} of the thin part.
struct ThinPiece {
  std::size_t order = 0;
  std::size_t object = 0;
  int degree = 0;
  std::size_t dim = 0;  // dim V
};

// X = thin + contractible, with both inclusions and projections chain maps.
struct ThinDecomposition {
  Complex input;
  Complex thin;
  Complex contractible;
  GradedMap contraction;  // on the contractible part
  ChainMap thin_inclusion, thin_projection;
  ChainMap contractible_inclusion, contractible_projection;
  SumComplex sum;       // thin + contractible
  ChainMap to_input;    // sum -> X
  ChainMap from_input;  // X -> sum, inverse of to_input
  std::vector<ThinPiece> pieces;
};

// Each layer L_s X(G), |G| = s, splits Out(G)-equivariantly as
// X' + T + B with B the boundaries, X' + B the cycles, and d: T -> B an
// isomorphism.  Generators e_{G,X'} give the thin part; e_{G,T} -> e_{G,B}
// give a contractible part that lifts to a subcomplex of X.  Throws
// PreconditionError when some term is not projective.
ThinDecomposition thin_split(const Complex& x);

// For a complex whose nonzero terms are all s-pure for one s: the thin part
// has zero differential and is isomorphic to the homology.
ThinDecomposition semisimple_split(const Complex& x);

struct ThinReplacement {
  Complex thin;
  ChainMap quasi_iso;  // thin -> C
  TotalResolution total;
  ThinDecomposition split;
};
ThinReplacement thin_replacement(const Complex& c);

// Inverse of a quasi-isomorphism between thin complexes, which is always an
// isomorphism.  Throws PreconditionError if either side is not thin or f is
// not a quasi-isomorphism.
ChainMap thin_iso(const ChainMap& f);

// A chain map f: T1 -> T2 with u2 f homotopic to u1, for quasi-isomorphisms
// u1: T1 -> C and u2: T2 -> C out of complexes of projectives.
std::optional<ChainMap> compare_replacements(const ChainMap& u1, const ChainMap& u2);

}  // namespace glrep
