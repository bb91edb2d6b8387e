#pragma once

#include <vector>

#include "glrep/complex.hpp"

namespace glrep {

// P_0 = sum of e_{G,X(G)}, and P_{i+1} = P_0 of the kernel of P_i -> K_{i-1},
// where K_{-1} = X.  Stops at the first zero kernel.
struct Resolution {
  RepObject input;
  std::vector<Counit> stages;      // stages[i].p0.object is P_i, stages[i].epsilon: P_i -> K_{i-1}
  std::vector<Subobject> kernels;  // K_i = ker(P_i -> K_{i-1}) as a subobject of P_i
  std::vector<RepMap> deltas;      // deltas[i - 1]: P_i -> P_{i-1}
  RepMap augmentation;             // P_0 -> X

  const RepObject& term(std::size_t i) const { return stages.at(i).p0.object; }
  // Index of the last stage; 0 for the zero object.
  std::size_t length() const { return stages.empty() ? 0 : stages.size() - 1; }
  // P_* as a complex in degrees [0, length].
  Complex complex() const;
};

// (max order in the site) - (min order at which X is nonzero).
std::size_t resolution_bound(const RepObject& x);
// Throws InternalError if the bound or the support shift is violated.
Resolution resolve_object(const RepObject& x);
// P_i(f) for every stage i of the source resolution.
std::vector<RepMap> resolution_map(const RepMap& f, const Resolution& source, const Resolution& target);

// Totalization PC_m = sum over i + j = m of P_i(C_j), d = delta + (-1)^i P_i(d_j).
struct TotalResolution {
  Complex complex;
  ChainMap epsilon;                            // PC -> C, the augmentation on i = 0
  Complex input;
  std::vector<Resolution> columns;             // resolution of C_j for j in [lo, hi]
  std::vector<SumObject> sums;                 // per degree of PC
  std::vector<std::vector<std::pair<std::size_t, int>>> index;  // per degree, (i, j) of each part
};
TotalResolution p_total(const Complex& c);
ChainMap p_total_map(const ChainMap& f, const TotalResolution& source, const TotalResolution& target);

// dims[t - lo] = dim Hom_{D(U)}(Sigma^t X, Y), computed as H_t Hom(PX, Y).
struct DerivedHom {
  int lo = 0;
  std::vector<std::size_t> dims;
  std::size_t at(int t) const;
};
DerivedHom derived_hom(const Complex& x, const Complex& y);
// Same, for X already a complex of projectives.
DerivedHom derived_hom_projective(const Complex& px, const Complex& y);

}  // namespace glrep
