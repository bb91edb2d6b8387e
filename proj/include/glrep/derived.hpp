#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glrep/thin.hpp"

namespace glrep {

// Total homology dimension sum_n dim H_n(C(G)) for each object G.
std::vector<std::size_t> compactness_table(const Complex& c);

struct PerfectCertificate {
  Complex model;                      // thin, bounded, degreewise finitely generated projective
  ChainMap quasi_iso;                 // model -> C
  std::vector<ThinPiece> generators;  // (order, G, dim V, degree) of each summand e_{G,V}
};
PerfectCertificate perfect_certificate(const Complex& c);

struct TorsionFreeHit {
  int degree = 0;
  std::size_t object = 0;
  std::vector<Scalar> vector;  // coordinates in H_degree(C)(object)
  RepObject homology;          // H_degree(C)
};
// First torsion-free element of H_*(C), scanning degrees upward and objects in site order.
std::optional<TorsionFreeHit> torsion_free_homology(const Complex& c);

// i: e_G -> e_G (x) X, [a] -> [a] (x) a^*(x), with a natural retraction.
struct SplitMono {
  RepObject eg;
  RepObject target;  // e_G (x) X
  RepMap inclusion;
  RepMap retraction;
};
// Throws PreconditionError when x is torsion; InternalError if no retraction exists.
SplitMono eG_split_mono(const RepObject& x, std::size_t g, const std::vector<Scalar>& element);
// Same as eG_split_mono, or empty when no retraction exists.
std::optional<SplitMono> try_eG_split_mono(const RepObject& x, std::size_t g, const std::vector<Scalar>& element);

// iHom(X, Y)_m = sum over i of iHom(X_i, Y_{i+m}), d(f) = d f - (-1)^m f d.
struct InternalHomComplex {
  Complex complex;
  std::vector<SumObject> sums;                     // per degree
  std::vector<std::vector<int>> source_degree;     // per degree, the i of each part
  std::vector<std::vector<InternalHom>> homs;      // per degree, iHom(X_i, Y_{i+m})
};
InternalHomComplex internal_hom_complex(const Complex& x, const Complex& y);

// f^*: iHom(X', Y) -> iHom(X, Y) and g_*: iHom(X, Y) -> iHom(X, Y') for maps of objects.
RepMap internal_hom_pre(const RepMap& f, const InternalHom& from, const InternalHom& to);
RepMap internal_hom_post(const RepMap& g, const InternalHom& from, const InternalHom& to);

// nu: iHom(A, 1) (x) B -> iHom(A, B) for objects.
RepMap evaluation_map(const InternalHom& dual, const InternalHom& hom, const RepObject& b);

struct DualizabilityVerdict {
  bool dualizable = false;
  bool nu_quasi_iso = false;
  std::optional<bool> constant_comparison;  // present when the trivial group is a site object
  HomologyTable source_homology;            // of D(X) (x) X
  HomologyTable target_homology;            // of iHom(X, X)
  std::size_t object = 0;                   // worst object, where the homologies differ most
  std::string witness;
};
// Throws InternalError when the two criteria disagree.
DualizabilityVerdict dualizable_test(const Complex& c);

// Constant complex on H_*(X(1)) with a chain map into X from cycle representatives.
struct ConstantComparison {
  Complex constant;
  ChainMap comparison;
};
ConstantComparison constant_comparison(const Complex& x);

}  // namespace glrep
