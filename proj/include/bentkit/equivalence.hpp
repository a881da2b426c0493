#pragma once

// Extended-affine equivalence of bent functions, decided through canonical
// forms of their addition designs.

#include <random>
#include <string>
#include <vector>

#include "bentkit/canonical.hpp"
#include "bentkit/invariants.hpp"

namespace bentkit {

// x -> L x + shift from F_2^in to F_2^out; columns[i] is L e_i.
struct AffineMap {
  int in = 0;
  int out = 0;
  std::vector<Point> columns;
  Point shift = 0;

  Point operator()(Point x) const noexcept {
    Point y = shift;
    for (int i = 0; i < in; ++i) {
      if ((x >> i) & 1U) y ^= columns[static_cast<std::size_t>(i)];
    }
    return y;
  }
  bool is_permutation() const;
};

AffineMap identity_map(int n);
AffineMap random_affine_permutation(int n, std::mt19937_64& rng);
AffineMap random_affine_map(int in, int out, std::mt19937_64& rng);

// x -> A1(F(A2(x))) ^ A3(x). A1 and A2 must be permutations.
VectorialFunction ea_transform(const VectorialFunction& F, const AffineMap& a1, const AffineMap& a2,
                               const AffineMap& a3);
VectorialFunction random_ea_transform(const VectorialFunction& F, std::mt19937_64& rng);

// Everything needed to compare a bent function with others: the
// EA-invariant fingerprint and the canonical form of its addition design.
struct EaInvariant {
  Fingerprint fingerprint;
  CanonicalForm form;
  std::string hash() const { return form.hash(); }
  bool same_class(const EaInvariant& other) const {
    return fingerprint == other.fingerprint && form.matrix == other.form.matrix;
  }
};

// Throws NotBent for non-bent input.
EaInvariant ea_invariant(const VectorialFunction& F, const CanonicalOptions& options = {});

// Throws NotBent unless both functions are bent.
bool ea_equivalent(const VectorialFunction& F1, const VectorialFunction& F2,
                   const CanonicalOptions& options = {});

}  // namespace bentkit
