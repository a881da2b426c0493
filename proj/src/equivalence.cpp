#include "bentkit/equivalence.hpp"

#include "bentkit/walsh.hpp"

namespace bentkit {

bool AffineMap::is_permutation() const {
  if (in != out) return false;
  std::vector<Point> cols(columns);
  // Rank of the linear part by elimination on the column vectors.
  int rank = 0;
  for (int bit = 0; bit < out; ++bit) {
    auto it = std::find_if(cols.begin() + rank, cols.end(), [&](Point c) { return (c >> bit) & 1U; });
    if (it == cols.end()) continue;
    std::iter_swap(cols.begin() + rank, it);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (static_cast<int>(j) != rank && ((cols[j] >> bit) & 1U)) cols[j] ^= cols[static_cast<std::size_t>(rank)];
    }
    ++rank;
  }
  return rank == in;
}

AffineMap identity_map(int n) {
  AffineMap a{n, n, {}, 0};
  for (int i = 0; i < n; ++i) a.columns.push_back(Point{1} << i);
  return a;
}

AffineMap random_affine_map(int in, int out, std::mt19937_64& rng) {
  AffineMap a{in, out, {}, 0};
  const Point mask = out >= 32 ? ~Point{0} : (Point{1} << out) - 1;
  for (int i = 0; i < in; ++i) a.columns.push_back(static_cast<Point>(rng()) & mask);
  a.shift = static_cast<Point>(rng()) & mask;
  return a;
}

AffineMap random_affine_permutation(int n, std::mt19937_64& rng) {
  for (;;) {
    AffineMap a = random_affine_map(n, n, rng);
    if (a.is_permutation()) return a;
  }
}

VectorialFunction ea_transform(const VectorialFunction& F, const AffineMap& a1, const AffineMap& a2,
                               const AffineMap& a3) {
  const int n = F.n();
  const int m = F.m();
  if (a1.in != m || a1.out != m || !a1.is_permutation()) throw InvalidInput("A1 must be an affine permutation of F_2^m");
  if (a2.in != n || a2.out != n || !a2.is_permutation()) throw InvalidInput("A2 must be an affine permutation of F_2^n");
  if (a3.in != n || a3.out != m) throw InvalidInput("A3 must map F_2^n to F_2^m");
  const auto values = F.values();
  std::vector<Point> out(values.size());
  for (Point x = 0; x < values.size(); ++x) out[x] = a1(values[a2(x)]) ^ a3(x);
  return VectorialFunction::from_values(n, m, out);
}

VectorialFunction random_ea_transform(const VectorialFunction& F, std::mt19937_64& rng) {
  const auto a1 = random_affine_permutation(F.m(), rng);
  const auto a2 = random_affine_permutation(F.n(), rng);
  const auto a3 = random_affine_map(F.n(), F.m(), rng);
  return ea_transform(F, a1, a2, a3);
}

EaInvariant ea_invariant(const VectorialFunction& F, const CanonicalOptions& options) {
  if (!is_bent(F)) throw NotBent("EA-equivalence is decided for bent functions only");
  EaInvariant inv;
  inv.fingerprint = function_fingerprint(F);
  inv.form = canonical_form(addition_design(F), options);
  return inv;
}

bool ea_equivalent(const VectorialFunction& F1, const VectorialFunction& F2, const CanonicalOptions& options) {
  if (!is_bent(F1) || !is_bent(F2)) throw NotBent("EA-equivalence is decided for bent functions only");
  if (F1.n() != F2.n() || F1.m() != F2.m()) return false;
  if (!(function_fingerprint(F1) == function_fingerprint(F2))) return false;
  return are_isomorphic(addition_design(F1), addition_design(F2), options).isomorphic;
}

}  // namespace bentkit
