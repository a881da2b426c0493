#include <random>

#include "doctest.h"

#include "bentkit/anf_text.hpp"
#include "bentkit/catalog.hpp"
#include "bentkit/equivalence.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/walsh.hpp"

using namespace bentkit;

TEST_CASE("EA transforms preserve bentness and class") {
  std::mt19937_64 rng(51);
  for (int m = 1; m <= 3; ++m) {
    const auto& F = catalog(m, 1 + static_cast<int>(rng() % catalog_size(m))).representative;
    for (int t = 0; t < 3; ++t) {
      const auto G = random_ea_transform(F, rng);
      CHECK(is_bent(G));
      CHECK(ea_equivalent(F, G));
    }
  }
}

TEST_CASE("ea_transform definition") {
  std::mt19937_64 rng(52);
  const auto& F = catalog(2, 2).representative;
  const auto a1 = random_affine_permutation(2, rng);
  const auto a2 = random_affine_permutation(6, rng);
  const auto a3 = random_affine_map(6, 2, rng);
  const auto G = ea_transform(F, a1, a2, a3);
  for (Point x = 0; x < 64; ++x) CHECK(G(x) == (a1(F(a2(x))) ^ a3(x)));
}

TEST_CASE("catalog classes are pairwise inequivalent within a layer") {
  for (int m = 1; m <= 2; ++m) {
    std::vector<EaInvariant> inv;
    for (int i = 1; i <= catalog_size(m); ++i) inv.push_back(ea_invariant(catalog(m, i).representative));
    for (std::size_t i = 0; i < inv.size(); ++i)
      for (std::size_t j = i + 1; j < inv.size(); ++j) CHECK_FALSE(inv[i].same_class(inv[j]));
  }
}

TEST_CASE("affine maps") {
  std::mt19937_64 rng(53);
  CHECK(identity_map(4).is_permutation());
  CHECK(random_affine_permutation(6, rng).is_permutation());
  AffineMap z{3, 3, {1, 2, 3}, 0};
  CHECK_FALSE(z.is_permutation());
}

TEST_CASE("non-bent input") {
  const VectorialFunction f(anf_to_table(parse_anf("x1*x2*x3", 4)));
  CHECK_THROWS_AS(ea_invariant(f), NotBent);
  CHECK_THROWS_AS(ea_equivalent(f, catalog(1, 1).representative), NotBent);
}
