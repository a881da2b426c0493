#include <random>

#include "doctest.h"

#include "bentkit/catalog.hpp"
#include "bentkit/classify.hpp"
#include "bentkit/designs.hpp"
#include "bentkit/equivalence.hpp"
#include "bentkit/invariants.hpp"
#include "bentkit/snf.hpp"

using namespace bentkit;

TEST_CASE("Gamma-rank from the bordered matrix equals the rank of dev(G_f)") {
  std::mt19937_64 rng(41);
  for (int i = 1; i <= catalog_size(1); ++i) {
    const auto& F = catalog(1, i).representative;
    for (int t = 0; t < 5; ++t) {
      const auto G = random_ea_transform(F, rng);
      const auto& g = G.coordinate(0);
      const auto r = gamma_rank(G);
      CHECK(r == gf2_rank(dev_graph(G).incidence()));
      CHECK(gamma_rank_boolean(g) == r);
      CHECK(layer_one_key(6, g.word(0)).gamma_rank == r);
      CHECK(layer_one_key(6, g.word(0)).degree == G.degree());
    }
  }
}

TEST_CASE("Gamma-rank equals the multiplicity of 1 in the Smith form") {
  for (const auto& e : catalog_entries()) {
    CHECK(gamma_rank(e.representative) == e.expected_snf.multiplicity(1));
  }
}

TEST_CASE("fingerprints are relabeling and EA invariant") {
  std::mt19937_64 rng(42);
  const auto& F = catalog(2, 4).representative;
  const auto fp = function_fingerprint(F);
  for (int t = 0; t < 4; ++t) CHECK(function_fingerprint(random_ea_transform(F, rng)) == fp);
  CHECK(function_fingerprint(catalog(2, 5).representative) != fp);
  CHECK(fp.hash() == sha256_hex(fp.to_string().data(), fp.to_string().size()));
  CHECK(fp.to_string().rfind(kFingerprintVersion, 0) == 0);
}

TEST_CASE("multisets") {
  const auto m = make_multiset({3, 1, 3, 2, 3});
  CHECK(m == Multiset{{1, 1}, {2, 1}, {3, 3}});
  CHECK(format_multiset(m) == "1^1 2^1 3^3");
}

TEST_CASE("SHA-256 test vector") {
  CHECK(sha256_hex("abc", 3) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
