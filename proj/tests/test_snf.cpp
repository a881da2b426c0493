#include <random>

#include "doctest.h"

#include "bentkit/catalog.hpp"
#include "bentkit/designs.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/snf.hpp"

using namespace bentkit;

namespace {

BitMatrix random_matrix(std::size_t r, std::size_t c, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution bit(density);
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, bit(rng));
  return m;
}

// 2-parts of a full integer Smith form.
SnfMultiset two_parts(const SnfMultiset& s) {
  std::vector<BigInt> diag;
  for (const auto& [d, k] : s.entries) {
    BigInt p = 1;
    BigInt x = d;
    while ((x & 1) == 0) {
      x >>= 1;
      p <<= 1;
    }
    for (std::size_t i = 0; i < k; ++i) diag.push_back(p);
  }
  return SnfMultiset::from_diagonal(std::move(diag));
}

}  // namespace

TEST_CASE("2-adic elimination agrees with integer Smith form") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = 4 + rng() % 30;
    const std::size_t c = 4 + rng() % 30;
    const auto m = random_matrix(r, c, t % 3 == 0 ? 0.2 : 0.5, rng);
    const auto full = smith_normal_form_integer(m);
    CHECK(full.is_chain());
    const auto local = smith_normal_form(m);
    CHECK(local == two_parts(full));
    CHECK(local.rank() == rank_mod_p(m));
  }
}

TEST_CASE("Smith form of a small design matrix") {
  // dev(D_f) for x1x2 + x3x4 is a 2-(16,6,2) design, so M M^T = 4I + 2J.
  BitMatrix inc(16, 16);
  for (Point g = 0; g < 16; ++g) {
    for (Point x = 0; x < 16; ++x) {
      const Point y = x ^ g;
      inc.set(g, x, ((y & 1) & ((y >> 1) & 1)) ^ (((y >> 2) & 1) & ((y >> 3) & 1)));
    }
  }
  const auto full = smith_normal_form_integer(inc);
  CHECK(full.rank() == 16);
  CHECK(full.is_chain());
  CHECK(smith_normal_form(inc) == two_parts(full));
  BigInt det = 1;
  for (const auto& [d, k] : full.entries)
    for (std::size_t i = 0; i < k; ++i) det *= d;
  // det(M)^2 = det(4I + 2J) = 4^15 * 36
  CHECK(det * det == (BigInt(1) << 30) * 36);
}

TEST_CASE("identity and zero matrices") {
  CHECK(smith_normal_form(BitMatrix::identity(70)).to_string() == "1^70");
  CHECK(smith_normal_form(BitMatrix(5, 9)).rank() == 0);
  CHECK(smith_normal_form_integer(BitMatrix::identity(3)).to_string() == "1^3");
}

TEST_CASE("catalog Smith forms match the published values") {
  for (const auto& e : catalog_entries()) {
    CHECK_MESSAGE(smith_normal_form(dev_graph(e.representative).incidence()) == e.expected_snf, e.id());
  }
}

TEST_CASE("multiset text") {
  const auto s = SnfMultiset::parse("1^8 2^15 4^20");
  CHECK(s.to_string() == "1^8 2^15 4^20");
  CHECK(s.rank() == 43);
  CHECK(s.multiplicity(2) == 15);
  CHECK(s.multiplicity(8) == 0);
  CHECK(s.is_chain());
  CHECK(SnfMultiset::from_diagonal({4, 0, 1, 4, 2}).to_string() == "1^1 2^1 4^2");
  CHECK_FALSE(SnfMultiset::parse("2^1 3^1").is_chain());
  CHECK_THROWS_AS(SnfMultiset::parse("1^"), ParseError);
}
