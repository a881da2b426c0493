#include <map>
#include <random>

#include "doctest.h"

#include "bentkit/anf_text.hpp"
#include "bentkit/catalog.hpp"
#include "bentkit/designs.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/walsh.hpp"

using namespace bentkit;

namespace {

BooleanFunction fn(const char* text, int n) { return anf_to_table(parse_anf(text, n)); }

// Multiset of common-block counts over unordered point pairs.
std::map<std::size_t, std::size_t> pair_counts(const IncidenceStructure& d) {
  const auto t = d.incidence().transposed();
  std::map<std::size_t, std::size_t> out;
  for (std::size_t p = 0; p < t.rows(); ++p) {
    for (std::size_t q = p + 1; q < t.rows(); ++q) {
      std::size_t c = 0;
      for (std::size_t w = 0; w < t.stride(); ++w) c += std::popcount(t.row(p)[w] & t.row(q)[w]);
      ++out[c];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("dev(D_f) is a symmetric design with Menon parameters") {
  for (const char* text : {"x1*x2 + x3*x4", "x1*x2 + x3*x4 + 1", "x1*x2 + x3*x4 + x5*x6 + x1*x3*x5"}) {
    const int n = std::string(text).find("x6") != std::string::npos ? 6 : 4;
    const auto f = fn(text, n);
    const auto d = dev_support(f);
    const std::size_t v = std::size_t{1} << n;
    CHECK(d.num_points() == v);
    CHECK(d.num_blocks() == v);
    const std::size_t k = d.block_sizes().front();
    for (auto s : d.block_sizes()) CHECK(s == k);
    const auto pc = pair_counts(d);
    REQUIRE(pc.size() == 1);
    const std::size_t lambda = pc.begin()->first;
    CHECK(lambda * (v - 1) == k * (k - 1));
    const auto p = dev_support_parameters(n, f(0));
    CHECK(p == two_design(v, k, lambda));
    CHECK(validate_parameters(d, p).ok);
  }
}

TEST_CASE("dev(D_f) block g is the support of f(x + g)") {
  const auto f = fn("x1*x2 + x3*x4", 4);
  const auto d = dev_support(f);
  for (Point g = 0; g < 16; ++g) {
    for (Point x = 0; x < 16; ++x) CHECK(d.incidence().get(g, x) == f(x ^ g));
  }
}

TEST_CASE("the three addition design constructions agree") {
  for (const auto& e : catalog_entries()) {
    const auto& F = e.representative;
    const auto a = addition_design(F);
    const auto c = addition_design_concat(F);
    CHECK(same_block_multiset(a, c));
    if (F.m() == 1) CHECK(same_block_multiset(a, addition_design_via_dual(F.coordinate(0))));
    CHECK(validate_parameters(a, addition_design_parameters(6, F.m())).ok);
  }
}

TEST_CASE("addition design is a 2-design") {
  const auto F = catalog(2, 3).representative;
  const auto d = addition_design(F);
  CHECK(d.num_points() == 64);
  CHECK(d.num_blocks() == 3 * 64);
  for (auto s : d.block_sizes()) CHECK(s == bent_min_weight(6));
  const auto pc = pair_counts(d);
  CHECK(pc.size() == 1);
  CHECK(addition_design_parameters(6, 2) == two_design(64, 28, pc.begin()->first));
}

TEST_CASE("minimum weight of the code of a bent function") {
  const auto F = catalog(1, 2).representative;
  const auto code = code_of(F);
  CHECK(code.length == 64);
  CHECK(code.dimension == 8);
  CHECK(min_weight_words(code, bent_min_weight(6) - 1).empty());
  CHECK(min_weight_words(code, bent_min_weight(6)).size() == 64);
}

TEST_CASE("dev(G_F) is divisible with classes x = const") {
  const auto F = catalog(2, 1).representative;
  const auto d = dev_graph(F);
  CHECK(d.num_points() == 256);
  CHECK(d.num_blocks() == 256);
  const auto pc = pair_counts(d);
  REQUIRE(pc.size() == 2);
  // Points sharing x lie in no common block.
  CHECK(pc.begin()->first == 0);
  CHECK(pc.begin()->second == 64 * (4 * 3 / 2));
  const auto p = dev_graph_parameters(6, 2);
  CHECK(p == divisible_design(64, 4, 64, std::next(pc.begin())->first));
  CHECK(validate_parameters(d, p).ok);
}

TEST_CASE("validation reports an offending pair") {
  BitMatrix m(3, 3);
  m.set(0, 0);
  m.set(0, 1);
  m.set(1, 1);
  m.set(1, 2);
  m.set(2, 0);
  m.set(2, 2);
  const auto r = validate_parameters(IncidenceStructure(m), two_design(3, 2, 1));
  CHECK(r.ok);
  m.set(2, 2, false);
  m.set(2, 1);
  const auto bad = validate_parameters(IncidenceStructure(m), two_design(3, 2, 1));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness);
  CHECK(*bad.witness == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("incidence text and hex round trip") {
  std::mt19937_64 rng(5);
  for (std::size_t cols : {1, 7, 64, 65, 130}) {
    BitMatrix m(5, cols);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() & 1U);
    const IncidenceStructure d(m);
    CHECK(parse_incidence(to_text(d)) == d);
    CHECK(parse_incidence(to_hex(d)) == d);
  }
  CHECK_THROWS_AS(parse_incidence("2 3\n101\n"), ParseError);
  CHECK_THROWS_AS(parse_incidence("1 3\n1x1\n"), ParseError);
}

TEST_CASE("design parameter text") {
  CHECK(two_design(16, 6, 2).to_string() == "2-(16,6,2)");
}
