#include <random>

#include "doctest.h"

#include "bentkit/anf_text.hpp"
#include "bentkit/boolean_function.hpp"
#include "bentkit/errors.hpp"

using namespace bentkit;

namespace {

BooleanFunction random_function(int n, std::mt19937_64& rng) {
  return BooleanFunction::from_predicate(n, [&](Point) { return (rng() & 1U) != 0; });
}

// Direct evaluation of a polynomial, no transform involved.
bool eval_anf(const Anf& anf, Point x) {
  bool v = false;
  for (Point mono : anf.monomials()) v ^= (x & mono) == mono;
  return v;
}

}  // namespace

TEST_CASE("ANF of a table evaluates back to the table") {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 9; ++n) {
    const auto f = random_function(n, rng);
    const Anf anf = table_to_anf(f);
    for (Point x = 0; x < f.domain_size(); ++x) CHECK(eval_anf(anf, x) == f(x));
    CHECK(anf_to_table(anf) == f);
  }
}

TEST_CASE("Moebius transform is an involution on packed tables") {
  std::mt19937_64 rng(2);
  const auto f = random_function(8, rng);
  std::vector<std::uint64_t> w(f.words().begin(), f.words().end());
  moebius_in_place(8, w);
  moebius_in_place(8, w);
  CHECK(BooleanFunction::from_words(8, w) == f);
}

TEST_CASE("x1 is the least significant input bit") {
  const auto x1 = coordinate_function(3, 0);
  CHECK(x1(1));
  CHECK_FALSE(x1(2));
  CHECK(anf_to_table(parse_anf("x1", 3)) == x1);
}

TEST_CASE("degree and affine stripping") {
  const Anf a = parse_anf("1 + x2 + x1*x3 + x1*x2*x4", 4);
  CHECK(a.degree() == 3);
  CHECK(strip_affine(a) == parse_anf("x1*x3 + x1*x2*x4", 4));
  CHECK(algebraic_degree(anf_to_table(a)) == 3);
  CHECK(algebraic_degree(constant_function(4, false)) == 0);
}

TEST_CASE("ANF text round trip in both syntaxes") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Anf a = table_to_anf(random_function(6, rng));
    CHECK(parse_anf(format_anf(a), 6) == a);
    // Digit shorthand has no spelling for the constant monomial.
    const Anf b = a ^ Anf(6, {0});
    const Anf& nc = a.contains(0) ? b : a;
    CHECK(parse_anf(format_anf_digits(nc), 6, AnfSyntax::kDigits) == nc);
  }
  CHECK_THROWS_AS(format_anf_digits(Anf(3, {0})), InvalidInput);
  CHECK(parse_anf("14 + 25 + 36", 6, AnfSyntax::kDigits) == parse_anf("x1*x4+x2*x5+x3*x6", 6));
  CHECK(parse_anf("0", 3).empty());
  CHECK(parse_anf("x1 + x1", 3).empty());
}

TEST_CASE("malformed ANF text is rejected") {
  CHECK_THROWS_AS(parse_anf("x1 +", 3), ParseError);
  CHECK_THROWS_AS(parse_anf("x4", 3), ParseError);
  CHECK_THROWS_AS(parse_anf("y1", 3), ParseError);
  CHECK_THROWS_AS(parse_anf("x1**x2", 3), ParseError);
}

TEST_CASE("function JSON round trip") {
  const VectorialFunction F({anf_to_table(parse_anf("x1*x2+x3*x4", 4)), anf_to_table(parse_anf("x1*x3+x2", 4))});
  const auto rec = parse_function_json(function_to_json(F, "demo"));
  CHECK(rec.function == F);
  CHECK(rec.label == "demo");
  CHECK_THROWS_AS(parse_function_json("{\"n\": 4}"), ParseError);
  CHECK_THROWS_AS(parse_function_json("not json"), ParseError);
}

TEST_CASE("components, graph set and normalization") {
  std::mt19937_64 rng(4);
  const VectorialFunction F({random_function(5, rng), random_function(5, rng), random_function(5, rng)});
  for (Point b = 1; b < 8; ++b) {
    const auto c = component(F, b);
    for (Point x = 0; x < 32; ++x) CHECK(c(x) == static_cast<bool>(dot(b, F(x))));
  }
  const auto gs = graph_set(F);
  REQUIRE(gs.elements.size() == 32);
  for (Point x = 0; x < 32; ++x) CHECK(gs.elements[x] == (x | (F(x) << 5)));
  CHECK(normalize_at_zero(F)(0) == 0);
  CHECK(VectorialFunction::from_values(5, 3, F.values()) == F);
}

TEST_CASE("direct sum puts the first function on the low variables") {
  const auto f = anf_to_table(parse_anf("x1*x2", 2));
  const auto h = anf_to_table(parse_anf("x1", 2));
  const auto s = direct_sum(f, h);
  CHECK(table_to_anf(s) == parse_anf("x1*x2 + x3", 4));
}

TEST_CASE("invalid sizes are rejected") {
  CHECK_THROWS_AS(BooleanFunction(kMaxVars + 1), InvalidInput);
  CHECK_THROWS_AS(Anf(3, {8}), InvalidInput);
}
