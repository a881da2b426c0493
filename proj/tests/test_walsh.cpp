#include <random>

#include "doctest.h"

#include "bentkit/anf_text.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/walsh.hpp"

using namespace bentkit;

namespace {

BooleanFunction random_function(int n, std::mt19937_64& rng) {
  return BooleanFunction::from_predicate(n, [&](Point) { return (rng() & 1U) != 0; });
}

// O(4^n) definition.
std::vector<int> naive_walsh(const BooleanFunction& f) {
  const Point size = static_cast<Point>(f.domain_size());
  std::vector<int> w(size);
  for (Point a = 0; a < size; ++a) {
    int s = 0;
    for (Point x = 0; x < size; ++x) s += (f(x) ^ dot(a, x)) ? -1 : 1;
    w[a] = s;
  }
  return w;
}

BooleanFunction inner_product(int n) {
  std::vector<Point> monos;
  for (int i = 0; i < n / 2; ++i) monos.push_back((Point{1} << i) | (Point{1} << (i + n / 2)));
  return anf_to_table(Anf(n, monos));
}

}  // namespace

TEST_CASE("fast Walsh transform matches the definition") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 8; ++n) {
    for (int t = 0; t < 5; ++t) {
      const auto f = random_function(n, rng);
      const auto w = walsh_transform(f);
      const auto ref = naive_walsh(f);
      CHECK(std::equal(w.values.begin(), w.values.end(), ref.begin()));
    }
  }
}

TEST_CASE("Parseval") {
  std::mt19937_64 rng(12);
  const auto w = walsh_transform(random_function(9, rng));
  long long s = 0;
  for (int v : w.values) s += static_cast<long long>(v) * v;
  CHECK(s == (1LL << 18));
}

TEST_CASE("bentness kernel agrees with the spectrum on 10^6 random tables") {
  std::mt19937_64 rng(13);
  const BentnessKernel k6(6);
  const BentnessKernel k4(4);
  int bent_seen = 0;
  const auto ip = inner_product(6).word(0);
  for (int t = 0; t < 1'000'000; ++t) {
    // Mix uniform tables with perturbations of a bent one so both answers occur.
    std::uint64_t w = rng();
    if (t % 2 == 1) w = ip ^ (rng() & rng() & rng() & rng() & rng());
    const auto f = BooleanFunction::from_words(6, {w});
    const bool expect = is_bent(f);
    REQUIRE(k6.is_bent_word(w) == expect);
    bent_seen += expect;
    if (t % 16 == 0) {
      const auto g = BooleanFunction::from_words(4, {w & 0xFFFF});
      REQUIRE(k4.is_bent_word(w & 0xFFFF) == is_bent(g));
    }
  }
  CHECK(bent_seen > 0);
}

TEST_CASE("kernel on wider functions") {
  std::mt19937_64 rng(14);
  const BentnessKernel k(8);
  CHECK(k.is_bent(inner_product(8)));
  for (int t = 0; t < 200; ++t) {
    const auto f = random_function(8, rng);
    CHECK(k.is_bent(f) == is_bent(f));
  }
}

TEST_CASE("inner product functions are bent with nonlinearity 2^(n-1) - 2^(n/2-1)") {
  for (int n = 2; n <= 10; n += 2) {
    const auto f = inner_product(n);
    CHECK(is_bent(f));
    CHECK(nonlinearity(f) == (1 << (n - 1)) - (1 << (n / 2 - 1)));
    CHECK(degree_bound_check(VectorialFunction(f)) == (n >= 4));
  }
}

TEST_CASE("zero function") {
  const auto z = constant_function(6, false);
  CHECK_FALSE(is_bent(z));
  CHECK(nonlinearity(z) == 0);
}

TEST_CASE("dual of a bent function is bent and dual twice is the identity") {
  const auto f = anf_to_table(parse_anf("x1*x2 + x3*x4 + x5*x6 + x1*x3*x5", 6));
  const auto d = dual(f);
  CHECK(is_bent(d));
  CHECK(dual(d) == f);
  const auto w = walsh_transform(f);
  for (Point a = 0; a < 64; ++a) CHECK(w.values[a] == (d(a) ? -8 : 8));
  CHECK_THROWS_AS(dual(constant_function(6, false)), NotBent);
}

TEST_CASE("vectorial bentness needs every component bent") {
  const auto f1 = anf_to_table(parse_anf("x1*x3 + x2*x4", 4));
  const auto f2 = anf_to_table(parse_anf("x1*x4 + x2*x3 + x2*x4", 4));
  CHECK(is_bent(VectorialFunction({f1, f2})));
  CHECK_FALSE(is_bent(VectorialFunction({f1, f1})));
  CHECK_FALSE(is_bent(VectorialFunction({f1, f2, f1 ^ f2})));
  CHECK(nonlinearity(VectorialFunction({f1, f2})) == 6);
}
