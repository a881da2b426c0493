#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"

#include "bentkit/canonical.hpp"
#include "bentkit/catalog.hpp"
#include "bentkit/designs.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/examples.hpp"

using namespace bentkit;

namespace {

std::vector<std::uint32_t> random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0U);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

IncidenceStructure relabel(const IncidenceStructure& d, std::mt19937_64& rng) {
  const auto rp = random_perm(d.num_blocks(), rng);
  const auto cp = random_perm(d.num_points(), rng);
  return IncidenceStructure(d.incidence().permute_rows(rp).permute_cols(cp));
}

IncidenceStructure fano() {
  BitMatrix m(7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t s : {0, 1, 3}) m.set(i, (i + s) % 7);
  return IncidenceStructure(m);
}

}  // namespace

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937_64 rng(31);
  const std::vector<IncidenceStructure> designs = {fano(), dev_support(catalog(1, 2).representative.coordinate(0)),
                                                   addition_design(catalog(2, 5).representative)};
  for (const auto& d : designs) {
    const auto ref = canonical_form(d);
    for (int t = 0; t < 100 / static_cast<int>(designs.size()); ++t) {
      const auto e = relabel(d, rng);
      const auto c = canonical_form(e);
      REQUIRE(c.matrix == ref.matrix);
      CHECK(c.hash() == ref.hash());
      CHECK(e.incidence().permute_rows(c.block_order).permute_cols(c.point_order) == c.matrix);
    }
  }
}

TEST_CASE("automorphism group orders") {
  CHECK(aut_group_order(fano()) == 168);
  BitMatrix k4(6, 4);  // edges of K4 as blocks
  std::size_t r = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) {
      k4.set(r, a);
      k4.set(r++, b);
    }
  CHECK(aut_group_order(IncidenceStructure(k4)) == 24);
  CHECK(aut_group_order(IncidenceStructure(BitMatrix::identity(5))) == 120);
}

TEST_CASE("catalog automorphism orders of dev(G_F)") {
  for (int m = 1; m <= 2; ++m) {
    for (int i = 1; i <= catalog_size(m); ++i) {
      const auto& e = catalog(m, i);
      CHECK_MESSAGE(aut_group_order(dev_graph(e.representative)) == e.expected_design_aut_order, e.id());
    }
  }
}

TEST_CASE("search budget") {
  CanonicalOptions tiny;
  tiny.node_budget = 2;
  CHECK_THROWS_AS(canonical_form(dev_support(catalog(1, 1).representative.coordinate(0)), tiny), ResourceLimit);
}

TEST_CASE("isomorphism with verified witness") {
  std::mt19937_64 rng(32);
  const auto d = addition_design(catalog(1, 3).representative);
  const auto e = relabel(d, rng);
  const auto r = are_isomorphic(d, e);
  REQUIRE(r.isomorphic);
  REQUIRE(r.witness);
  CHECK(verify_witness(d, e, *r.witness));
  CHECK_FALSE(are_isomorphic(d, addition_design(catalog(1, 4).representative)).isomorphic);
  CHECK_FALSE(are_isomorphic(fano(), IncidenceStructure(BitMatrix::identity(7))).isomorphic);
}

TEST_CASE("witness extension to direct sums") {
  const auto p = quadratic_cubic_pair();
  const auto r = are_isomorphic(dev_support(p.f), dev_support(p.f_prime));
  REQUIRE(r.witness);
  const auto q = direct_sum_pair(8);
  CHECK(verify_witness(dev_support(q.f), dev_support(q.f_prime), extend_witness(*r.witness, 2)));
  const auto g = extend_witness(*r.witness, 1);
  CHECK(verify_witness(dev_graph(VectorialFunction(p.f)), dev_graph(VectorialFunction(p.f_prime)), g));
}
