#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "json.hpp"

#include "bentkit/anf_text.hpp"
#include "bentkit/catalog.hpp"
#include "bentkit/classify.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/walsh.hpp"

using namespace bentkit;

namespace {

// Affine-free bent tables straight from the definitions, n <= 4.
std::vector<std::uint64_t> oracle_affine_free(int n) {
  std::vector<std::uint64_t> out;
  const std::uint64_t size = std::uint64_t{1} << (1U << n);
  for (std::uint64_t t = 0; t < size; ++t) {
    const auto f = word_function(n, t);
    if (!is_bent(f)) continue;
    const Anf a = table_to_anf(f);
    bool low = false;
    for (Point mono : a.monomials()) low |= std::popcount(mono) <= 1;
    if (!low) out.push_back(t);
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bentkit-test-" + name);
}

}  // namespace

TEST_CASE("enumeration at n = 2, 4 matches the definition") {
  for (int n : {2, 4}) {
    auto got = affine_free_bent_tables(n);
    const auto ref = oracle_affine_free(n);
    CHECK(got.size() == ref.size());
    std::sort(got.begin(), got.end());
    CHECK(got == ref);
    CHECK(brute_force_bent(n).affine_free_tables == ref);
  }
  CHECK(affine_free_bent_tables(2).size() == 1);
  CHECK(affine_free_bent_tables(4).size() == 28);
  CHECK(brute_force_bent(4).bent == 896);
  CHECK(brute_force_bent(4).bent == 28 * 32);
}

TEST_CASE("enumeration order and partial runs") {
  EnumerationOptions part;
  part.stop_after = 40;
  const auto a = affine_free_bent_tables(6, part);
  const auto b = affine_free_bent_tables(6, part);
  CHECK(a == b);
  REQUIRE_FALSE(a.empty());
  const BentnessKernel k(6);
  std::set<std::uint64_t> seen;
  for (auto t : a) {
    CHECK(k.is_bent_word(t));
    CHECK(is_affine_free_word(6, t));
    CHECK(seen.insert(t).second);
  }
}

TEST_CASE("parts reassemble tables") {
  const auto& s = monomial_split(6);
  CHECK(s.inner.size() == 15);
  CHECK(s.outer.size() == 20);
  const auto t = table_from_parts(6, 1, 1);
  CHECK(word_function(6, t) == anf_to_table(Anf(6, {s.outer[0], s.inner[0]})));
  CHECK(strip_affine_word(6, t ^ anf_to_table(parse_anf("x2 + 1", 6)).word(0)) == t);
  CHECK_THROWS_AS(monomial_split(5), InvalidInput);
}

TEST_CASE("checkpoint resume equals an uninterrupted run") {
  const auto path = temp_file("ckpt.json");
  std::filesystem::remove(path);
  EnumerationOptions full;
  full.stop_after = 96;
  const auto ref = count_affine_free_bent(6, full);

  EnumerationOptions first;
  first.checkpoint_path = path.string();
  first.checkpoint_interval = 16;
  first.stop_after = 50;
  const auto mid = count_affine_free_bent(6, first);
  CHECK(mid.cursor == 50);
  REQUIRE(std::filesystem::exists(path));
  EnumerationOptions second = first;
  second.stop_after = 46;
  const auto resumed = count_affine_free_bent(6, second);
  CHECK(resumed == ref);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(EnumerationCheckpoint::from_json(text) == resumed);
  CHECK_THROWS_AS(EnumerationCheckpoint::from_json("{\"version\": 99}"), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("bent friends at n = 4") {
  const auto tables = affine_free_bent_tables(4);
  const auto F = VectorialFunction(anf_to_table(parse_anf("x1*x2 + x3*x4", 4)));
  const auto fr = bent_friends(F, tables);
  // Oracle: (F, f) bent iff F ^ f is bent.
  std::size_t expect = 0;
  for (auto t : tables) expect += is_bent(F.coordinate(0) ^ word_function(4, t));
  CHECK(fr.size() == expect);
  CHECK(fr.size() == 12);
  std::vector<BooleanFunction> fns;
  for (auto t : tables) fns.push_back(word_function(4, t));
  CHECK(bent_friends(F, fns).size() == 12);
  const VectorialFunction G({F.coordinate(0), word_function(4, fr.front())});
  CHECK(bent_friends(G, tables).empty());
}

TEST_CASE("bent spaces") {
  const auto& G = catalog(2, 1).representative;
  const auto s = bent_spaces(G);
  CHECK(s.size() == 3);
  for (const auto& sp : s) CHECK(is_bent(sp.function));
  CHECK(bent_spaces(catalog(3, 1).representative).size() == 7);
  ClassRegistry lower(6, 1);
  for (int i = 1; i <= 4; ++i) lower.add(catalog(1, i).representative);
  std::size_t total = 0;
  for (const auto& [idx, c] : bent_space_profile(G, lower)) total += c;
  CHECK(total == 3);
  ClassRegistry empty(6, 1);
  CHECK_THROWS_AS(bent_space_profile(G, empty), Inconsistency);
}

TEST_CASE("class registry") {
  ClassRegistry reg(6, 1);
  bool created = false;
  CHECK(reg.add(catalog(1, 2).representative, &created) == 1);
  CHECK(created);
  CHECK(reg.add(catalog(1, 3).representative, &created) == 2);
  std::mt19937_64 rng(61);
  CHECK(reg.add(random_ea_transform(catalog(1, 2).representative, rng), &created) == 1);
  CHECK_FALSE(created);
  CHECK(reg.find(catalog(1, 4).representative) == 0);
  CHECK(reg.size() == 2);
}

TEST_CASE("classification at n = 4") {
  const auto res = run_algorithm1(4);
  CHECK(res.report.ok());
  CHECK(res.class_counts.at(1) == 1);
  CHECK(res.class_counts.at(2) == 1);
  CHECK(res.affine_free == 28);
  CHECK(res.totals.at(1) == 896);
  CHECK(res.totals.at(2) == brute_force_vectorial_count(4, 2));
  CHECK(res.totals.at(2) == 344064);
  CHECK(brute_force_vectorial_count(4, 2, true) * 1024 == 344064);
  REQUIRE(res.edges.size() == 1);
  CHECK(res.edges[0].spaces == 3);
  CHECK(res.edges[0].friends == 12);
  CHECK(res.only_top_layer_lonely);
  CHECK(emit_hasse_dot(res.records, res.edges).find("C1_1 -> C2_1 [label=\"3 / 12\"]") != std::string::npos);
  const auto again = run_algorithm1(4);
  CHECK(class_records_jsonl(again.records) == class_records_jsonl(res.records));
  CHECK(emit_hasse_json(again.records, again.edges) == emit_hasse_json(res.records, res.edges));
}

TEST_CASE("classification at n = 2") {
  const auto res = run_algorithm1(2);
  CHECK(res.class_counts.at(1) == 1);
  CHECK(res.totals.at(1) == 8);
  CHECK(res.edges.empty());
  const auto doc = nlohmann::json::parse(emit_hasse_json(res.records, res.edges));
  CHECK(doc["edges"].empty());
  CHECK(doc["nodes"].size() == 1);
}

TEST_CASE("cardinality from edges") {
  std::vector<ClassRecord> lower(1);
  lower[0].m = 1;
  lower[0].index = 1;
  lower[0].cardinality = 10;
  std::vector<HasseEdge> edges = {{1, 1, 1, 3, 3}, {1, 2, 1, 5, 1}};
  CHECK_THROWS_AS(class_cardinality(4, lower, edges, 1), Inconsistency);
  edges.pop_back();
  CHECK(class_cardinality(4, lower, edges, 1) == 32 * 30);
  CHECK(gl_order(2) == 6);
  CHECK(gl_order(3) == 168);
}

TEST_CASE("relation checks catch a broken total") {
  auto res = run_algorithm1(4);
  res.records.back().cardinality += 1;
  CHECK_FALSE(verify_relations(4, res.records, res.edges).ok());
}

TEST_CASE("example witness check") {
  const auto f = anf_to_table(parse_anf("x1*x2 + x3*x4", 4));
  std::vector<Point> idv(16);
  for (Point x = 0; x < 16; ++x) idv[x] = x;
  const auto pi = VectorialFunction::from_values(4, 4, idv);
  CHECK(verify_example_witness(f, f, pi, pi));
  const auto g = anf_to_table(parse_anf("x1*x3 + x2*x4", 4));
  CHECK_FALSE(verify_example_witness(f, g, pi, pi));
}
