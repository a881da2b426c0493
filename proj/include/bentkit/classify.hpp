#pragma once

// Enumeration of affine-free bent functions, bent friends, extensions, bent
// spaces and the layer-by-layer classification of (n,m)-bent functions.
//
// Affine-free means no monomial of degree <= 1, the constant included.
// Tables of functions in at most 6 variables are single 64-bit words.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bentkit/boolean_function.hpp"
#include "bentkit/canonical.hpp"
#include "bentkit/equivalence.hpp"
#include "bentkit/snf.hpp"

namespace bentkit {

// Worker count used when a thread option is 0: BENTKIT_THREADS if set,
// otherwise the hardware concurrency.
unsigned default_thread_count();

// Monomials of degree 2 (inner) and of degree 3..n/2 (outer), each list in
// increasing mask order. Bit i of a part index selects monomial i.
struct MonomialSplit {
  int n = 0;
  std::vector<Point> inner;
  std::vector<Point> outer;
  std::vector<std::uint64_t> inner_tables;  // n <= 6
  std::vector<std::uint64_t> outer_tables;
};

// n in {2, 4, 6}; throws InvalidInput otherwise.
const MonomialSplit& monomial_split(int n);

std::uint64_t table_from_parts(int n, std::uint64_t outer_part, std::uint64_t inner_part);
BooleanFunction word_function(int n, std::uint64_t table);
// Table of the function with every monomial of degree <= 1 removed.
std::uint64_t strip_affine_word(int n, std::uint64_t table);
bool is_affine_free_word(int n, std::uint64_t table);

struct EnumerationProgress {
  std::uint64_t cursor = 0;  // outer parts completed, as a prefix
  std::uint64_t total = 0;   // number of outer parts
  std::uint64_t found = 0;
  double seconds = 0;
};

struct EnumerationOptions {
  unsigned threads = 0;
  std::string checkpoint_path;             // used by count_affine_free_bent only
  std::uint64_t checkpoint_interval = 4096;  // outer parts between checkpoint writes
  std::uint64_t stop_after = UINT64_MAX;     // outer parts to process before returning
  std::function<void(const EnumerationProgress&)> progress;
};

// Every affine-free bent function exactly once. Order: outer parts
// ascending; within one outer part, inner parts ascending. The inner sweep
// runs in Gray-code order and its hits are sorted before emission.
void enumerate_affine_free_bent(int n, const std::function<void(std::uint64_t)>& sink,
                                const EnumerationOptions& options = {});
std::vector<std::uint64_t> affine_free_bent_tables(int n, const EnumerationOptions& options = {});

// Layer-1 class key used on the fast path: algebraic degree and Gamma-rank.
struct LayerOneKey {
  int degree = 0;
  std::size_t gamma_rank = 0;
  auto operator<=>(const LayerOneKey&) const = default;
  std::string to_string() const;  // "deg:rank"
};

LayerOneKey layer_one_key(int n, std::uint64_t table);

// Counting run with checkpoint and resume. The JSON checkpoint holds
// {"version", "n", "cursor", "found", "counts": {"deg:rank": count}}; it
// describes the completed prefix [0, cursor) of outer parts.
struct EnumerationCheckpoint {
  static constexpr int kVersion = 1;
  int version = kVersion;
  int n = 0;
  std::uint64_t cursor = 0;
  std::uint64_t found = 0;
  std::map<LayerOneKey, std::uint64_t> counts;
  bool complete() const;

  std::string to_json() const;
  static EnumerationCheckpoint from_json(const std::string& text);  // throws ParseError
  friend bool operator==(const EnumerationCheckpoint&, const EnumerationCheckpoint&) = default;
};

EnumerationCheckpoint count_affine_free_bent(int n, const EnumerationOptions& options = {});

// Exhaustive over all 2^(2^n) tables, n <= 4.
struct BruteForceCounts {
  std::uint64_t bent = 0;
  std::uint64_t affine_free = 0;
  std::vector<std::uint64_t> affine_free_tables;
};
BruteForceCounts brute_force_bent(int n);
// Number of (n,m)-bent functions counted directly over tuples of bent
// coordinates, n <= 4. With affine_free_only every coordinate is affine-free.
BigInt brute_force_vectorial_count(int n, int m, bool affine_free_only = false);

// Affine-free bent f with (F, f) bent. Empty for m >= n/2.
std::vector<std::uint64_t> bent_friends(const VectorialFunction& F, std::span<const std::uint64_t> candidates,
                                        unsigned threads = 1);
std::vector<BooleanFunction> bent_friends(const VectorialFunction& F,
                                          std::span<const BooleanFunction> candidates);

// Classes of (n,m)-bent functions met so far, indexed 1, 2, ... in order of
// discovery. Lookup goes through a fingerprint bucket, then canonical forms.
class ClassRegistry {
 public:
  ClassRegistry(int n, int m, CanonicalOptions options = {});

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int size() const noexcept { return static_cast<int>(reps_.size()); }
  const CanonicalOptions& options() const noexcept { return options_; }

  // 0 when no known class matches.
  int find(const EaInvariant& inv) const;
  int find(const VectorialFunction& G) const;
  // Registers a new class with G as representative when nothing matches.
  int add(const VectorialFunction& G, EaInvariant inv, bool* created = nullptr);
  int add(const VectorialFunction& G, bool* created = nullptr);

  const VectorialFunction& representative(int index) const;
  const EaInvariant& invariant(int index) const;

 private:
  int n_;
  int m_;
  CanonicalOptions options_;
  std::vector<VectorialFunction> reps_;
  std::vector<EaInvariant> invariants_;
  std::unordered_map<std::string, std::vector<int>> buckets_;
};

// Ext(F) split by the class of (F, f) in upper, for f in friend_tables.
struct ExtensionPartition {
  std::map<int, std::uint64_t> per_class;  // upper index -> |Ext(F, C_j)|
  std::uint64_t total = 0;
  std::uint64_t classified = 0;  // canonical forms computed
};

// (F, f) and (F, strip(f ^ F_b)) share a code, so each such orbit is
// classified once.
ExtensionPartition extensions(const VectorialFunction& F, std::span<const std::uint64_t> friend_tables,
                              ClassRegistry& upper, unsigned threads = 1,
                              const std::function<void(std::uint64_t done, std::uint64_t total)>& progress = {});

// The hyperplane of F_2^(m+1) orthogonal to normal gives the (n,m)-function
// whose components are the components of G indexed by it.
struct BentSpace {
  Point normal = 0;
  VectorialFunction function;
};

std::vector<BentSpace> bent_spaces(const VectorialFunction& G);
// Lower class index -> number of spaces of G in it. Throws Inconsistency if
// a space matches no class of lower.
std::map<int, std::size_t> bent_space_profile(const VectorialFunction& G, const ClassRegistry& lower);

struct ClassRecord {
  int m = 0;
  int index = 0;
  VectorialFunction representative;
  BigInt cardinality;
  std::string fingerprint_hash;
  std::string canonical_hash;
  std::string catalog_id;  // matching published representative, if any
  bool extendable = false;

  std::string id() const { return std::to_string(m) + "," + std::to_string(index); }
};

struct HasseEdge {
  int m = 0;  // lower layer
  int lower = 0;
  int upper = 0;
  BigInt friends;
  std::size_t spaces = 0;
};

BigInt gl_order(int m);

// 2^(n+1) * sum_i |C^m_i| * friends(i, j) over the edges into (m+1, j).
// Throws Inconsistency when an edge refers to a missing lower class.
BigInt class_cardinality(int n, std::span<const ClassRecord> lower, std::span<const HasseEdge> edges,
                         int upper_index);

struct RelationCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  bool ok() const;
  std::string to_string() const;
};

// Affine-free totals counted independently, keyed by m, are compared with
// sum_j |C^m_j| / 2^(m(n+1)); layers without one are checked for
// divisibility only.
RelationReport verify_relations(int n, std::span<const ClassRecord> records, std::span<const HasseEdge> edges,
                                const std::map<int, BigInt>& affine_free_counts = {});

struct LayerOne {
  int n = 0;
  std::vector<std::uint64_t> affine_free;  // enumeration order
  std::vector<ClassRecord> records;
  std::vector<LayerOneKey> keys;  // key of each record (n = 6 fast path)
};

struct Algorithm1Options {
  EnumerationOptions enumeration;
  CanonicalOptions canonical;
  bool label_with_catalog = true;
  std::function<void(const std::string& json_line)> progress;
};

// n = 2, 4: brute force with exact classification. n = 6: the enumeration
// stream, assigned to classes by LayerOneKey; a key that meets a function
// equivalent to another key's representative raises Inconsistency.
LayerOne layer_one(int n, const Algorithm1Options& options = {});

struct Algorithm1Result {
  int n = 0;
  std::vector<ClassRecord> records;  // by layer, then index
  std::vector<HasseEdge> edges;
  RelationReport report;
  std::map<int, BigInt> totals;  // m -> |B(n,m)|
  std::map<int, int> class_counts;
  std::uint64_t affine_free = 0;
  bool only_top_layer_lonely = true;
};

Algorithm1Result run_algorithm1(const LayerOne& base, const Algorithm1Options& options = {});
Algorithm1Result run_algorithm1(int n, const Algorithm1Options& options = {});

// Edge labels "spaces / friends".
std::string emit_hasse_dot(std::span<const ClassRecord> records, std::span<const HasseEdge> edges);
std::string emit_hasse_json(std::span<const ClassRecord> records, std::span<const HasseEdge> edges);
// One JSON object per line: id, representative, cardinality, fingerprint.
std::string class_records_jsonl(std::span<const ClassRecord> records);

// pi and sigma are permutations of F_2^n and f(pi(x) ^ sigma(y)) = f'(x ^ y)
// for all x, y, which makes dev_support(f) and dev_support(f') isomorphic.
bool verify_example_witness(const BooleanFunction& f, const BooleanFunction& f_prime, const VectorialFunction& pi,
                            const VectorialFunction& sigma);

}  // namespace bentkit
