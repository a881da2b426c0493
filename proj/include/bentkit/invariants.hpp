#pragma once

// Isomorphism invariants of incidence structures and bent functions.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bentkit/bit_matrix.hpp"
#include "bentkit/boolean_function.hpp"
#include "bentkit/designs.hpp"
#include "bentkit/snf.hpp"

namespace bentkit {

// Rank over F_2 of M(dev(G_F)), the multiplicity of 1 in its Smith form.
std::size_t gamma_rank(const VectorialFunction& F);
// Same value for m = 1 from the 65 x 65 style bordered matrix
// [[M_f, 1], [1^T, 0]], which has the rank of [[M_f, M_f+J], [M_f+J, M_f]].
std::size_t gamma_rank_boolean(const BooleanFunction& f);

using Multiset = std::vector<std::pair<std::size_t, std::size_t>>;  // (value, count), values increasing
Multiset make_multiset(std::vector<std::size_t> values);
std::string format_multiset(const Multiset& m);

inline constexpr const char* kFingerprintVersion = "fp1";

// Fields are compared and serialized in declaration order.
struct Fingerprint {
  std::size_t points = 0;
  std::size_t blocks = 0;
  Multiset block_sizes;
  Multiset replications;  // blocks through each point
  std::size_t gf2_rank = 0;
  std::optional<SnfMultiset> snf;
  std::optional<Multiset> degrees;           // algebraic degrees of the components
  std::optional<Multiset> component_ranks;   // Gamma-ranks of the components

  std::string to_string() const;
  std::string hash() const;  // SHA-256 hex of to_string()
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// Invariant under point and block relabeling. The Smith form is skipped
// when with_snf is false.
Fingerprint fingerprint(const IncidenceStructure& d, bool with_snf = true);
// Fingerprint of the addition design plus the function-level fields;
// invariant under EA-equivalence. Requires F bent.
Fingerprint function_fingerprint(const VectorialFunction& F);

std::string sha256_hex(const void* data, std::size_t size);

}  // namespace bentkit
