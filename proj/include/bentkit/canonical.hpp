#pragma once

// Canonical labeling of incidence structures by individualization and
// refinement on the point/block colored bipartite graph.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bentkit/designs.hpp"
#include "bentkit/snf.hpp"

namespace bentkit {

struct CanonicalOptions {
  std::uint64_t node_budget = 10'000'000;
};

struct CanonicalForm {
  BitMatrix matrix;                         // rows blocks, columns points, canonical order
  std::vector<std::uint32_t> point_order;   // canonical column j is original point point_order[j]
  std::vector<std::uint32_t> block_order;   // canonical row i is original block block_order[i]

  // SHA-256 of "b v\n" followed by the matrix words, little-endian.
  std::string hash() const;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::size_t generators = 0;
  std::size_t max_depth = 0;
};

struct CanonicalResult {
  CanonicalForm form;
  BigInt automorphism_order;
  std::vector<std::vector<std::uint32_t>> generators;  // on points then blocks (block i is vertex v + i)
  SearchStats stats;
};

// Throws ResourceLimit when the search tree exceeds options.node_budget.
CanonicalResult canonical_labeling(const IncidenceStructure& d, const CanonicalOptions& options = {});
CanonicalForm canonical_form(const IncidenceStructure& d, const CanonicalOptions& options = {});
BigInt aut_group_order(const IncidenceStructure& d, const CanonicalOptions& options = {});

// M(d1) = M(d2) with rows permuted by row_perm and columns by col_perm, in
// the convention of BitMatrix::permute_rows / permute_cols.
struct IsomorphismWitness {
  std::vector<std::uint32_t> row_perm;
  std::vector<std::uint32_t> col_perm;
};

bool verify_witness(const IncidenceStructure& d1, const IncidenceStructure& d2, const IsomorphismWitness& w);

// Index i maps to w(i mod 2^b) + (i - i mod 2^b), where 2^b is the size of
// w. This carries a witness for dev_support(f), dev_support(f') over to
// dev_support of f ^ h, f' ^ h with h on extra_bits more variables, and to
// dev_graph(f), dev_graph(f') with extra_bits = 1.
IsomorphismWitness extend_witness(const IsomorphismWitness& w, int extra_bits);

struct IsomorphismResult {
  bool isomorphic = false;
  std::optional<IsomorphismWitness> witness;  // verified before it is returned
  std::string reason;
};

// Cheap invariants first, then canonical forms.
IsomorphismResult are_isomorphic(const IncidenceStructure& d1, const IncidenceStructure& d2,
                                 const CanonicalOptions& options = {});

}  // namespace bentkit
