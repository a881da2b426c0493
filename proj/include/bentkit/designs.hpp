#pragma once

// Incidence structures and linear codes built from (n,m)-functions.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bentkit/bit_matrix.hpp"
#include "bentkit/boolean_function.hpp"

namespace bentkit {

// Points are the columns of the b x v incidence matrix, blocks its rows.
class IncidenceStructure {
 public:
  IncidenceStructure() = default;
  explicit IncidenceStructure(BitMatrix incidence) : incidence_(std::move(incidence)) {}

  std::size_t num_points() const noexcept { return incidence_.cols(); }
  std::size_t num_blocks() const noexcept { return incidence_.rows(); }
  const BitMatrix& incidence() const noexcept { return incidence_; }

  std::vector<Point> block(std::size_t i) const { return incidence_.row_support(i); }
  std::vector<std::size_t> block_sizes() const;

  // Blocks as row bit strings, sorted; equal for structures with the same
  // block multiset on the same labelled points.
  std::vector<std::vector<std::uint64_t>> sorted_blocks() const;

  friend bool operator==(const IncidenceStructure&, const IncidenceStructure&) = default;

 private:
  BitMatrix incidence_;
};

bool same_block_multiset(const IncidenceStructure& a, const IncidenceStructure& b);

struct LinearCode {
  std::size_t length = 0;
  BitMatrix generators;  // one generator per row
  std::size_t dimension = 0;
};

// Row space of [1; x; F(x)] with columns indexed by x in table order.
LinearCode code_of(const VectorialFunction& F);

// All codewords of weight exactly w, in order of their coordinates with
// respect to an echelon basis.
std::vector<std::vector<std::uint64_t>> min_weight_words(const LinearCode& code, std::size_t w);

// 2^(n-1) - 2^(n/2-1)
std::size_t bent_min_weight(int n);

// Blocks are the supports of the minimum-weight codewords of code_of(F).
IncidenceStructure addition_design(const VectorialFunction& F);
// Row x: dual(x) ^ f(y) ^ <x,y> ^ dual(0), after shifting f so that
// f(0) = dual(0) = 0.
IncidenceStructure addition_design_via_dual(const BooleanFunction& f);
// Stacks addition_design_via_dual over the nonzero components b = 1, 2, ...
IncidenceStructure addition_design_concat(const VectorialFunction& F);

// Blocks D_f + g for g = 0, 1, ...; entry (g, x) is f(x ^ g).
IncidenceStructure dev_support(const BooleanFunction& f);
// Points (x, y) as x | y << n, blocks G_F + (g, h) in the same order.
IncidenceStructure dev_graph(const VectorialFunction& F);

enum class DesignKind { kTwoDesign, kDivisible };

struct DesignParameters {
  DesignKind kind = DesignKind::kTwoDesign;
  std::size_t v = 0;
  std::size_t k = 0;
  std::size_t lambda = 0;
  std::size_t mu = 0;  // point classes (divisible designs)
  std::size_t nu = 0;  // class size (divisible designs)

  std::string to_string() const;
  friend bool operator==(const DesignParameters&, const DesignParameters&) = default;
};

DesignParameters two_design(std::size_t v, std::size_t k, std::size_t lambda);
DesignParameters divisible_design(std::size_t mu, std::size_t nu, std::size_t k, std::size_t lambda);

// Expected parameters of the structures above for a bent (n,m)-function.
DesignParameters addition_design_parameters(int n, int m);
DesignParameters dev_support_parameters(int n, bool value_at_zero);
DesignParameters dev_graph_parameters(int n, int m);

struct ValidationReport {
  bool ok = true;
  std::string message;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // offending point pair
};

// Counts blocks through every point pair. For divisible designs the point
// classes are the components of the "no common block" relation.
ValidationReport validate_parameters(const IncidenceStructure& d, const DesignParameters& expected);

// Plain text: header "b v", then one row of '0'/'1' per block. The hex form
// writes each row as little-endian 64-bit words in 16-digit hex groups,
// least significant column first.
std::string to_text(const IncidenceStructure& d);
std::string to_hex(const IncidenceStructure& d);
IncidenceStructure parse_incidence(const std::string& text);

}  // namespace bentkit
