#pragma once

// Smith normal forms of 0/1 matrices.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bentkit/bit_matrix.hpp"

namespace bentkit {

using BigInt = boost::multiprecision::cpp_int;

// Nonzero elementary divisors with multiplicities, divisors increasing.
struct SnfMultiset {
  std::vector<std::pair<BigInt, std::size_t>> entries;

  std::size_t multiplicity(const BigInt& divisor) const;
  std::size_t rank() const;  // total multiplicity
  // Each divisor divides the next.
  bool is_chain() const;

  // "1^8 2^15 4^20"
  std::string to_string() const;
  static SnfMultiset parse(std::string_view text);
  // Collapses a diagonal (in any order, zeros dropped) into a multiset.
  static SnfMultiset from_diagonal(std::vector<BigInt> diagonal);

  friend bool operator==(const SnfMultiset&, const SnfMultiset&) = default;
  friend bool operator<(const SnfMultiset& a, const SnfMultiset& b) { return a.entries < b.entries; }
};

// Local elimination over Z/2^64: the pivot is an entry of least 2-adic
// valuation, and unit multiples of it clear its column. Returns the 2-parts
// of the elementary divisors. Throws Inconsistency if the number of divisors
// found disagrees with the rank over Q (checked modulo a 61-bit prime), which
// would mean a divisor is divisible by 2^64.
SnfMultiset smith_normal_form(const BitMatrix& m);

// General integer Smith form by gcd elimination in arbitrary precision.
// Slow; meant for matrices up to a few hundred rows.
SnfMultiset smith_normal_form_integer(const BitMatrix& m);

// Rank over GF(p) for the Mersenne prime p = 2^61 - 1.
std::size_t rank_mod_p(const BitMatrix& m);

}  // namespace bentkit
