#pragma once

// Truth tables, algebraic normal forms and (n,m)-functions.
//
// Inputs x in F_2^n are stored as integers x = sum x_i 2^(i-1), so x1 is the
// least significant bit. Truth tables are packed 64 entries per word, entry x
// at bit (x mod 64) of word (x / 64).

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bentkit/errors.hpp"

namespace bentkit {

inline constexpr int kMaxVars = 12;

using Point = std::uint32_t;

class BooleanFunction {
 public:
  BooleanFunction() : BooleanFunction(0) {}
  explicit BooleanFunction(int n);

  static BooleanFunction from_words(int n, std::vector<std::uint64_t> words);
  static BooleanFunction from_bits(int n, std::span<const std::uint8_t> bits);

  template <class Pred>
  static BooleanFunction from_predicate(int n, Pred&& pred) {
    BooleanFunction f(n);
    const std::size_t size = f.domain_size();
    for (std::size_t x = 0; x < size; ++x) {
      if (pred(static_cast<Point>(x))) f.words_[x >> 6] |= std::uint64_t{1} << (x & 63);
    }
    return f;
  }

  int num_vars() const noexcept { return n_; }
  std::size_t domain_size() const noexcept { return std::size_t{1} << n_; }

  bool operator()(Point x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1U; }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::uint64_t word(std::size_t i) const noexcept { return words_[i]; }

  int weight() const noexcept;
  bool is_zero() const noexcept;

  BooleanFunction operator^(const BooleanFunction& other) const;
  BooleanFunction operator&(const BooleanFunction& other) const;
  BooleanFunction complement() const;

  // f(x ^ shift)
  BooleanFunction translate(Point shift) const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;
  friend std::strong_ordering operator<=>(const BooleanFunction& a, const BooleanFunction& b);

 private:
  int n_;
  std::vector<std::uint64_t> words_;

  void clear_tail() noexcept;
};

// Word mask of the valid table bits for n < 6, all ones otherwise.
std::uint64_t table_mask(int n) noexcept;

BooleanFunction constant_function(int n, bool value);
// x -> <a, x>
BooleanFunction linear_function(int n, Point a);
// The coordinate function x -> x_(i+1), 0-based i.
BooleanFunction coordinate_function(int n, int i);

inline int dot(Point a, Point b) noexcept { return std::popcount(a & b) & 1; }

// Polynomial representation over F_2: each monomial is the set of its
// variables as a bit mask; the zero mask is the constant 1.
class Anf {
 public:
  Anf() : Anf(0, {}) {}
  // Duplicate masks cancel in pairs (coefficients are in F_2).
  Anf(int n, std::vector<Point> monomials);

  int num_vars() const noexcept { return n_; }
  std::span<const Point> monomials() const noexcept { return monomials_; }
  int degree() const noexcept;
  bool empty() const noexcept { return monomials_.empty(); }
  bool contains(Point mask) const noexcept;

  Anf operator^(const Anf& other) const;

  friend bool operator==(const Anf&, const Anf&) = default;

 private:
  int n_;
  std::vector<Point> monomials_;  // sorted ascending, unique
};

// Binary Moebius transform; it is its own inverse on packed tables.
void moebius_in_place(int n, std::span<std::uint64_t> words) noexcept;

BooleanFunction anf_to_table(const Anf& anf);
Anf table_to_anf(const BooleanFunction& f);
int algebraic_degree(const BooleanFunction& f);

// Drops every monomial of degree <= 1, constant included.
Anf strip_affine(const Anf& anf);

struct SupportSet {
  int n = 0;
  std::vector<Point> elements;
};

SupportSet support_set(const BooleanFunction& f);

// result(x, w) = f(x) ^ h(w) with x in the low n bits.
BooleanFunction direct_sum(const BooleanFunction& f, const BooleanFunction& h);

// An (n,m)-function given by its m coordinate functions.
class VectorialFunction {
 public:
  VectorialFunction() = default;
  explicit VectorialFunction(std::vector<BooleanFunction> coords);
  explicit VectorialFunction(BooleanFunction f);
  // values[x] holds F(x) with coordinate i in bit i.
  static VectorialFunction from_values(int n, int m, std::span<const Point> values);

  int n() const noexcept { return n_; }
  int m() const noexcept { return static_cast<int>(coords_.size()); }
  const BooleanFunction& coordinate(int i) const { return coords_.at(static_cast<std::size_t>(i)); }
  std::span<const BooleanFunction> coordinates() const noexcept { return coords_; }

  Point operator()(Point x) const noexcept;
  std::vector<Point> values() const;

  int degree() const;
  // First k coordinates.
  VectorialFunction prefix(int k) const;
  VectorialFunction append(const BooleanFunction& f) const;

  friend bool operator==(const VectorialFunction&, const VectorialFunction&) = default;

 private:
  int n_ = 0;
  std::vector<BooleanFunction> coords_;
};

// x -> <b, F(x)>, b != 0.
BooleanFunction component(const VectorialFunction& F, Point b);

struct GraphSet {
  int n = 0;
  int m = 0;
  std::vector<Point> elements;  // x | F(x) << n, in x order
};

GraphSet graph_set(const VectorialFunction& F);

// F ^ F(0), so that the result vanishes at zero.
VectorialFunction normalize_at_zero(const VectorialFunction& F);

}  // namespace bentkit
