#pragma once

#include <span>
#include <string>
#include <vector>

#include "bentkit/boolean_function.hpp"

namespace bentkit {

// GF(2^k) in polynomial basis: bit i of an element is the coefficient of z^i.
class BinaryField {
 public:
  // modulus includes the leading term, e.g. 0b1011 for z^3 + z + 1.
  BinaryField(int k, std::uint32_t modulus);
  // GF(8) as F_2[z]/(z^3 + z + 1).
  static BinaryField gf8() { return BinaryField(3, 0b1011); }

  int degree() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return 1U << k_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  // a^(2^k - 2): the inverse for a != 0, and 0 for a = 0.
  std::uint32_t inv(std::uint32_t a) const noexcept { return pow(a, order() - 2); }

  // Evaluates sum_{e in exponents} z^e at every field element.
  std::vector<std::uint32_t> power_sum_map(std::span<const unsigned> exponents) const;

 private:
  int k_;
  std::uint32_t modulus_;
};

// Maps between bit vectors given as value tables over F_2^k.
bool is_permutation(std::span<const std::uint32_t> map);
// Every value in [0, 2^m) has the same number of preimages.
bool is_balanced(std::span<const std::uint32_t> map, int m);

// F(x, y) = L(x * pi(y)) + G(y) on F_2^n = GF(2^k) x GF(2^k), x in the low k
// bits. L is given as m row masks: bit i of L(z) is <rows[i], z>.
VectorialFunction mm_bent(const BinaryField& field, std::span<const std::uint32_t> pi,
                          std::span<const std::uint32_t> linear_rows,
                          std::span<const std::uint32_t> g);

// F(x, y) = H(x * y^(2^k - 2)), so x/0 = 0; H must be balanced onto F_2^m.
VectorialFunction psap_bent(const BinaryField& field, std::span<const std::uint32_t> h, int m);

// The four balanced maps on GF(8) used with these constructions.
std::vector<std::uint32_t> gf8_map(int index);

}  // namespace bentkit
