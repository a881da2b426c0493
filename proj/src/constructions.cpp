#include "bentkit/constructions.hpp"

#include <array>
#include <map>

namespace bentkit {

BinaryField::BinaryField(int k, std::uint32_t modulus) : k_(k), modulus_(modulus) {
  if (k < 1 || k > 16) throw InvalidInput("field degree out of range");
  if ((modulus >> k) != 1U) throw InvalidInput("modulus must have degree k");
  // The quotient ring has zero divisors iff the modulus is reducible.
  if (k <= 8) {
    for (std::uint32_t a = 1; a < order(); ++a) {
      for (std::uint32_t b = 1; b < order(); ++b) {
        if (mul(a, b) == 0) throw InvalidInput("modulus is reducible");
      }
    }
  }
}

std::uint32_t BinaryField::mul(std::uint32_t a, std::uint32_t b) const noexcept {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> k_) a ^= modulus_;
  }
  return r;
}

std::uint32_t BinaryField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> BinaryField::power_sum_map(std::span<const unsigned> exponents) const {
  std::vector<std::uint32_t> out(order(), 0);
  for (std::uint32_t z = 0; z < order(); ++z) {
    for (unsigned e : exponents) out[z] ^= (e == 0 ? 1U : pow(z, e));
  }
  return out;
}

bool is_permutation(std::span<const std::uint32_t> map) {
  std::vector<bool> seen(map.size(), false);
  for (auto v : map) {
    if (v >= map.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_balanced(std::span<const std::uint32_t> map, int m) {
  if (m < 0 || m > 31) return false;
  const std::size_t targets = std::size_t{1} << m;
  if (map.empty() || map.size() % targets != 0) return false;
  std::vector<std::size_t> fiber(targets, 0);
  for (auto v : map) {
    if (v >= targets) return false;
    ++fiber[v];
  }
  const std::size_t expected = map.size() / targets;
  for (auto c : fiber) {
    if (c != expected) return false;
  }
  return true;
}

VectorialFunction mm_bent(const BinaryField& field, std::span<const std::uint32_t> pi,
                          std::span<const std::uint32_t> linear_rows,
                          std::span<const std::uint32_t> g) {
  const int k = field.degree();
  const std::uint32_t q = field.order();
  if (pi.size() != q || g.size() != q) throw InvalidInput("maps must be defined on the whole field");
  if (!is_permutation(pi)) throw InvalidInput("pi is not a permutation");
  const int m = static_cast<int>(linear_rows.size());
  if (m < 1 || m > k) throw InvalidInput("output dimension must lie in [1, k]");
  for (auto r : linear_rows) {
    if (r >= q) throw InvalidInput("linear map row exceeds k bits");
  }
  for (auto v : g) {
    if (v >> m) throw InvalidInput("G exceeds m bits");
  }
  std::vector<Point> values(std::size_t{1} << (2 * k));
  for (std::uint32_t y = 0; y < q; ++y) {
    for (std::uint32_t x = 0; x < q; ++x) {
      const std::uint32_t z = field.mul(x, pi[y]);
      Point v = 0;
      for (int i = 0; i < m; ++i) v |= static_cast<Point>(dot(linear_rows[static_cast<std::size_t>(i)], z)) << i;
      values[x | (y << k)] = v ^ g[y];
    }
  }
  return VectorialFunction::from_values(2 * k, m, values);
}

VectorialFunction psap_bent(const BinaryField& field, std::span<const std::uint32_t> h, int m) {
  const int k = field.degree();
  const std::uint32_t q = field.order();
  if (h.size() != q) throw InvalidInput("H must be defined on the whole field");
  if (m < 1 || m > k) throw InvalidInput("output dimension must lie in [1, k]");
  if (!is_balanced(h, m)) throw InvalidInput("H is not balanced");
  std::vector<Point> values(std::size_t{1} << (2 * k));
  for (std::uint32_t y = 0; y < q; ++y) {
    const std::uint32_t yinv = field.inv(y);
    for (std::uint32_t x = 0; x < q; ++x) values[x | (y << k)] = h[field.mul(x, yinv)];
  }
  return VectorialFunction::from_values(2 * k, m, values);
}

std::vector<std::uint32_t> gf8_map(int index) {
  static const std::map<int, std::vector<unsigned>> kExponents = {
      {1, {1}}, {2, {3}}, {3, {1, 3, 5}}, {4, {2, 3, 4, 5, 6}}};
  const auto it = kExponents.find(index);
  if (it == kExponents.end()) throw NotFound("no GF(8) map pi_" + std::to_string(index));
  return BinaryField::gf8().power_sum_map(it->second);
}

}  // namespace bentkit
