#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bentkit {

// Dense row-major matrix over F_2, each row padded to whole 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool v = true) noexcept {
    auto& w = words_[r * stride_ + (c >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    w = v ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    words_[r * stride_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }

  std::span<std::uint64_t> row(std::size_t r) noexcept { return {words_.data() + r * stride_, stride_}; }
  std::span<const std::uint64_t> row(std::size_t r) const noexcept {
    return {words_.data() + r * stride_, stride_};
  }

  std::size_t row_weight(std::size_t r) const noexcept {
    std::size_t w = 0;
    for (auto word : row(r)) w += static_cast<std::size_t>(std::popcount(word));
    return w;
  }

  std::vector<std::uint32_t> row_support(std::size_t r) const;

  BitMatrix transposed() const;
  // Rows i of the result are rows perm[i] of this matrix.
  BitMatrix permute_rows(std::span<const std::uint32_t> perm) const;
  // Column j of the result is column perm[j] of this matrix.
  BitMatrix permute_cols(std::span<const std::uint32_t> perm) const;
  BitMatrix complement() const;

  // Stacks the rows of other below this matrix.
  void append_rows(const BitMatrix& other);

  std::span<const std::uint64_t> data() const noexcept { return words_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

// Rank over F_2 by elimination.
std::size_t gf2_rank(BitMatrix m);

}  // namespace bentkit
