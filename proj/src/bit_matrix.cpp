#include "bentkit/bit_matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "bentkit/errors.hpp"

namespace bentkit {

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

std::vector<std::uint32_t> BitMatrix::row_support(std::size_t r) const {
  std::vector<std::uint32_t> out;
  const auto words = row(r);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::uint64_t w = words[i]; w != 0; w &= w - 1) {
      out.push_back(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
    }
  }
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (auto c : row_support(r)) t.set(c, r);
  }
  return t;
}

BitMatrix BitMatrix::permute_rows(std::span<const std::uint32_t> perm) const {
  if (perm.size() != rows_) throw InvalidInput("row permutation has wrong length");
  BitMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto src = row(perm[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

BitMatrix BitMatrix::permute_cols(std::span<const std::uint32_t> perm) const {
  if (perm.size() != cols_) throw InvalidInput("column permutation has wrong length");
  BitMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (get(r, perm[j])) out.set(r, j);
    }
  }
  return out;
}

BitMatrix BitMatrix::complement() const {
  BitMatrix out(rows_, cols_);
  const std::uint64_t tail = (cols_ & 63) ? (std::uint64_t{1} << (cols_ & 63)) - 1 : ~std::uint64_t{0};
  for (std::size_t r = 0; r < rows_; ++r) {
    auto dst = out.row(r);
    const auto src = row(r);
    for (std::size_t i = 0; i < stride_; ++i) dst[i] = ~src[i];
    if (stride_ > 0) dst[stride_ - 1] &= tail;
  }
  return out;
}

void BitMatrix::append_rows(const BitMatrix& other) {
  if (rows_ == 0 && cols_ == 0) {
    *this = other;
    return;
  }
  if (other.cols_ != cols_) throw InvalidInput("column counts differ");
  words_.insert(words_.end(), other.words_.begin(), other.words_.end());
  rows_ += other.rows_;
}

std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.words_.begin(), a.words_.end(), b.words_.begin(),
                                                b.words_.end());
}

std::size_t gf2_rank(BitMatrix m) {
  std::size_t rank = 0;
  const std::size_t stride = m.stride();
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    const std::size_t wi = col >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (col & 63);
    std::size_t pivot = rank;
    while (pivot < m.rows() && !(m.row(pivot)[wi] & bit)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      auto a = m.row(pivot);
      auto b = m.row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const auto prow = m.row(rank);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      auto rr = m.row(r);
      if (rr[wi] & bit) {
        for (std::size_t i = wi; i < stride; ++i) rr[i] ^= prow[i];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace bentkit
