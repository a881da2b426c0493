#pragma once

#include <cstdint>

#if defined(__AVX512F__) && defined(__AVX512VPOPCNTDQ__)
#include <immintrin.h>
#endif
#include <span>
#include <vector>

#include "bentkit/boolean_function.hpp"

namespace bentkit {

// W_f(a) = sum_x (-1)^(f(x) ^ <a,x>), indexed like truth tables.
struct WalshSpectrum {
  int n = 0;
  std::vector<std::int32_t> values;
};

WalshSpectrum walsh_transform(const BooleanFunction& f);

// 2^(n-1) - max_{a, b != 0} |W_F(a,b)| / 2
int nonlinearity(const VectorialFunction& F);
int nonlinearity(const BooleanFunction& f);

// Every nonzero component has a flat spectrum of magnitude 2^(n/2). Odd n
// and m > n/2 are rejected without spectral work.
bool is_bent(const VectorialFunction& F);
bool is_bent(const BooleanFunction& f);

// W_f(a) = 2^(n/2) (-1)^dual(a). Throws NotBent.
BooleanFunction dual(const BooleanFunction& f);

// deg(F) <= n/2
bool degree_bound_check(const VectorialFunction& F);

// Word-parallel bentness test: W_f(a) = 2^n - 2 wt(f ^ l_a), evaluated with
// popcounts over packed linear functions and abandoned at the first value
// that is not +-2^(n/2). No spectrum is materialized.
class BentnessKernel {
 public:
  explicit BentnessKernel(int n);

  int num_vars() const noexcept { return n_; }
  bool is_bent(const BooleanFunction& f) const;

  // n <= 6 only: the table is one word. Values are tested in branch-free
  // groups of eight; about half of all degree-3 tables pass a single test.
  bool is_bent_word(std::uint64_t table) const noexcept {
    const std::uint64_t* lin = low_linear_.data();
    const std::size_t count = low_linear_.size();
    if (count < 8) {
      for (std::size_t a = 0; a < count; ++a) {
        const int w = std::popcount((table ^ lin[a]) & mask_);
        if (w != lo_ && w != hi_) return false;
      }
      return true;
    }
#if defined(__AVX512F__) && defined(__AVX512VPOPCNTDQ__)
    const __m512i t = _mm512_set1_epi64(static_cast<long long>(table & mask_));
    const __m512i lo = _mm512_set1_epi64(lo_);
    const __m512i hi = _mm512_set1_epi64(hi_);
    for (std::size_t a = 0; a < count; a += 8) {
      const __m512i w = _mm512_popcnt_epi64(_mm512_xor_si512(t, _mm512_loadu_si512(lin + a)));
      if ((_mm512_cmpeq_epi64_mask(w, lo) | _mm512_cmpeq_epi64_mask(w, hi)) != 0xFF) return false;
    }
#else
    for (std::size_t a = 0; a < count; a += 8) {
      int bad = 0;
      for (std::size_t b = a; b < a + 8; ++b) {
        const int w = std::popcount((table ^ lin[b]) & mask_);
        bad |= static_cast<int>(w != lo_) & static_cast<int>(w != hi_);
      }
      if (bad) return false;
    }
#endif
    return true;
  }

 private:
  int n_;
  int lo_;
  int hi_;
  std::uint64_t mask_;
  std::vector<std::uint64_t> low_linear_;  // l_a restricted to one word, a < 2^min(n,6)
};

}  // namespace bentkit
