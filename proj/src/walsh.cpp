#include "bentkit/walsh.hpp"

#include <algorithm>
#include <cstdlib>

namespace bentkit {

WalshSpectrum walsh_transform(const BooleanFunction& f) {
  const int n = f.num_vars();
  const std::size_t size = f.domain_size();
  WalshSpectrum s{n, std::vector<std::int32_t>(size)};
  auto& v = s.values;
  for (std::size_t x = 0; x < size; ++x) v[x] = f(static_cast<Point>(x)) ? -1 : 1;
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int32_t a = v[j];
        const std::int32_t b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
  return s;
}

int nonlinearity(const BooleanFunction& f) {
  const auto s = walsh_transform(f);
  std::int32_t peak = 0;
  for (auto w : s.values) peak = std::max(peak, std::abs(w));
  return static_cast<int>((f.domain_size() >> 1) - static_cast<std::size_t>(peak / 2));
}

int nonlinearity(const VectorialFunction& F) {
  int nl = static_cast<int>(std::size_t{1} << F.n());
  for (Point b = 1; b < (Point{1} << F.m()); ++b) nl = std::min(nl, nonlinearity(component(F, b)));
  return nl;
}

bool is_bent(const BooleanFunction& f) {
  const int n = f.num_vars();
  if (n == 0 || n % 2 != 0) return false;
  return BentnessKernel(n).is_bent(f);
}

bool is_bent(const VectorialFunction& F) {
  const int n = F.n();
  if (n == 0 || n % 2 != 0 || F.m() > n / 2) return false;
  const BentnessKernel kernel(n);
  for (Point b = 1; b < (Point{1} << F.m()); ++b) {
    if (!kernel.is_bent(component(F, b))) return false;
  }
  return true;
}

BooleanFunction dual(const BooleanFunction& f) {
  if (!is_bent(f)) throw NotBent("dual requires a bent function");
  const auto s = walsh_transform(f);
  return BooleanFunction::from_predicate(f.num_vars(), [&](Point a) { return s.values[a] < 0; });
}

bool degree_bound_check(const VectorialFunction& F) { return F.degree() <= F.n() / 2; }

// ---------------------------------------------------------------------------

BentnessKernel::BentnessKernel(int n) : n_(n) {
  if (n < 2 || n % 2 != 0 || n > kMaxVars) throw InvalidInput("bentness kernel needs even n in [2, 12]");
  const int half = 1 << (n / 2 - 1);
  const int per_word = n >= 6 ? 32 : (1 << (n - 1));
  // Per-word weight of f ^ l_a is only fixed when the table fits one word.
  lo_ = per_word - (n <= 6 ? half : 0);
  hi_ = per_word + (n <= 6 ? half : 0);
  mask_ = table_mask(n);
  const int low_bits = std::min(n, 6);
  low_linear_.resize(std::size_t{1} << low_bits);
  for (Point a = 0; a < low_linear_.size(); ++a) {
    std::uint64_t w = 0;
    for (Point x = 0; x < (Point{1} << low_bits); ++x) {
      if (dot(a, x)) w |= std::uint64_t{1} << x;
    }
    low_linear_[a] = w;
  }
}

bool BentnessKernel::is_bent(const BooleanFunction& f) const {
  if (f.num_vars() != n_) throw InvalidInput("kernel built for a different n");
  if (n_ <= 6) return is_bent_word(f.word(0));
  const auto words = f.words();
  const std::size_t nwords = words.size();
  const long long full = 1LL << n_;
  const long long half = 1LL << (n_ / 2);
  // a = a_low | a_high << 6: on word j, l_a = low_linear[a_low] ^ (<a_high, j> ? ~0 : 0).
  for (std::size_t ah = 0; ah < nwords; ++ah) {
    for (std::size_t al = 0; al < 64; ++al) {
      const std::uint64_t lin = low_linear_[al];
      long long wt = 0;
      for (std::size_t j = 0; j < nwords; ++j) {
        const std::uint64_t flip = dot(static_cast<Point>(ah), static_cast<Point>(j)) ? ~std::uint64_t{0} : 0;
        wt += std::popcount(words[j] ^ lin ^ flip);
      }
      const long long w = full - 2 * wt;
      if (w != half && w != -half) return false;
    }
  }
  return true;
}

}  // namespace bentkit
