#include "bentkit/snf.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <sstream>

#include "bentkit/errors.hpp"

namespace bentkit {

std::size_t SnfMultiset::multiplicity(const BigInt& divisor) const {
  for (const auto& [d, k] : entries) {
    if (d == divisor) return k;
  }
  return 0;
}

std::size_t SnfMultiset::rank() const {
  std::size_t r = 0;
  for (const auto& e : entries) r += e.second;
  return r;
}

bool SnfMultiset::is_chain() const {
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    if (entries[i].first >= entries[i + 1].first) return false;
    if (entries[i + 1].first % entries[i].first != 0) return false;
  }
  return entries.empty() || entries.front().first > 0;
}

std::string SnfMultiset::to_string() const {
  std::string out;
  for (const auto& [d, k] : entries) {
    if (!out.empty()) out.push_back(' ');
    out += d.str() + "^" + std::to_string(k);
  }
  return out;
}

SnfMultiset SnfMultiset::parse(std::string_view text) {
  SnfMultiset s;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const auto caret = tok.find('^');
    if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size()) {
      throw ParseError("SNF term '" + tok + "' is not divisor^multiplicity");
    }
    const std::string ds = tok.substr(0, caret);
    const std::string ks = tok.substr(caret + 1);
    if (!std::all_of(ds.begin(), ds.end(), ::isdigit) || !std::all_of(ks.begin(), ks.end(), ::isdigit)) {
      throw ParseError("SNF term '" + tok + "' is not divisor^multiplicity");
    }
    BigInt d(ds);
    const std::size_t k = std::stoul(ks);
    if (d == 0 || k == 0) throw ParseError("SNF term '" + tok + "' must be positive");
    if (!s.entries.empty() && s.entries.back().first >= d) throw ParseError("SNF divisors must increase");
    s.entries.emplace_back(std::move(d), k);
  }
  return s;
}

SnfMultiset SnfMultiset::from_diagonal(std::vector<BigInt> diagonal) {
  std::vector<BigInt> nz;
  for (auto& d : diagonal) {
    if (d != 0) nz.push_back(abs(d));
  }
  std::sort(nz.begin(), nz.end());
  SnfMultiset s;
  for (auto& d : nz) {
    if (!s.entries.empty() && s.entries.back().first == d) {
      ++s.entries.back().second;
    } else {
      s.entries.emplace_back(std::move(d), 1);
    }
  }
  return s;
}

namespace {

// Inverse of an odd number modulo 2^64 by Newton iteration.
std::uint64_t inverse_mod_2_64(std::uint64_t u) {
  std::uint64_t x = u;  // correct to 3 bits
  for (int i = 0; i < 5; ++i) x *= 2 - u * x;
  return x;
}

int valuation(std::uint64_t x) { return x == 0 ? 64 : std::countr_zero(x); }

}  // namespace

SnfMultiset smith_normal_form(const BitMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m.get(r, c) ? 1 : 0;
  }
  std::vector<std::size_t> count(65, 0);
  std::vector<std::size_t> row_order(rows);
  std::vector<std::size_t> col_order(cols);
  for (std::size_t i = 0; i < rows; ++i) row_order[i] = i;
  for (std::size_t i = 0; i < cols; ++i) col_order[i] = i;

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // Lowest valuation in the remaining block; stop at the first unit.
    int best = 64;
    std::size_t br = 0;
    std::size_t bc = 0;
    for (std::size_t i = t; i < rows && best > 0; ++i) {
      const std::uint64_t* row = &a[row_order[i] * cols];
      for (std::size_t j = t; j < cols; ++j) {
        const std::uint64_t v = row[col_order[j]];
        if (v == 0) continue;
        const int val = valuation(v);
        if (val < best) {
          best = val;
          br = i;
          bc = j;
          if (val == 0) break;
        }
      }
    }
    if (best == 64) break;
    std::swap(row_order[t], row_order[br]);
    std::swap(col_order[t], col_order[bc]);
    ++count[static_cast<std::size_t>(best)];

    const std::uint64_t* prow = &a[row_order[t] * cols];
    const std::size_t pc = col_order[t];
    const std::uint64_t uinv = inverse_mod_2_64(prow[pc] >> best);
    for (std::size_t i = t + 1; i < rows; ++i) {
      std::uint64_t* row = &a[row_order[i] * cols];
      if (row[pc] == 0) continue;
      const std::uint64_t factor = (row[pc] >> best) * uinv;
      for (std::size_t j = t; j < cols; ++j) {
        const std::size_t c = col_order[j];
        row[c] -= factor * prow[c];
      }
    }
  }

  SnfMultiset s;
  std::size_t found = 0;
  for (int v = 0; v < 64; ++v) {
    if (count[static_cast<std::size_t>(v)] == 0) continue;
    s.entries.emplace_back(BigInt(1) << v, count[static_cast<std::size_t>(v)]);
    found += count[static_cast<std::size_t>(v)];
  }
  if (found != rank_mod_p(m)) {
    throw Inconsistency("2-adic elimination lost divisors beyond 2^64");
  }
  return s;
}

std::size_t rank_mod_p(const BitMatrix& m) {
  constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
  auto mulmod = [](std::uint64_t x, std::uint64_t y) {
    const unsigned __int128 z = static_cast<unsigned __int128>(x) * y;
    std::uint64_t r = static_cast<std::uint64_t>(z & p) + static_cast<std::uint64_t>(z >> 61);
    if (r >= p) r -= p;
    return r;
  };
  auto powmod = [&](std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, x);
      x = mulmod(x, x);
      e >>= 1;
    }
    return r;
  };
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m.get(r, c) ? 1 : 0;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    }
    const std::uint64_t inv = powmod(a[rank * cols + c], p - 2);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t x = a[r * cols + c];
      if (x == 0) continue;
      const std::uint64_t f = mulmod(x, inv);
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t sub = mulmod(f, a[rank * cols + j]);
        std::uint64_t& e = a[r * cols + j];
        e = e >= sub ? e - sub : e + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

SnfMultiset smith_normal_form_integer(const BitMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m.get(r, c) ? 1 : 0;
  }
  std::vector<BigInt> diag;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // Move an entry of least absolute value to (t, t).
    auto place_min = [&]() {
      bool any = false;
      BigInt best;
      std::size_t br = t;
      std::size_t bc = t;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          BigInt v = abs(a[i][j]);
          if (!any || v < best) {
            any = true;
            best = v;
            br = i;
            bc = j;
          }
        }
      }
      if (!any) return false;
      std::swap(a[t], a[br]);
      for (auto& row : a) std::swap(row[t], row[bc]);
      return true;
    };
    if (!place_min()) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) {
        // The pivot must divide the rest of the block; otherwise fold in the
        // offending row and repeat.
        std::size_t bad = rows;
        for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (a[i][j] % a[t][t] != 0) {
              bad = i;
              break;
            }
          }
        }
        if (bad == rows) break;
        for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
      }
      place_min();
    }
    diag.push_back(abs(a[t][t]));
  }
  return SnfMultiset::from_diagonal(std::move(diag));
}

}  // namespace bentkit
