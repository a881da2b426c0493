#include "bentkit/boolean_function.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace bentkit {

namespace {

constexpr std::array<std::uint64_t, 6> kLowHalf = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};

std::size_t word_count(int n) { return n <= 6 ? 1 : std::size_t{1} << (n - 6); }

void check_vars(int n) {
  if (n < 0 || n > kMaxVars) {
    throw InvalidInput("variable count " + std::to_string(n) + " outside [0, " +
                       std::to_string(kMaxVars) + "]");
  }
}

}  // namespace

std::uint64_t table_mask(int n) noexcept {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1U << n)) - 1;
}

BooleanFunction::BooleanFunction(int n) : n_(n) {
  check_vars(n);
  words_.assign(word_count(n), 0);
}

BooleanFunction BooleanFunction::from_words(int n, std::vector<std::uint64_t> words) {
  BooleanFunction f(n);
  if (words.size() != f.words_.size()) {
    throw InvalidInput("truth table has " + std::to_string(words.size()) + " words, expected " +
                       std::to_string(f.words_.size()));
  }
  f.words_ = std::move(words);
  f.clear_tail();
  return f;
}

BooleanFunction BooleanFunction::from_bits(int n, std::span<const std::uint8_t> bits) {
  BooleanFunction f(n);
  if (bits.size() != f.domain_size()) {
    throw InvalidInput("truth table length " + std::to_string(bits.size()) + " is not 2^" +
                       std::to_string(n));
  }
  for (std::size_t x = 0; x < bits.size(); ++x) {
    if (bits[x] > 1) throw InvalidInput("truth table entries must be 0 or 1");
    if (bits[x]) f.words_[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return f;
}

void BooleanFunction::clear_tail() noexcept { words_[0] &= table_mask(n_); }

int BooleanFunction::weight() const noexcept {
  int w = 0;
  for (auto word : words_) w += std::popcount(word);
  return w;
}

bool BooleanFunction::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

BooleanFunction BooleanFunction::operator^(const BooleanFunction& other) const {
  if (other.n_ != n_) throw InvalidInput("variable counts differ");
  BooleanFunction r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] ^= other.words_[i];
  return r;
}

BooleanFunction BooleanFunction::operator&(const BooleanFunction& other) const {
  if (other.n_ != n_) throw InvalidInput("variable counts differ");
  BooleanFunction r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= other.words_[i];
  return r;
}

BooleanFunction BooleanFunction::complement() const {
  BooleanFunction r = *this;
  for (auto& w : r.words_) w = ~w;
  r.clear_tail();
  return r;
}

BooleanFunction BooleanFunction::translate(Point shift) const {
  if (shift >= domain_size()) throw InvalidInput("translation outside F_2^n");
  return from_predicate(n_, [&](Point x) { return (*this)(x ^ shift); });
}

std::strong_ordering operator<=>(const BooleanFunction& a, const BooleanFunction& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.words_.begin(), a.words_.end(),
                                                b.words_.begin(), b.words_.end());
}

BooleanFunction constant_function(int n, bool value) {
  BooleanFunction zero(n);
  return value ? zero.complement() : zero;
}

BooleanFunction linear_function(int n, Point a) {
  if (n < 32 && a >> n) throw InvalidInput("linear form mask exceeds n bits");
  return BooleanFunction::from_predicate(n, [a](Point x) { return dot(a, x) != 0; });
}

BooleanFunction coordinate_function(int n, int i) {
  if (i < 0 || i >= n) throw InvalidInput("coordinate index out of range");
  return linear_function(n, Point{1} << i);
}

// ---------------------------------------------------------------------------

Anf::Anf(int n, std::vector<Point> monomials) : n_(n) {
  check_vars(n);
  for (Point m : monomials) {
    if (n < 32 && (m >> n) != 0) {
      throw InvalidInput("monomial mask " + std::to_string(m) + " exceeds " + std::to_string(n) +
                         " variables");
    }
  }
  std::sort(monomials.begin(), monomials.end());
  // Cancel equal pairs.
  std::vector<Point> reduced;
  reduced.reserve(monomials.size());
  for (Point m : monomials) {
    if (!reduced.empty() && reduced.back() == m) {
      reduced.pop_back();
    } else {
      reduced.push_back(m);
    }
  }
  monomials_ = std::move(reduced);
}

int Anf::degree() const noexcept {
  int d = 0;
  for (Point m : monomials_) d = std::max(d, std::popcount(m));
  return d;
}

bool Anf::contains(Point mask) const noexcept {
  return std::binary_search(monomials_.begin(), monomials_.end(), mask);
}

Anf Anf::operator^(const Anf& other) const {
  if (other.n_ != n_) throw InvalidInput("variable counts differ");
  std::vector<Point> all(monomials_.begin(), monomials_.end());
  all.insert(all.end(), other.monomials_.begin(), other.monomials_.end());
  return Anf(n_, std::move(all));
}

void moebius_in_place(int n, std::span<std::uint64_t> words) noexcept {
  const int inner = std::min(n, 6);
  for (int i = 0; i < inner; ++i) {
    const unsigned shift = 1U << i;
    for (auto& w : words) w ^= (w & kLowHalf[i]) << shift;
  }
  for (int i = 6; i < n; ++i) {
    const std::size_t stride = std::size_t{1} << (i - 6);
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (j & stride) words[j] ^= words[j ^ stride];
    }
  }
}

BooleanFunction anf_to_table(const Anf& anf) {
  const int n = anf.num_vars();
  std::vector<std::uint64_t> words(word_count(n), 0);
  for (Point m : anf.monomials()) words[m >> 6] ^= std::uint64_t{1} << (m & 63);
  moebius_in_place(n, words);
  return BooleanFunction::from_words(n, std::move(words));
}

Anf table_to_anf(const BooleanFunction& f) {
  const int n = f.num_vars();
  std::vector<std::uint64_t> words(f.words().begin(), f.words().end());
  moebius_in_place(n, words);
  std::vector<Point> monomials;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::uint64_t w = words[i]; w != 0; w &= w - 1) {
      monomials.push_back(static_cast<Point>(i * 64 + std::countr_zero(w)));
    }
  }
  return Anf(n, std::move(monomials));
}

int algebraic_degree(const BooleanFunction& f) { return table_to_anf(f).degree(); }

Anf strip_affine(const Anf& anf) {
  std::vector<Point> kept;
  for (Point m : anf.monomials()) {
    if (std::popcount(m) >= 2) kept.push_back(m);
  }
  return Anf(anf.num_vars(), std::move(kept));
}

SupportSet support_set(const BooleanFunction& f) {
  SupportSet s{f.num_vars(), {}};
  s.elements.reserve(static_cast<std::size_t>(f.weight()));
  const auto words = f.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::uint64_t w = words[i]; w != 0; w &= w - 1) {
      s.elements.push_back(static_cast<Point>(i * 64 + std::countr_zero(w)));
    }
  }
  return s;
}

BooleanFunction direct_sum(const BooleanFunction& f, const BooleanFunction& h) {
  const int n = f.num_vars();
  const int k = h.num_vars();
  if (n + k > kMaxVars) throw InvalidInput("direct sum exceeds the variable cap");
  const Point low = (Point{1} << n) - 1;
  return BooleanFunction::from_predicate(n + k, [&](Point z) { return f(z & low) != h(z >> n); });
}

// ---------------------------------------------------------------------------

VectorialFunction::VectorialFunction(std::vector<BooleanFunction> coords)
    : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidInput("a vectorial function needs at least one coordinate");
  n_ = coords_.front().num_vars();
  for (const auto& c : coords_) {
    if (c.num_vars() != n_) throw InvalidInput("coordinates have different variable counts");
  }
  if (m() > 31) throw InvalidInput("too many coordinates");
}

VectorialFunction::VectorialFunction(BooleanFunction f)
    : VectorialFunction(std::vector<BooleanFunction>{std::move(f)}) {}

VectorialFunction VectorialFunction::from_values(int n, int m, std::span<const Point> values) {
  if (m < 1 || m > 31) throw InvalidInput("output dimension out of range");
  if (values.size() != (std::size_t{1} << n)) throw InvalidInput("value table has wrong length");
  std::vector<BooleanFunction> coords;
  for (int i = 0; i < m; ++i) {
    coords.push_back(BooleanFunction::from_predicate(n, [&](Point x) { return (values[x] >> i) & 1U; }));
  }
  for (Point v : values) {
    if (v >> m) throw InvalidInput("value exceeds m bits");
  }
  return VectorialFunction(std::move(coords));
}

Point VectorialFunction::operator()(Point x) const noexcept {
  Point v = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) v |= Point{coords_[i](x)} << i;
  return v;
}

std::vector<Point> VectorialFunction::values() const {
  std::vector<Point> out(std::size_t{1} << n_);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = (*this)(static_cast<Point>(x));
  return out;
}

int VectorialFunction::degree() const {
  int d = 0;
  for (const auto& c : coords_) d = std::max(d, algebraic_degree(c));
  return d;
}

VectorialFunction VectorialFunction::prefix(int k) const {
  if (k < 1 || k > m()) throw InvalidInput("prefix length out of range");
  return VectorialFunction(std::vector<BooleanFunction>(coords_.begin(), coords_.begin() + k));
}

VectorialFunction VectorialFunction::append(const BooleanFunction& f) const {
  auto coords = coords_;
  coords.push_back(f);
  return VectorialFunction(std::move(coords));
}

BooleanFunction component(const VectorialFunction& F, Point b) {
  if (b == 0) throw InvalidInput("the zero component is excluded");
  if (b >> F.m()) throw InvalidInput("component mask exceeds m bits");
  BooleanFunction acc(F.n());
  for (int i = 0; i < F.m(); ++i) {
    if ((b >> i) & 1U) acc = acc ^ F.coordinate(i);
  }
  return acc;
}

GraphSet graph_set(const VectorialFunction& F) {
  GraphSet g{F.n(), F.m(), F.values()};
  for (std::size_t x = 0; x < g.elements.size(); ++x) {
    g.elements[x] = static_cast<Point>(x) | (g.elements[x] << F.n());
  }
  return g;
}

VectorialFunction normalize_at_zero(const VectorialFunction& F) {
  std::vector<BooleanFunction> coords;
  for (int i = 0; i < F.m(); ++i) {
    const auto& c = F.coordinate(i);
    coords.push_back(c(0) ? c.complement() : c);
  }
  return VectorialFunction(std::move(coords));
}

}  // namespace bentkit
