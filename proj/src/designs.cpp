#include "bentkit/designs.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "bentkit/walsh.hpp"

namespace bentkit {

std::vector<std::size_t> IncidenceStructure::block_sizes() const {
  std::vector<std::size_t> out(num_blocks());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = incidence_.row_weight(i);
  return out;
}

std::vector<std::vector<std::uint64_t>> IncidenceStructure::sorted_blocks() const {
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(num_blocks());
  for (std::size_t i = 0; i < num_blocks(); ++i) {
    const auto r = incidence_.row(i);
    rows.emplace_back(r.begin(), r.end());
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

bool same_block_multiset(const IncidenceStructure& a, const IncidenceStructure& b) {
  return a.num_points() == b.num_points() && a.sorted_blocks() == b.sorted_blocks();
}

std::size_t bent_min_weight(int n) {
  return (std::size_t{1} << (n - 1)) - (std::size_t{1} << (n / 2 - 1));
}

LinearCode code_of(const VectorialFunction& F) {
  const int n = F.n();
  const std::size_t len = std::size_t{1} << n;
  LinearCode code;
  code.length = len;
  code.generators = BitMatrix(static_cast<std::size_t>(1 + n + F.m()), len);
  auto put = [&](std::size_t r, const BooleanFunction& f) {
    auto row = code.generators.row(r);
    const auto w = f.words();
    std::copy(w.begin(), w.end(), row.begin());
  };
  put(0, constant_function(n, true));
  for (int i = 0; i < n; ++i) put(static_cast<std::size_t>(1 + i), coordinate_function(n, i));
  for (int j = 0; j < F.m(); ++j) put(static_cast<std::size_t>(1 + n + j), F.coordinate(j));
  code.dimension = gf2_rank(code.generators);
  return code;
}

std::vector<std::vector<std::uint64_t>> min_weight_words(const LinearCode& code, std::size_t w) {
  // Reduce to an echelon basis so every coefficient vector gives a distinct word.
  BitMatrix g = code.generators;
  std::vector<std::vector<std::uint64_t>> basis;
  const std::size_t stride = g.stride();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < g.cols() && rank < g.rows(); ++col) {
    const std::size_t wi = col >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (col & 63);
    std::size_t p = rank;
    while (p < g.rows() && !(g.row(p)[wi] & bit)) ++p;
    if (p == g.rows()) continue;
    if (p != rank) std::swap_ranges(g.row(p).begin(), g.row(p).end(), g.row(rank).begin());
    for (std::size_t r = 0; r < g.rows(); ++r) {
      if (r != rank && (g.row(r)[wi] & bit)) {
        for (std::size_t i = 0; i < stride; ++i) g.row(r)[i] ^= g.row(rank)[i];
      }
    }
    ++rank;
  }
  for (std::size_t r = 0; r < rank; ++r) basis.emplace_back(g.row(r).begin(), g.row(r).end());

  std::vector<std::vector<std::uint64_t>> out;
  if (basis.empty()) return out;
  if (basis.size() > 30) throw InvalidInput("code dimension too large for a span walk");
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  std::vector<std::uint64_t> word(stride);
  for (std::uint64_t c = 1; c < total; ++c) {
    std::fill(word.begin(), word.end(), 0);
    for (std::uint64_t bits = c; bits != 0; bits &= bits - 1) {
      const auto& b = basis[static_cast<std::size_t>(std::countr_zero(bits))];
      for (std::size_t i = 0; i < stride; ++i) word[i] ^= b[i];
    }
    std::size_t weight = 0;
    for (auto x : word) weight += static_cast<std::size_t>(std::popcount(x));
    if (weight == w) out.push_back(word);
  }
  return out;
}

IncidenceStructure addition_design(const VectorialFunction& F) {
  if (!is_bent(F)) throw NotBent("the addition design is defined for bent functions");
  const auto words = min_weight_words(code_of(F), bent_min_weight(F.n()));
  BitMatrix m(words.size(), std::size_t{1} << F.n());
  for (std::size_t r = 0; r < words.size(); ++r) std::copy(words[r].begin(), words[r].end(), m.row(r).begin());
  return IncidenceStructure(std::move(m));
}

namespace {

// f ^ f(0) ^ <a, x> with a the first zero of the dual of f ^ f(0): the code
// is unchanged and the shifted function and its dual both vanish at zero.
BooleanFunction shift_for_dual_formula(const BooleanFunction& f) {
  const BooleanFunction g = f(0) ? f.complement() : f;
  const auto d = dual(g);
  Point a = 0;
  while (d(a)) ++a;
  return a == 0 ? g : g ^ linear_function(g.num_vars(), a);
}

}  // namespace

IncidenceStructure addition_design_via_dual(const BooleanFunction& f) {
  if (!is_bent(f)) throw NotBent("the addition design is defined for bent functions");
  const int n = f.num_vars();
  const BooleanFunction g = shift_for_dual_formula(f);
  const BooleanFunction gd = dual(g);
  const std::size_t size = std::size_t{1} << n;
  BitMatrix m(size, size);
  for (Point x = 0; x < size; ++x) {
    const bool row_shift = gd(x) != gd(0);
    for (Point y = 0; y < size; ++y) {
      if ((g(y) != (dot(x, y) != 0)) != row_shift) m.set(x, y);
    }
  }
  return IncidenceStructure(std::move(m));
}

IncidenceStructure addition_design_concat(const VectorialFunction& F) {
  if (!is_bent(F)) throw NotBent("the addition design is defined for bent functions");
  const auto G = normalize_at_zero(F);
  BitMatrix stacked;
  for (Point b = 1; b < (Point{1} << G.m()); ++b) {
    stacked.append_rows(addition_design_via_dual(component(G, b)).incidence());
  }
  return IncidenceStructure(std::move(stacked));
}

IncidenceStructure dev_support(const BooleanFunction& f) {
  const std::size_t size = f.domain_size();
  BitMatrix m(size, size);
  for (Point g = 0; g < size; ++g) {
    for (Point x = 0; x < size; ++x) {
      if (f(x ^ g)) m.set(g, x);
    }
  }
  return IncidenceStructure(std::move(m));
}

IncidenceStructure dev_graph(const VectorialFunction& F) {
  const int n = F.n();
  const auto values = F.values();
  const std::size_t size = std::size_t{1} << (n + F.m());
  const Point low = (Point{1} << n) - 1;
  BitMatrix m(size, size);
  for (Point block = 0; block < size; ++block) {
    const Point g = block & low;
    const Point h = block >> n;
    // (x, y) lies in G_F + (g, h) iff y = F(x ^ g) ^ h.
    for (Point x = 0; x <= low; ++x) m.set(block, x | ((values[x ^ g] ^ h) << n));
  }
  return IncidenceStructure(std::move(m));
}

// ---------------------------------------------------------------------------

std::string DesignParameters::to_string() const {
  std::ostringstream os;
  if (kind == DesignKind::kTwoDesign) {
    os << "2-(" << v << "," << k << "," << lambda << ")";
  } else {
    os << "(" << mu << "," << nu << "," << k << "," << lambda << ")";
  }
  return os.str();
}

DesignParameters two_design(std::size_t v, std::size_t k, std::size_t lambda) {
  return {DesignKind::kTwoDesign, v, k, lambda, 0, 0};
}

DesignParameters divisible_design(std::size_t mu, std::size_t nu, std::size_t k, std::size_t lambda) {
  return {DesignKind::kDivisible, mu * nu, k, lambda, mu, nu};
}

DesignParameters addition_design_parameters(int n, int m) {
  const std::size_t lambda = ((std::size_t{1} << m) - 1) *
                             ((std::size_t{1} << (n - 2)) - (std::size_t{1} << (n / 2 - 1)));
  return two_design(std::size_t{1} << n, bent_min_weight(n), lambda);
}

DesignParameters dev_support_parameters(int n, bool value_at_zero) {
  const std::size_t half = std::size_t{1} << (n / 2 - 1);
  if (value_at_zero) {
    return two_design(std::size_t{1} << n, (std::size_t{1} << (n - 1)) + half,
                      (std::size_t{1} << (n - 2)) + half);
  }
  return two_design(std::size_t{1} << n, (std::size_t{1} << (n - 1)) - half,
                    (std::size_t{1} << (n - 2)) - half);
}

DesignParameters dev_graph_parameters(int n, int m) {
  return divisible_design(std::size_t{1} << n, std::size_t{1} << m, std::size_t{1} << n,
                          std::size_t{1} << (n - m));
}

ValidationReport validate_parameters(const IncidenceStructure& d, const DesignParameters& expected) {
  ValidationReport report;
  auto fail = [&](std::string msg, std::optional<std::pair<std::size_t, std::size_t>> pair = {}) {
    report.ok = false;
    report.message = std::move(msg);
    report.witness = pair;
    return report;
  };
  const std::size_t v = d.num_points();
  if (v != expected.v) {
    return fail("point count " + std::to_string(v) + " differs from " + std::to_string(expected.v));
  }
  const auto sizes = d.block_sizes();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] != expected.k) {
      return fail("block " + std::to_string(i) + " has size " + std::to_string(sizes[i]) + ", expected " +
                  std::to_string(expected.k));
    }
  }
  const BitMatrix cols = d.incidence().transposed();
  auto common = [&](std::size_t p, std::size_t q) {
    std::size_t c = 0;
    const auto a = cols.row(p);
    const auto b = cols.row(q);
    for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return c;
  };

  if (expected.kind == DesignKind::kTwoDesign) {
    for (std::size_t p = 0; p < v; ++p) {
      for (std::size_t q = p + 1; q < v; ++q) {
        const std::size_t c = common(p, q);
        if (c != expected.lambda) {
          return fail("points " + std::to_string(p) + "," + std::to_string(q) + " lie in " +
                          std::to_string(c) + " blocks, expected " + std::to_string(expected.lambda),
                      std::make_pair(p, q));
        }
      }
    }
    report.message = "passes " + expected.to_string();
    return report;
  }

  // Divisible: group points by the zero-count relation (union-find), then
  // demand a partition into mu classes of size nu with lambda across classes.
  std::vector<std::size_t> parent(v);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<std::size_t, std::size_t>> cross_violations;
  for (std::size_t p = 0; p < v; ++p) {
    for (std::size_t q = p + 1; q < v; ++q) {
      const std::size_t c = common(p, q);
      if (c == 0) {
        parent[find(p)] = find(q);
      } else if (c != expected.lambda) {
        return fail("points " + std::to_string(p) + "," + std::to_string(q) + " lie in " +
                        std::to_string(c) + " blocks, expected 0 or " + std::to_string(expected.lambda),
                    std::make_pair(p, q));
      }
    }
  }
  std::vector<std::size_t> class_size(v, 0);
  for (std::size_t p = 0; p < v; ++p) ++class_size[find(p)];
  std::size_t classes = 0;
  for (std::size_t p = 0; p < v; ++p) {
    if (find(p) != p) continue;
    ++classes;
    if (class_size[p] != expected.nu) {
      return fail("point class of " + std::to_string(p) + " has size " + std::to_string(class_size[p]) +
                  ", expected " + std::to_string(expected.nu));
    }
  }
  if (classes != expected.mu) {
    return fail(std::to_string(classes) + " point classes, expected " + std::to_string(expected.mu));
  }
  // Zero-count must be transitive inside a class: pairs in one class share no block.
  for (std::size_t p = 0; p < v; ++p) {
    for (std::size_t q = p + 1; q < v; ++q) {
      if (find(p) == find(q) && common(p, q) != 0) {
        return fail("points " + std::to_string(p) + "," + std::to_string(q) +
                        " share a class but also a block",
                    std::make_pair(p, q));
      }
    }
  }
  report.message = "passes " + expected.to_string();
  return report;
}

// ---------------------------------------------------------------------------

std::string to_text(const IncidenceStructure& d) {
  std::string out = std::to_string(d.num_blocks()) + " " + std::to_string(d.num_points()) + "\n";
  const auto& m = d.incidence();
  out.reserve(out.size() + d.num_blocks() * (d.num_points() + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::string to_hex(const IncidenceStructure& d) {
  std::string out = std::to_string(d.num_blocks()) + " " + std::to_string(d.num_points()) + " hex\n";
  const auto& m = d.incidence();
  char buf[17];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(row[i]));
      if (i) out.push_back(' ');
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

IncidenceStructure parse_incidence(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw ParseError("missing incidence header");
  std::istringstream hs(header);
  std::size_t b = 0;
  std::size_t v = 0;
  std::string fmt;
  if (!(hs >> b >> v)) throw ParseError("incidence header must be \"b v\"");
  hs >> fmt;
  BitMatrix m(b, v);
  if (fmt == "hex") {
    for (std::size_t r = 0; r < b; ++r) {
      for (std::size_t i = 0; i < m.stride(); ++i) {
        std::string tok;
        if (!(in >> tok) || tok.size() != 16) throw ParseError("bad hex row " + std::to_string(r));
        std::uint64_t w = 0;
        try {
          w = std::stoull(tok, nullptr, 16);
        } catch (const std::exception&) {
          throw ParseError("bad hex word in row " + std::to_string(r));
        }
        m.row(r)[i] = w;
      }
      if (v % 64 && (m.row(r)[m.stride() - 1] >> (v % 64))) throw ParseError("bits beyond column count");
    }
  } else if (fmt.empty()) {
    std::string line;
    for (std::size_t r = 0; r < b; ++r) {
      if (!std::getline(in, line)) throw ParseError("missing row " + std::to_string(r));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.size() != v) throw ParseError("row " + std::to_string(r) + " has wrong length");
      for (std::size_t c = 0; c < v; ++c) {
        if (line[c] == '1') {
          m.set(r, c);
        } else if (line[c] != '0') {
          throw ParseError("row " + std::to_string(r) + " contains a character other than 0/1");
        }
      }
    }
  } else {
    throw ParseError("unknown incidence format '" + fmt + "'");
  }
  return IncidenceStructure(std::move(m));
}

}  // namespace bentkit
