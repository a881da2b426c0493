#include "bentkit/canonical.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

#include "bentkit/errors.hpp"
#include "bentkit/invariants.hpp"

namespace bentkit {

namespace {

using Vertex = std::uint32_t;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over h ^ v
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Points are vertices [0, P), blocks [P, P + B).
struct Graph {
  std::size_t points = 0;
  std::size_t blocks = 0;
  std::vector<std::uint32_t> offset;
  std::vector<Vertex> adj;

  std::size_t size() const { return points + blocks; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj.data() + offset[v], adj.data() + offset[v + 1]};
  }

  explicit Graph(const IncidenceStructure& d) : points(d.num_points()), blocks(d.num_blocks()) {
    const std::size_t n = size();
    std::vector<std::vector<Vertex>> lists(n);
    for (std::size_t b = 0; b < blocks; ++b) {
      for (auto p : d.block(b)) {
        lists[points + b].push_back(p);
        lists[p].push_back(static_cast<Vertex>(points + b));
      }
    }
    offset.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + static_cast<std::uint32_t>(lists[v].size());
    adj.reserve(offset[n]);
    for (auto& l : lists) adj.insert(adj.end(), l.begin(), l.end());
  }
};

// Ordered partition: lab lists vertices by position, cells are contiguous
// position ranges. start[i] is the first position of the cell holding i and
// end[s] the end of the cell starting at s.
struct Partition {
  std::vector<Vertex> lab;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> start;
  std::vector<std::uint32_t> end;
  std::size_t cells = 0;

  bool discrete() const { return cells == lab.size(); }
};

// Compares a refinement trace, element by element, against the traces of
// the best and the first leaf at the same level.
struct TraceCheck {
  const std::vector<std::uint64_t>* best = nullptr;   // compared while cmp == 0
  const std::vector<std::uint64_t>* first = nullptr;  // compared while eq_first
  int cmp = 0;            // -1 smaller (better), 0 equal so far, 1 larger
  bool eq_first = false;
  bool can_abort = false;
  std::vector<std::uint64_t> seq;

  void append(std::uint64_t h) {
    const std::size_t i = seq.size();
    seq.push_back(h);
    if (cmp == 0 && best) {
      if (i >= best->size()) {
        cmp = 1;
      } else if (h != (*best)[i]) {
        cmp = h < (*best)[i] ? -1 : 1;
      }
    }
    if (eq_first && (!first || i >= first->size() || h != (*first)[i])) eq_first = false;
  }
  // The end of a sequence sorts before any further element.
  void finish() {
    if (cmp == 0 && best && seq.size() < best->size()) cmp = -1;
    if (eq_first && (!first || seq.size() != first->size())) eq_first = false;
  }
  bool hopeless() const { return can_abort && cmp > 0 && !eq_first; }
};

class Refiner {
 public:
  explicit Refiner(const Graph& g)
      : g_(g), count_(g.size(), 0), in_queue_(g.size(), 0), bucket_size_(g.size(), 0), bucket_off_(g.size(), 0) {}

  Partition initial() const {
    Partition p;
    const std::size_t n = g_.size();
    p.lab.resize(n);
    std::iota(p.lab.begin(), p.lab.end(), 0);
    p.pos.resize(n);
    std::iota(p.pos.begin(), p.pos.end(), 0);
    p.start.resize(n);
    p.end.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) p.start[i] = i < g_.points ? 0 : static_cast<std::uint32_t>(g_.points);
    p.cells = 0;
    if (g_.points) {
      p.end[0] = static_cast<std::uint32_t>(g_.points);
      ++p.cells;
    }
    if (g_.blocks) {
      p.end[g_.points] = static_cast<std::uint32_t>(n);
      ++p.cells;
    }
    return p;
  }

  // Refines p to the coarsest equitable partition below it, starting from
  // the given splitter cells, recording one trace value per splitter. Returns
  // false if the trace check gave up part way.
  bool refine(Partition& p, std::vector<std::uint32_t> splitters, TraceCheck& tc) {
    std::uint64_t h = 0x51ed270b27e4a5f1ULL;
    queue_.clear();
    head_ = 0;
    for (auto s : splitters) push(s);
    while (head_ < queue_.size() && !p.discrete()) {
      const std::uint32_t ws = queue_[head_++];
      in_queue_[ws] = 0;
      const std::uint32_t we = p.end[ws];
      h = mix(h, (std::uint64_t{ws} << 32) | we);

      touched_.clear();
      for (std::uint32_t i = ws; i < we; ++i) {
        for (Vertex u : g_.neighbors(p.lab[i])) {
          if (count_[u]++ == 0) touched_.push_back(u);
        }
      }
      // Bucket the touched vertices by cell, cells in position order.
      cells_.clear();
      for (Vertex u : touched_) {
        const std::uint32_t cs = p.start[p.pos[u]];
        if (bucket_size_[cs]++ == 0) cells_.push_back(cs);
      }
      std::sort(cells_.begin(), cells_.end());
      std::uint32_t acc = 0;
      for (auto cs : cells_) {
        bucket_off_[cs] = acc;
        acc += bucket_size_[cs];
        bucket_size_[cs] = 0;
      }
      grouped_.resize(touched_.size());
      for (Vertex u : touched_) {
        const std::uint32_t cs = p.start[p.pos[u]];
        grouped_[bucket_off_[cs] + bucket_size_[cs]++] = u;
      }
      for (auto cs : cells_) bucket_size_[cs] = 0;
      touched_.swap(grouped_);
      for (std::size_t gi = 0; gi < touched_.size();) {
        const std::uint32_t cs = p.start[p.pos[touched_[gi]]];
        std::size_t gj = gi;
        while (gj < touched_.size() && p.start[p.pos[touched_[gj]]] == cs) ++gj;
        std::uint32_t lo = UINT32_MAX;
        std::uint32_t hi = 0;
        for (std::size_t k = gi; k < gj; ++k) {
          lo = std::min(lo, count_[touched_[k]]);
          hi = std::max(hi, count_[touched_[k]]);
        }
        if (lo != hi) {
          std::sort(touched_.begin() + static_cast<std::ptrdiff_t>(gi), touched_.begin() + static_cast<std::ptrdiff_t>(gj),
                    [&](Vertex x, Vertex y) { return count_[x] < count_[y]; });
        }
        const std::uint32_t ce = p.end[cs];
        const std::uint32_t t = static_cast<std::uint32_t>(gj - gi);
        const bool uniform = t == ce - cs && lo == hi;
        if (uniform) {
          h = mix(h, (std::uint64_t{cs} << 32) | count_[touched_[gi]]);
          gi = gj;
          continue;
        }
        // Untouched members (count 0) stay in front; touched ones move to
        // the tail in ascending count order.
        std::uint32_t b = ce;
        for (std::size_t k = gi; k < gj; ++k) {
          const Vertex u = touched_[k];
          --b;
          const std::uint32_t pu = p.pos[u];
          const Vertex other = p.lab[b];
          p.lab[pu] = other;
          p.pos[other] = pu;
          p.lab[b] = u;
          p.pos[u] = b;
        }
        // The tail is not yet in count order: touched_ was sorted, so rewrite it.
        for (std::size_t k = gi; k < gj; ++k) {
          const Vertex u = touched_[k];
          const std::uint32_t at = ce - t + static_cast<std::uint32_t>(k - gi);
          p.lab[at] = u;
          p.pos[u] = at;
        }
        frags_.clear();
        if (t < ce - cs) frags_.push_back(cs);
        for (std::uint32_t i = ce - t; i < ce; ++i) {
          if (i == ce - t || count_[p.lab[i]] != count_[p.lab[i - 1]]) frags_.push_back(i);
        }
        h = mix(h, (std::uint64_t{cs} << 32) | frags_.size());
        std::uint32_t largest = 0;
        std::uint32_t largest_size = 0;
        for (std::size_t f = 0; f < frags_.size(); ++f) {
          const std::uint32_t fs = frags_[f];
          const std::uint32_t fe = f + 1 < frags_.size() ? frags_[f + 1] : ce;
          h = mix(h, (std::uint64_t{count_[p.lab[fs]]} << 32) | (fe - fs));
          for (std::uint32_t i = fs; i < fe; ++i) p.start[i] = fs;
          p.end[fs] = fe;
          if (fe - fs > largest_size) {
            largest_size = fe - fs;
            largest = fs;
          }
        }
        p.cells += frags_.size() - 1;
        const bool was_queued = in_queue_[cs] != 0;
        for (auto fs : frags_) {
          if (was_queued || fs != largest) push(fs);
        }
        gi = gj;
      }
      for (Vertex u : touched_) count_[u] = 0;
      tc.append(h);
      if (tc.hopeless()) {
        while (head_ < queue_.size()) in_queue_[queue_[head_++]] = 0;
        return false;
      }
    }
    while (head_ < queue_.size()) in_queue_[queue_[head_++]] = 0;
    tc.append(mix(h, p.cells));
    tc.finish();
    return !tc.hopeless();
  }

  // Splits v off the front of its cell and refines.
  bool individualize(Partition& p, Vertex v, TraceCheck& tc) {
    const std::uint32_t cs = p.start[p.pos[v]];
    const std::uint32_t ce = p.end[cs];
    const std::uint32_t pv = p.pos[v];
    std::swap(p.lab[cs], p.lab[pv]);
    p.pos[p.lab[pv]] = pv;
    p.pos[v] = cs;
    for (std::uint32_t i = cs + 1; i < ce; ++i) p.start[i] = cs + 1;
    p.end[cs] = cs + 1;
    p.end[cs + 1] = ce;
    ++p.cells;
    return refine(p, {cs}, tc);
  }

 private:
  void push(std::uint32_t s) {
    if (!in_queue_[s]) {
      in_queue_[s] = 1;
      queue_.push_back(s);
    }
  }

  const Graph& g_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint8_t> in_queue_;
  std::vector<std::uint32_t> queue_;
  std::size_t head_ = 0;
  std::vector<Vertex> touched_;
  std::vector<std::uint32_t> frags_;
  std::vector<std::uint32_t> cells_;
  std::vector<std::uint32_t> bucket_size_;
  std::vector<std::uint32_t> bucket_off_;
  std::vector<Vertex> grouped_;
};

using Trace = std::vector<std::vector<std::uint64_t>>;  // one sequence per level

struct Leaf {
  Trace trace;
  std::vector<Vertex> prefix;
  std::vector<Vertex> lab;
  BitMatrix matrix;
};

class Search {
 public:
  Search(const Graph& g, const CanonicalOptions& opt) : g_(g), opt_(opt), refiner_(g) {}

  CanonicalResult run() {
    Partition root = refiner_.initial();
    std::vector<std::uint32_t> splitters;
    if (g_.points) splitters.push_back(0);
    if (g_.blocks) splitters.push_back(static_cast<std::uint32_t>(g_.points));
    TraceCheck tc;
    refiner_.refine(root, splitters, tc);
    root_cells_ = root.cells;
    levels_.push_back(std::move(root));
    trace_.push_back(std::move(tc.seq));
    cmp_.push_back(0);
    eq_first_.push_back(true);
    order_ = 1;
    visit(0);

    CanonicalResult r;
    const Leaf& best = best_;
    r.form.matrix = best.matrix;
    r.form.point_order.assign(best.lab.begin(), best.lab.begin() + static_cast<std::ptrdiff_t>(g_.points));
    r.form.block_order.reserve(g_.blocks);
    for (std::size_t i = g_.points; i < g_.size(); ++i) {
      r.form.block_order.push_back(static_cast<std::uint32_t>(best.lab[i] - g_.points));
    }
    r.automorphism_order = order_;
    r.generators = generators_;
    r.stats = stats_;
    r.stats.generators = generators_.size();
    return r;
  }

 private:
  // Depth of the node whose loop should continue. A child that finishes
  // normally returns its parent's depth.
  void count_node(std::size_t d) {
    if (++stats_.nodes > opt_.node_budget) {
      throw ResourceLimit("canonical labeling exceeded the node budget of " +
                              std::to_string(opt_.node_budget) + " nodes (depth " + std::to_string(d) +
                              ", " + std::to_string(root_cells_) + " cells after the first refinement, " +
                              std::to_string(generators_.size()) + " automorphisms found)",
                          opt_.node_budget);
    }
    stats_.max_depth = std::max(stats_.max_depth, d);
  }

  std::size_t visit(std::size_t d) {
    count_node(d);
    if (levels_[d].discrete()) return leaf(d);

    // First smallest non-singleton cell.
    const Partition& p = levels_[d];
    std::uint32_t cell = 0;
    std::uint32_t best_size = UINT32_MAX;
    for (std::uint32_t s = 0; s < p.lab.size(); s = p.end[s]) {
      const std::uint32_t size = p.end[s] - s;
      if (size > 1 && size < best_size) {
        best_size = size;
        cell = s;
      }
    }
    std::vector<Vertex> members(p.lab.begin() + cell, p.lab.begin() + p.end[cell]);
    std::sort(members.begin(), members.end());

    std::vector<Vertex> explored;
    std::size_t seen_gens = SIZE_MAX;
    for (Vertex w : members) {
      if (!explored.empty()) {
        if (seen_gens != generators_.size()) {
          compute_orbits(d);
          seen_gens = generators_.size();
        }
        const Vertex rw = find(d, w);
        bool dup = false;
        for (Vertex e : explored) {
          if (find(d, e) == rw) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
      }
      explored.push_back(w);

      if (levels_.size() <= d + 1) {
        levels_.emplace_back();
        trace_.emplace_back();
        cmp_.push_back(0);
        eq_first_.push_back(false);
      }
      levels_[d + 1] = levels_[d];
      if (prefix_.size() <= d) prefix_.resize(d + 1);
      prefix_[d] = w;

      TraceCheck tc;
      if (have_first_) {
        tc.can_abort = true;
        tc.cmp = cmp_[d];
        if (tc.cmp == 0) {
          if (d + 1 < best_.trace.size()) {
            tc.best = &best_.trace[d + 1];
          } else {
            tc.cmp = 1;  // deeper than the best leaf
          }
        }
        tc.eq_first = eq_first_[d] && d + 1 < first_.trace.size();
        if (tc.eq_first) tc.first = &first_.trace[d + 1];
      } else {
        tc.eq_first = true;
      }
      const bool alive = refiner_.individualize(levels_[d + 1], w, tc);
      if (!have_first_) tc.eq_first = true;
      cmp_[d + 1] = tc.cmp;
      eq_first_[d + 1] = tc.eq_first;
      trace_[d + 1] = std::move(tc.seq);
      if (!alive) {
        count_node(d + 1);
        continue;
      }
      if (cmp_[d + 1] > 0 && !eq_first_[d + 1]) continue;

      const std::size_t r = visit(d + 1);
      if (r < d) return r;
    }

    if (have_first_ && on_first_path(d)) {
      compute_orbits(d);
      const Vertex v = first_.prefix[d];
      const Vertex rv = find(d, v);
      std::size_t orbit = 0;
      for (Vertex w : members) orbit += find(d, w) == rv ? 1 : 0;
      order_ *= orbit;
    }
    return d == 0 ? 0 : d - 1;
  }

  std::size_t leaf(std::size_t d) {
    ++stats_.leaves;
    const Partition& p = levels_[d];
    BitMatrix m(g_.blocks, g_.points);
    for (std::size_t i = g_.points; i < g_.size(); ++i) {
      for (Vertex u : g_.neighbors(p.lab[i])) m.set(i - g_.points, p.pos[u]);
    }
    Trace trace(trace_.begin(), trace_.begin() + static_cast<std::ptrdiff_t>(d + 1));
    std::vector<Vertex> prefix(prefix_.begin(), prefix_.begin() + static_cast<std::ptrdiff_t>(d));

    if (!have_first_) {
      have_first_ = true;
      first_ = Leaf{trace, prefix, p.lab, m};
      best_ = first_;
      return d == 0 ? 0 : d - 1;
    }
    if (eq_first_[d] && trace.size() == first_.trace.size() && m == first_.matrix) {
      add_automorphism(first_.lab, p.lab);
      return common_ancestor(prefix, first_.prefix);
    }
    int c = cmp_[d];
    if (c == 0) {
      if (trace.size() != best_.trace.size()) {
        c = trace.size() < best_.trace.size() ? -1 : 1;
      } else {
        const auto order = m <=> best_.matrix;
        if (order == 0) {
          add_automorphism(best_.lab, p.lab);
          return common_ancestor(prefix, best_.prefix);
        }
        c = order < 0 ? -1 : 1;
      }
    }
    if (c < 0) {
      best_ = Leaf{std::move(trace), std::move(prefix), p.lab, std::move(m)};
      std::fill(cmp_.begin(), cmp_.begin() + static_cast<std::ptrdiff_t>(d + 1), 0);
    }
    return d == 0 ? 0 : d - 1;
  }

  static std::size_t common_ancestor(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
  }

  bool on_first_path(std::size_t d) const {
    if (first_.prefix.size() <= d) return false;
    for (std::size_t i = 0; i < d; ++i) {
      if (prefix_[i] != first_.prefix[i]) return false;
    }
    return true;
  }

  void add_automorphism(const std::vector<Vertex>& from, const std::vector<Vertex>& to) {
    std::vector<std::uint32_t> gamma(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) gamma[from[i]] = to[i];
    generators_.push_back(std::move(gamma));
  }

  // Orbits of the group generated by the automorphisms that fix the
  // individualized vertices above depth d.
  void compute_orbits(std::size_t d) {
    const std::size_t n = g_.size();
    if (orbits_.size() <= d) orbits_.resize(d + 1);
    auto& parent = orbits_[d];
    parent.resize(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gamma : generators_) {
      bool fixes = true;
      for (std::size_t i = 0; i < d && fixes; ++i) fixes = gamma[prefix_[i]] == prefix_[i];
      if (!fixes) continue;
      for (std::size_t v = 0; v < n; ++v) {
        const Vertex a = find(d, static_cast<Vertex>(v));
        const Vertex b = find(d, gamma[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  Vertex find(std::size_t d, Vertex v) {
    auto& parent = orbits_[d];
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }

  const Graph& g_;
  CanonicalOptions opt_;
  Refiner refiner_;
  std::vector<Partition> levels_;
  Trace trace_;
  std::vector<int> cmp_;         // -1 better, 0 equal, 1 worse than the best leaf so far
  std::vector<char> eq_first_;   // trace equal to the first leaf so far
  std::vector<Vertex> prefix_;
  bool have_first_ = false;
  Leaf first_;
  Leaf best_;
  std::vector<std::vector<std::uint32_t>> generators_;
  std::vector<std::vector<Vertex>> orbits_;  // union-find per depth
  BigInt order_;
  SearchStats stats_;
  std::size_t root_cells_ = 0;
};

}  // namespace

std::string CanonicalForm::hash() const {
  std::string bytes = std::to_string(matrix.rows()) + " " + std::to_string(matrix.cols()) + "\n";
  for (std::uint64_t w : matrix.data()) {
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>((w >> (8 * i)) & 0xff));
  }
  return sha256_hex(bytes.data(), bytes.size());
}

CanonicalResult canonical_labeling(const IncidenceStructure& d, const CanonicalOptions& options) {
  const Graph g(d);
  Search s(g, options);
  return s.run();
}

CanonicalForm canonical_form(const IncidenceStructure& d, const CanonicalOptions& options) {
  return canonical_labeling(d, options).form;
}

BigInt aut_group_order(const IncidenceStructure& d, const CanonicalOptions& options) {
  return canonical_labeling(d, options).automorphism_order;
}

IsomorphismWitness extend_witness(const IsomorphismWitness& w, int extra_bits) {
  auto lift = [&](const std::vector<std::uint32_t>& p) {
    const std::size_t size = p.size();
    if (size == 0 || (size & (size - 1)) != 0) throw InvalidInput("witness size is not a power of two");
    std::vector<std::uint32_t> out(size << extra_bits);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = static_cast<std::uint32_t>(p[i & (size - 1)] + (i & ~(size - 1)));
    }
    return out;
  };
  if (extra_bits < 0 || extra_bits > 16) throw InvalidInput("extra_bits out of range");
  return {lift(w.row_perm), lift(w.col_perm)};
}

bool verify_witness(const IncidenceStructure& d1, const IncidenceStructure& d2, const IsomorphismWitness& w) {
  const auto& m1 = d1.incidence();
  const auto& m2 = d2.incidence();
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) return false;
  if (w.row_perm.size() != m1.rows() || w.col_perm.size() != m1.cols()) return false;
  std::vector<char> seen_r(m1.rows(), 0);
  std::vector<char> seen_c(m1.cols(), 0);
  for (auto r : w.row_perm) {
    if (r >= m1.rows() || seen_r[r]) return false;
    seen_r[r] = 1;
  }
  for (auto c : w.col_perm) {
    if (c >= m1.cols() || seen_c[c]) return false;
    seen_c[c] = 1;
  }
  return m2.permute_rows(w.row_perm).permute_cols(w.col_perm) == m1;
}

IsomorphismResult are_isomorphic(const IncidenceStructure& d1, const IncidenceStructure& d2,
                                 const CanonicalOptions& options) {
  IsomorphismResult res;
  const Fingerprint f1 = fingerprint(d1, false);
  const Fingerprint f2 = fingerprint(d2, false);
  if (!(f1 == f2)) {
    res.reason = "fingerprints differ: " + f1.to_string() + " vs " + f2.to_string();
    return res;
  }
  const CanonicalForm c1 = canonical_form(d1, options);
  const CanonicalForm c2 = canonical_form(d2, options);
  if (!(c1.matrix == c2.matrix)) {
    res.reason = "canonical forms differ";
    return res;
  }
  // Canonical position i holds point_order[i] in both structures.
  IsomorphismWitness w;
  w.row_perm.resize(c1.block_order.size());
  w.col_perm.resize(c1.point_order.size());
  for (std::size_t i = 0; i < c1.block_order.size(); ++i) w.row_perm[c1.block_order[i]] = c2.block_order[i];
  for (std::size_t i = 0; i < c1.point_order.size(); ++i) w.col_perm[c1.point_order[i]] = c2.point_order[i];
  if (!verify_witness(d1, d2, w)) {
    throw Inconsistency("equal canonical forms produced a witness that fails verification");
  }
  res.isomorphic = true;
  res.witness = std::move(w);
  res.reason = "canonical forms agree";
  return res;
}

}  // namespace bentkit
