#include "bentkit/classify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "bentkit/anf_text.hpp"
#include "bentkit/catalog.hpp"
#include "bentkit/constructions.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/invariants.hpp"
#include "bentkit/walsh.hpp"
#include "parallel.hpp"

namespace bentkit {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::array<std::uint64_t, 6> kLowHalf = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};

unsigned resolve_threads(unsigned threads) { return threads ? threads : default_thread_count(); }

void require_word_size(int n) {
  if (n < 1 || n > 6) throw InvalidInput("word tables need 1 <= n <= 6, got " + std::to_string(n));
}

std::uint64_t coordinate_word(int n, int i) { return ~kLowHalf[static_cast<std::size_t>(i)] & table_mask(n); }

// x -> t(x ^ g)
std::uint64_t translate_word(std::uint64_t t, Point g) {
  for (int i = 0; i < 6; ++i) {
    if ((g >> i) & 1U) {
      const int s = 1 << i;
      const std::uint64_t m = kLowHalf[static_cast<std::size_t>(i)];
      t = ((t & m) << s) | ((t >> s) & m);
    }
  }
  return t;
}

// Rank of [[M_t, 1], [1^T, 0]] by insertion into a basis keyed on the
// leading bit; rows are 2^n + 1 bits wide.
std::size_t gamma_rank_word(int n, std::uint64_t t) {
  using Row = unsigned __int128;
  const int size = 1 << n;
  std::array<Row, 65> basis{};
  std::size_t rank = 0;
  auto insert = [&](Row r) {
    while (r != 0) {
      const auto hi = static_cast<std::uint64_t>(r >> 64);
      const int lead = hi ? 64 + (63 - std::countl_zero(hi)) : 63 - std::countl_zero(static_cast<std::uint64_t>(r));
      auto& slot = basis[static_cast<std::size_t>(lead)];
      if (slot == 0) {
        slot = r;
        ++rank;
        return;
      }
      r ^= slot;
    }
  };
  const Row border = Row{1} << size;
  for (Point g = 0; g < static_cast<Point>(size); ++g) insert(Row{translate_word(t, g)} | border);
  insert(Row{table_mask(n)});
  return rank;
}

int degree_word(int n, std::uint64_t t) {
  std::uint64_t w = t & table_mask(n);
  moebius_in_place(n, std::span<std::uint64_t>(&w, 1));
  int deg = 0;
  for (; w != 0; w &= w - 1) deg = std::max(deg, std::popcount(static_cast<unsigned>(std::countr_zero(w))));
  return deg;
}

std::vector<std::uint64_t> component_words(const VectorialFunction& F) {
  std::vector<std::uint64_t> out;
  for (Point b = 1; b < (Point{1} << F.m()); ++b) out.push_back(component(F, b).word(0));
  return out;
}

// Hits of one outer part, sorted by inner part.
void sweep_outer(const MonomialSplit& s, const BentnessKernel& kernel, std::uint64_t outer,
                 std::vector<std::uint64_t>& out) {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < s.outer.size(); ++i) {
    if ((outer >> i) & 1U) t ^= s.outer_tables[i];
  }
  const std::uint64_t count = std::uint64_t{1} << s.inner.size();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> hits;
  for (std::uint64_t i = 0;;) {
    if (kernel.is_bent_word(t)) hits.emplace_back(i ^ (i >> 1), t);
    if (++i == count) break;
    t ^= s.inner_tables[static_cast<std::size_t>(std::countr_zero(i))];
  }
  std::sort(hits.begin(), hits.end());
  for (const auto& h : hits) out.push_back(h.second);
}

// Calls progress at most every two seconds, and always for the final state.
class ProgressThrottle {
 public:
  explicit ProgressThrottle(const std::function<void(const EnumerationProgress&)>& fn) : fn_(fn) {}
  void report(EnumerationProgress p, bool force) {
    if (!fn_) return;
    const auto now = Clock::now();
    if (!force && now - last_ < std::chrono::seconds(2)) return;
    last_ = now;
    p.seconds = std::chrono::duration<double>(now - start_).count();
    fn_(p);
  }

 private:
  const std::function<void(const EnumerationProgress&)>& fn_;
  Clock::time_point start_ = Clock::now();
  Clock::time_point last_ = start_;
};

void write_file_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << text;
    if (!out) throw Error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

LayerOneKey parse_key(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("bad class key '" + s + "'");
  try {
    return LayerOneKey{std::stoi(s.substr(0, colon)), static_cast<std::size_t>(std::stoul(s.substr(colon + 1)))};
  } catch (const std::exception&) {
    throw ParseError("bad class key '" + s + "'");
  }
}

BigInt pow2(unsigned e) { return BigInt(1) << e; }

std::string big_str(const BigInt& v) { return v.str(); }

ClassRecord make_record(int m, int index, const VectorialFunction& rep, const EaInvariant& inv) {
  ClassRecord r;
  r.m = m;
  r.index = index;
  r.representative = rep;
  r.fingerprint_hash = inv.fingerprint.hash();
  r.canonical_hash = inv.hash();
  return r;
}

void emit(const Algorithm1Options& options, const json& j) {
  if (options.progress) options.progress(j.dump());
}

}  // namespace

unsigned default_thread_count() {
  if (const char* env = std::getenv("BENTKIT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

const MonomialSplit& monomial_split(int n) {
  static const std::array<MonomialSplit, 3> splits = [] {
    std::array<MonomialSplit, 3> out;
    for (int k = 0; k < 3; ++k) {
      const int n = 2 * (k + 1);
      MonomialSplit& s = out[static_cast<std::size_t>(k)];
      s.n = n;
      for (Point mask = 1; mask < (Point{1} << n); ++mask) {
        const int d = std::popcount(mask);
        if (d == 2) s.inner.push_back(mask);
        if (d >= 3 && d <= n / 2) s.outer.push_back(mask);
      }
      for (auto mask : s.inner) s.inner_tables.push_back(anf_to_table(Anf(n, {mask})).word(0));
      for (auto mask : s.outer) s.outer_tables.push_back(anf_to_table(Anf(n, {mask})).word(0));
    }
    return out;
  }();
  if (n != 2 && n != 4 && n != 6) throw InvalidInput("enumeration supports n = 2, 4, 6, got " + std::to_string(n));
  return splits[static_cast<std::size_t>(n / 2 - 1)];
}

std::uint64_t table_from_parts(int n, std::uint64_t outer_part, std::uint64_t inner_part) {
  const MonomialSplit& s = monomial_split(n);
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < s.outer.size(); ++i) {
    if ((outer_part >> i) & 1U) t ^= s.outer_tables[i];
  }
  for (std::size_t i = 0; i < s.inner.size(); ++i) {
    if ((inner_part >> i) & 1U) t ^= s.inner_tables[i];
  }
  return t;
}

BooleanFunction word_function(int n, std::uint64_t table) {
  require_word_size(n);
  return BooleanFunction::from_words(n, {table & table_mask(n)});
}

std::uint64_t strip_affine_word(int n, std::uint64_t table) {
  require_word_size(n);
  const std::uint64_t mask = table_mask(n);
  const std::uint64_t c0 = table & 1U;
  std::uint64_t affine = c0 ? mask : 0;
  for (int i = 0; i < n; ++i) {
    if (((table >> (1U << i)) & 1U) ^ c0) affine ^= coordinate_word(n, i);
  }
  return (table ^ affine) & mask;
}

bool is_affine_free_word(int n, std::uint64_t table) {
  return strip_affine_word(n, table) == (table & table_mask(n));
}

// ---------------------------------------------------------------------------

void enumerate_affine_free_bent(int n, const std::function<void(std::uint64_t)>& sink,
                                const EnumerationOptions& options) {
  const MonomialSplit& s = monomial_split(n);
  const BentnessKernel kernel(n);
  const unsigned threads = resolve_threads(options.threads);
  const std::uint64_t total = std::uint64_t{1} << s.outer.size();
  const std::uint64_t end = options.stop_after >= total ? total : options.stop_after;
  const std::uint64_t batch = std::max<std::uint64_t>(64, std::uint64_t{threads} * 16);
  std::vector<std::vector<std::uint64_t>> results;
  ProgressThrottle progress(options.progress);
  std::uint64_t found = 0;
  for (std::uint64_t begin = 0; begin < end; begin += batch) {
    const std::uint64_t stop = std::min(end, begin + batch);
    results.assign(stop - begin, {});
    detail::parallel_for(stop - begin, threads,
                         [&](std::size_t i) { sweep_outer(s, kernel, begin + i, results[i]); });
    for (const auto& r : results) {
      for (auto t : r) sink(t);
      found += r.size();
    }
    progress.report({stop, total, found, 0}, stop == end);
  }
}

std::vector<std::uint64_t> affine_free_bent_tables(int n, const EnumerationOptions& options) {
  std::vector<std::uint64_t> out;
  enumerate_affine_free_bent(n, [&](std::uint64_t t) { out.push_back(t); }, options);
  return out;
}

std::string LayerOneKey::to_string() const { return std::to_string(degree) + ":" + std::to_string(gamma_rank); }

LayerOneKey layer_one_key(int n, std::uint64_t table) {
  require_word_size(n);
  return LayerOneKey{degree_word(n, table), gamma_rank_word(n, table)};
}

bool EnumerationCheckpoint::complete() const {
  return cursor == (std::uint64_t{1} << monomial_split(n).outer.size());
}

std::string EnumerationCheckpoint::to_json() const {
  json j;
  j["version"] = version;
  j["n"] = n;
  j["cursor"] = cursor;
  j["found"] = found;
  j["counts"] = json::object();
  for (const auto& [k, c] : counts) j["counts"][k.to_string()] = c;
  return j.dump(2) + "\n";
}

EnumerationCheckpoint EnumerationCheckpoint::from_json(const std::string& text) {
  EnumerationCheckpoint cp;
  try {
    const json j = json::parse(text);
    cp.version = j.at("version").get<int>();
    cp.n = j.at("n").get<int>();
    cp.cursor = j.at("cursor").get<std::uint64_t>();
    cp.found = j.at("found").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("counts").items()) cp.counts[parse_key(k)] = v.get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad checkpoint: ") + e.what());
  }
  if (cp.version != kVersion) throw ParseError("unsupported checkpoint version " + std::to_string(cp.version));
  return cp;
}

EnumerationCheckpoint count_affine_free_bent(int n, const EnumerationOptions& options) {
  const MonomialSplit& s = monomial_split(n);
  const BentnessKernel kernel(n);
  const unsigned threads = resolve_threads(options.threads);
  const std::uint64_t total = std::uint64_t{1} << s.outer.size();

  EnumerationCheckpoint cp;
  cp.n = n;
  if (!options.checkpoint_path.empty() && std::filesystem::exists(options.checkpoint_path)) {
    std::ifstream in(options.checkpoint_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    cp = EnumerationCheckpoint::from_json(buf.str());
    if (cp.n != n) throw InvalidInput("checkpoint is for n = " + std::to_string(cp.n));
    if (cp.cursor > total) throw ParseError("checkpoint cursor out of range");
  }

  const std::uint64_t stop_at =
      options.stop_after >= total - cp.cursor ? total : cp.cursor + options.stop_after;
  const std::uint64_t batch = std::max<std::uint64_t>(1, options.checkpoint_interval);
  ProgressThrottle progress(options.progress);
  std::vector<std::map<LayerOneKey, std::uint64_t>> partial;
  while (cp.cursor < stop_at) {
    const std::uint64_t begin = cp.cursor;
    const std::uint64_t stop = std::min(stop_at, begin + batch);
    partial.assign(stop - begin, {});
    detail::parallel_for(stop - begin, threads, [&](std::size_t i) {
      std::vector<std::uint64_t> hits;
      sweep_outer(s, kernel, begin + i, hits);
      for (auto t : hits) ++partial[i][layer_one_key(n, t)];
    });
    for (const auto& p : partial) {
      for (const auto& [k, c] : p) {
        cp.counts[k] += c;
        cp.found += c;
      }
    }
    cp.cursor = stop;
    if (!options.checkpoint_path.empty()) write_file_atomically(options.checkpoint_path, cp.to_json());
    progress.report({cp.cursor, total, cp.found, 0}, cp.cursor == stop_at);
  }
  return cp;
}

BruteForceCounts brute_force_bent(int n) {
  if (n < 1 || n > 4) throw InvalidInput("brute force needs n <= 4");
  const BentnessKernel kernel(n);
  BruteForceCounts out;
  const std::uint64_t size = std::uint64_t{1} << (1U << n);
  for (std::uint64_t t = 0; t < size; ++t) {
    if (!kernel.is_bent_word(t)) continue;
    ++out.bent;
    if (is_affine_free_word(n, t)) {
      ++out.affine_free;
      out.affine_free_tables.push_back(t);
    }
  }
  return out;
}

BigInt brute_force_vectorial_count(int n, int m, bool affine_free_only) {
  if (n < 1 || n > 4) throw InvalidInput("brute force needs n <= 4");
  if (m < 1) throw InvalidInput("m must be positive");
  if (n % 2 != 0 || m > n / 2) return 0;
  const BentnessKernel kernel(n);
  std::vector<std::uint64_t> pool;
  const std::uint64_t size = std::uint64_t{1} << (1U << n);
  for (std::uint64_t t = 0; t < size; ++t) {
    if (kernel.is_bent_word(t) && (!affine_free_only || is_affine_free_word(n, t))) pool.push_back(t);
  }
  BigInt count = 0;
  // span holds every nonzero combination of the coordinates chosen so far.
  std::function<void(int, std::vector<std::uint64_t>&)> extend = [&](int depth, std::vector<std::uint64_t>& span) {
    if (depth == m) {
      ++count;
      return;
    }
    for (auto t : pool) {
      bool ok = true;
      for (auto c : span) {
        if (!kernel.is_bent_word(t ^ c)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const std::size_t old = span.size();
      span.push_back(t);
      for (std::size_t i = 0; i < old; ++i) span.push_back(span[i] ^ t);
      extend(depth + 1, span);
      span.resize(old);
    }
  };
  std::vector<std::uint64_t> span;
  extend(0, span);
  return count;
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> bent_friends(const VectorialFunction& F, std::span<const std::uint64_t> candidates,
                                        unsigned threads) {
  const int n = F.n();
  require_word_size(n);
  if (n % 2 != 0 || F.m() >= n / 2) return {};
  const BentnessKernel kernel(n);
  const auto comps = component_words(F);
  auto is_friend = [&](std::uint64_t t) {
    if (!kernel.is_bent_word(t) || !is_affine_free_word(n, t)) return false;
    for (auto c : comps) {
      if (!kernel.is_bent_word(t ^ c)) return false;
    }
    return true;
  };
  constexpr std::size_t kChunk = 1 << 16;
  const std::size_t chunks = (candidates.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> parts(chunks);
  detail::parallel_for(chunks, resolve_threads(threads), [&](std::size_t c) {
    const std::size_t end = std::min(candidates.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      if (is_friend(candidates[i])) parts[c].push_back(candidates[i]);
    }
  });
  std::vector<std::uint64_t> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<BooleanFunction> bent_friends(const VectorialFunction& F, std::span<const BooleanFunction> candidates) {
  const int n = F.n();
  if (n % 2 != 0 || F.m() >= n / 2) return {};
  const BentnessKernel kernel(n);
  std::vector<BooleanFunction> comps;
  for (Point b = 1; b < (Point{1} << F.m()); ++b) comps.push_back(component(F, b));
  std::vector<BooleanFunction> out;
  for (const auto& f : candidates) {
    if (f.num_vars() != n) throw InvalidInput("candidate has the wrong number of variables");
    if (!kernel.is_bent(f)) continue;
    const Anf anf = table_to_anf(f);
    if (strip_affine(anf) != anf) continue;
    bool ok = true;
    for (const auto& c : comps) {
      if (!kernel.is_bent(f ^ c)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------

ClassRegistry::ClassRegistry(int n, int m, CanonicalOptions options) : n_(n), m_(m), options_(options) {}

int ClassRegistry::find(const EaInvariant& inv) const {
  const auto it = buckets_.find(inv.fingerprint.to_string());
  if (it == buckets_.end()) return 0;
  for (int idx : it->second) {
    if (invariants_[static_cast<std::size_t>(idx - 1)].same_class(inv)) return idx;
  }
  return 0;
}

int ClassRegistry::find(const VectorialFunction& G) const { return find(ea_invariant(G, options_)); }

int ClassRegistry::add(const VectorialFunction& G, EaInvariant inv, bool* created) {
  if (G.n() != n_ || G.m() != m_) throw InvalidInput("function does not belong to this layer");
  if (int idx = find(inv); idx != 0) {
    if (created) *created = false;
    return idx;
  }
  reps_.push_back(G);
  const int idx = static_cast<int>(reps_.size());
  buckets_[inv.fingerprint.to_string()].push_back(idx);
  invariants_.push_back(std::move(inv));
  if (created) *created = true;
  return idx;
}

int ClassRegistry::add(const VectorialFunction& G, bool* created) {
  return add(G, ea_invariant(G, options_), created);
}

const VectorialFunction& ClassRegistry::representative(int index) const {
  if (index < 1 || index > size()) throw NotFound("no class " + std::to_string(index));
  return reps_[static_cast<std::size_t>(index - 1)];
}

const EaInvariant& ClassRegistry::invariant(int index) const {
  if (index < 1 || index > size()) throw NotFound("no class " + std::to_string(index));
  return invariants_[static_cast<std::size_t>(index - 1)];
}

ExtensionPartition extensions(const VectorialFunction& F, std::span<const std::uint64_t> friend_tables,
                              ClassRegistry& upper, unsigned threads,
                              const std::function<void(std::uint64_t, std::uint64_t)>& progress) {
  const int n = F.n();
  require_word_size(n);
  if (upper.n() != n || upper.m() != F.m() + 1) throw InvalidInput("registry is for another layer");
  const auto comps = component_words(F);
  std::unordered_map<std::uint64_t, std::size_t> position;
  position.reserve(friend_tables.size() * 2);
  for (std::size_t i = 0; i < friend_tables.size(); ++i) {
    if (!position.emplace(friend_tables[i], i).second) throw InvalidInput("duplicate friend table");
  }
  // Orbits of f -> strip(f ^ F_b), restricted to the given tables.
  std::vector<int> orbit_of(friend_tables.size(), -1);
  std::vector<std::size_t> orbit_rep;
  std::vector<std::uint64_t> orbit_size;
  for (std::size_t i = 0; i < friend_tables.size(); ++i) {
    if (orbit_of[i] >= 0) continue;
    const int id = static_cast<int>(orbit_rep.size());
    orbit_rep.push_back(i);
    orbit_size.push_back(1);
    orbit_of[i] = id;
    for (auto c : comps) {
      const auto it = position.find(strip_affine_word(n, friend_tables[i] ^ c));
      if (it != position.end() && orbit_of[it->second] < 0) {
        orbit_of[it->second] = id;
        ++orbit_size.back();
      }
    }
  }

  ExtensionPartition out;
  out.total = friend_tables.size();
  const unsigned workers = resolve_threads(threads);
  const std::size_t batch = std::max<std::size_t>(32, std::size_t{workers} * 8);
  std::vector<EaInvariant> invs;
  std::uint64_t done = 0;
  for (std::size_t begin = 0; begin < orbit_rep.size(); begin += batch) {
    const std::size_t stop = std::min(orbit_rep.size(), begin + batch);
    invs.assign(stop - begin, {});
    detail::parallel_for(stop - begin, workers, [&](std::size_t k) {
      const auto G = F.append(word_function(n, friend_tables[orbit_rep[begin + k]]));
      invs[k] = ea_invariant(G, upper.options());
    });
    for (std::size_t k = 0; k < invs.size(); ++k) {
      const auto G = F.append(word_function(n, friend_tables[orbit_rep[begin + k]]));
      const int cls = upper.add(G, std::move(invs[k]));
      out.per_class[cls] += orbit_size[begin + k];
      done += orbit_size[begin + k];
    }
    out.classified += stop - begin;
    if (progress) progress(done, out.total);
  }
  return out;
}

std::vector<BentSpace> bent_spaces(const VectorialFunction& G) {
  const int k = G.m();
  if (k < 2) throw InvalidInput("bent spaces need at least two coordinates");
  std::vector<BentSpace> out;
  for (Point h = 1; h < (Point{1} << k); ++h) {
    const int p = std::countr_zero(h);
    std::vector<BooleanFunction> coords;
    for (int j = 0; j < k; ++j) {
      if (j == p) continue;
      const Point b = (Point{1} << j) | (((h >> j) & 1U) << p);
      coords.push_back(component(G, b));
    }
    out.push_back({h, VectorialFunction(std::move(coords))});
  }
  return out;
}

std::map<int, std::size_t> bent_space_profile(const VectorialFunction& G, const ClassRegistry& lower) {
  std::map<int, std::size_t> out;
  for (const auto& s : bent_spaces(G)) {
    const int idx = lower.find(s.function);
    if (idx == 0) throw Inconsistency("a bent space of the representative lies in no known lower class");
    ++out[idx];
  }
  return out;
}

// ---------------------------------------------------------------------------

BigInt gl_order(int m) {
  BigInt out = 1;
  for (int k = 0; k < m; ++k) out *= pow2(static_cast<unsigned>(m)) - pow2(static_cast<unsigned>(k));
  return out;
}

BigInt class_cardinality(int n, std::span<const ClassRecord> lower, std::span<const HasseEdge> edges,
                         int upper_index) {
  BigInt sum = 0;
  for (const auto& e : edges) {
    if (e.upper != upper_index) continue;
    const auto it = std::find_if(lower.begin(), lower.end(),
                                 [&](const ClassRecord& r) { return r.m == e.m && r.index == e.lower; });
    if (it == lower.end()) {
      throw Inconsistency("edge refers to missing class " + std::to_string(e.m) + "," + std::to_string(e.lower));
    }
    sum += it->cardinality * e.friends;
  }
  return pow2(static_cast<unsigned>(n + 1)) * sum;
}

bool RelationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.ok; });
}

std::string RelationReport::to_string() const {
  std::string out;
  for (const auto& c : checks) {
    out += (c.ok ? "PASS " : "FAIL ") + c.name;
    if (!c.detail.empty()) out += ": " + c.detail;
    out += "\n";
  }
  return out;
}

RelationReport verify_relations(int n, std::span<const ClassRecord> records, std::span<const HasseEdge> edges,
                                const std::map<int, BigInt>& affine_free_counts) {
  RelationReport report;
  std::map<int, std::vector<const ClassRecord*>> layers;
  for (const auto& r : records) layers[r.m].push_back(&r);
  auto record = [&](int m, int i) -> const ClassRecord* {
    for (const auto* r : layers[m]) {
      if (r->index == i) return r;
    }
    return nullptr;
  };

  for (const auto& [m, recs] : layers) {
    RelationCheck c{"gl-divisibility m=" + std::to_string(m), true, ""};
    const BigInt gl = gl_order(m);
    for (const auto* r : recs) {
      if (r->cardinality % gl != 0) {
        c.ok = false;
        c.detail += "C" + r->id() + " ";
      }
    }
    if (c.ok) c.detail = "|GL(" + std::to_string(m) + ",2)| = " + big_str(gl) + " divides every class size";
    report.checks.push_back(std::move(c));
  }

  for (const auto& [m, recs] : layers) {
    if (!layers.count(m - 1)) continue;
    const std::size_t expected = (std::size_t{1} << m) - 1;
    RelationCheck sum{"space-sum m=" + std::to_string(m), true, ""};
    RelationCheck ratio{"portion-identity m=" + std::to_string(m), true, ""};
    RelationCheck support{"edge-support m=" + std::to_string(m), true, ""};
    const int l = m - 1;
    const BigInt lhs_scale = gl_order(m) * pow2(static_cast<unsigned>(n + 1));
    const BigInt rhs_scale = gl_order(l) * pow2(static_cast<unsigned>(l));
    for (const auto* up : recs) {
      std::size_t spaces = 0;
      for (const auto& e : edges) {
        if (e.m != l || e.upper != up->index) continue;
        spaces += e.spaces;
        if ((e.friends > 0) != (e.spaces > 0)) {
          support.ok = false;
          support.detail += "C" + std::to_string(l) + "," + std::to_string(e.lower) + "->C" + up->id() + " ";
        }
        const ClassRecord* lo = record(l, e.lower);
        if (lo == nullptr) {
          ratio.ok = false;
          ratio.detail += "missing C" + std::to_string(l) + "," + std::to_string(e.lower) + " ";
          continue;
        }
        // |C_i| friends_i / spaces_i = |C_j| |GL(l)| 2^l / (|GL(l+1)| 2^(n+1))
        if (lo->cardinality * e.friends * lhs_scale != up->cardinality * rhs_scale * e.spaces) {
          ratio.ok = false;
          ratio.detail += "C" + lo->id() + "->C" + up->id() + " ";
        }
      }
      if (spaces != expected) {
        sum.ok = false;
        sum.detail += "C" + up->id() + " has " + std::to_string(spaces) + " ";
      }
    }
    if (sum.ok) sum.detail = "every class has " + std::to_string(expected) + " spaces";
    if (ratio.ok) ratio.detail = "|C_i| friends / spaces constant on every upper class";
    report.checks.push_back(std::move(sum));
    report.checks.push_back(std::move(ratio));
    report.checks.push_back(std::move(support));
  }

  for (const auto& [m, recs] : layers) {
    BigInt total = 0;
    for (const auto* r : recs) total += r->cardinality;
    const BigInt scale = pow2(static_cast<unsigned>(m * (n + 1)));
    RelationCheck c{"affine-free-scaling m=" + std::to_string(m), total % scale == 0, ""};
    c.detail = "|B| = " + big_str(total);
    if (auto it = affine_free_counts.find(m); it != affine_free_counts.end()) {
      c.ok = c.ok && total == it->second * scale;
      c.detail += ", |AB| = " + big_str(it->second) + ", |AB| 2^" + std::to_string(m * (n + 1)) + " = " +
                  big_str(it->second * scale);
    } else {
      c.detail += ", |AB| = " + big_str(total / scale);
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

// ---------------------------------------------------------------------------

LayerOne layer_one(int n, const Algorithm1Options& options) {
  LayerOne out;
  out.n = n;
  out.affine_free = affine_free_bent_tables(n, options.enumeration);
  emit(options, {{"stage", "enumerate"}, {"n", n}, {"affine_free", out.affine_free.size()}});
  ClassRegistry reg(n, 1, options.canonical);
  const BigInt scale = pow2(static_cast<unsigned>(n + 1));

  if (n <= 4) {
    std::vector<std::uint64_t> counts;
    for (auto t : out.affine_free) {
      bool created = false;
      const auto f = VectorialFunction(word_function(n, t));
      const int idx = reg.add(f, &created);
      if (created) {
        counts.push_back(0);
        out.records.push_back(make_record(1, idx, f, reg.invariant(idx)));
      }
      ++counts[static_cast<std::size_t>(idx - 1)];
    }
    for (std::size_t i = 0; i < counts.size(); ++i) out.records[i].cardinality = scale * counts[i];
    for (auto& r : out.records) out.keys.push_back(layer_one_key(n, r.representative.coordinate(0).word(0)));
    return out;
  }

  // Keys are EA-invariants; distinct keys meet distinct classes by
  // construction, and completeness is probed on spread samples.
  const unsigned threads = resolve_threads(options.enumeration.threads);
  std::vector<std::uint16_t> key_code(out.affine_free.size());
  constexpr std::size_t kChunk = 1 << 14;
  const std::size_t chunks = (out.affine_free.size() + kChunk - 1) / kChunk;
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(out.affine_free.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const auto k = layer_one_key(n, out.affine_free[i]);
      key_code[i] = static_cast<std::uint16_t>((k.degree << 8) | static_cast<int>(k.gamma_rank));
    }
  });
  std::map<std::uint16_t, int> class_of_key;
  std::vector<std::uint64_t> counts;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < out.affine_free.size(); ++i) {
    auto it = class_of_key.find(key_code[i]);
    if (it == class_of_key.end()) {
      bool created = false;
      const auto f = VectorialFunction(word_function(n, out.affine_free[i]));
      const int idx = reg.add(f, &created);
      if (!created) throw Inconsistency("two layer-one keys meet the same class");
      it = class_of_key.emplace(key_code[i], idx).first;
      out.records.push_back(make_record(1, idx, f, reg.invariant(idx)));
      out.keys.push_back({key_code[i] >> 8, static_cast<std::size_t>(key_code[i] & 0xFF)});
      counts.push_back(0);
      members.emplace_back();
    }
    ++counts[static_cast<std::size_t>(it->second - 1)];
    members[static_cast<std::size_t>(it->second - 1)].push_back(i);
  }
  constexpr std::size_t kSamples = 16;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const auto& mem = members[c];
    for (std::size_t s = 0; s < kSamples && s < mem.size(); ++s) {
      const std::size_t i = mem[s * mem.size() / kSamples];
      if (reg.find(VectorialFunction(word_function(n, out.affine_free[i]))) != static_cast<int>(c + 1)) {
        throw Inconsistency("layer-one key " + out.keys[c].to_string() + " is not a complete invariant");
      }
    }
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.records[i].cardinality = scale * counts[i];
    emit(options, {{"stage", "layer1"}, {"class", out.records[i].id()}, {"key", out.keys[i].to_string()},
                   {"affine_free", counts[i]}});
  }
  return out;
}

namespace {

void label_with_catalog(std::vector<ClassRecord>& records, const CanonicalOptions& options) {
  std::map<int, std::vector<std::pair<std::string, EaInvariant>>> known;
  for (auto& r : records) {
    if (r.representative.n() != 6 || r.m > 3) continue;
    auto& list = known[r.m];
    if (list.empty()) {
      for (int i = 1; i <= catalog_size(r.m); ++i) {
        const auto& e = catalog(r.m, i);
        list.emplace_back(e.id(), ea_invariant(e.representative, options));
      }
    }
    const auto inv = ea_invariant(r.representative, options);
    for (const auto& [id, ci] : list) {
      if (ci.same_class(inv)) {
        r.catalog_id = id;
        break;
      }
    }
  }
}

}  // namespace

Algorithm1Result run_algorithm1(const LayerOne& base, const Algorithm1Options& options) {
  const int n = base.n;
  const unsigned threads = resolve_threads(options.enumeration.threads);
  Algorithm1Result res;
  res.n = n;
  res.affine_free = base.affine_free.size();

  ClassRegistry lower(n, 1, options.canonical);
  for (const auto& r : base.records) {
    bool created = false;
    if (lower.add(r.representative, &created) != r.index || !created) {
      throw Inconsistency("layer-one representatives are not pairwise inequivalent");
    }
  }
  std::vector<ClassRecord> layer = base.records;

  for (int m = 1; m < n / 2; ++m) {
    ClassRegistry upper(n, m + 1, options.canonical);
    std::map<std::pair<int, int>, HasseEdge> edges;
    for (auto& rec : layer) {
      const auto t0 = Clock::now();
      const auto friends = bent_friends(rec.representative, base.affine_free, threads);
      rec.extendable = !friends.empty();
      emit(options, {{"stage", "friends"}, {"class", rec.id()}, {"friends", friends.size()}});
      const auto part = extensions(rec.representative, friends, upper, threads,
                                   [&](std::uint64_t done, std::uint64_t total) {
                                     emit(options, {{"stage", "extensions"}, {"class", rec.id()},
                                                    {"done", done}, {"total", total}, {"classes", upper.size()}});
                                   });
      for (const auto& [j, c] : part.per_class) {
        auto& e = edges[{rec.index, j}];
        e.m = m;
        e.lower = rec.index;
        e.upper = j;
        e.friends = c;
      }
      emit(options, {{"stage", "classified"}, {"class", rec.id()}, {"orbits", part.classified},
                     {"upper_classes", upper.size()},
                     {"seconds", std::chrono::duration<double>(Clock::now() - t0).count()}});
    }

    std::vector<ClassRecord> next;
    for (int j = 1; j <= upper.size(); ++j) {
      next.push_back(make_record(m + 1, j, upper.representative(j), upper.invariant(j)));
      for (const auto& [i, s] : bent_space_profile(upper.representative(j), lower)) {
        auto& e = edges[{i, j}];
        e.m = m;
        e.lower = i;
        e.upper = j;
        e.spaces = s;
      }
    }
    std::vector<HasseEdge> layer_edges;
    for (auto& [key, e] : edges) layer_edges.push_back(e);
    for (auto& r : next) r.cardinality = class_cardinality(n, layer, layer_edges, r.index);

    res.records.insert(res.records.end(), layer.begin(), layer.end());
    res.edges.insert(res.edges.end(), layer_edges.begin(), layer_edges.end());
    layer = std::move(next);
    lower = std::move(upper);
  }
  for (auto& r : layer) r.extendable = false;
  res.records.insert(res.records.end(), layer.begin(), layer.end());

  for (const auto& r : res.records) {
    res.totals[r.m] += r.cardinality;
    ++res.class_counts[r.m];
    if (r.m < n / 2 && !r.extendable) res.only_top_layer_lonely = false;
  }
  if (options.label_with_catalog && n == 6) label_with_catalog(res.records, options.canonical);

  std::map<int, BigInt> af;
  af[1] = res.affine_free;
  if (n <= 4) {
    for (int m = 2; m <= n / 2; ++m) af[m] = brute_force_vectorial_count(n, m, true);
  }
  res.report = verify_relations(n, res.records, res.edges, af);
  return res;
}

Algorithm1Result run_algorithm1(int n, const Algorithm1Options& options) {
  return run_algorithm1(layer_one(n, options), options);
}

// ---------------------------------------------------------------------------

namespace {

std::string node_name(int m, int i) { return "C" + std::to_string(m) + "_" + std::to_string(i); }

}  // namespace

std::string emit_hasse_dot(std::span<const ClassRecord> records, std::span<const HasseEdge> edges) {
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n";
  for (const auto& r : records) {
    os << "  " << node_name(r.m, r.index) << " [label=\"C^" << r.m << "_" << r.index;
    if (!r.catalog_id.empty()) os << " (" << r.catalog_id << ")";
    os << "\\n" << big_str(r.cardinality) << "\"];\n";
  }
  for (const auto& e : edges) {
    os << "  " << node_name(e.m, e.lower) << " -> " << node_name(e.m + 1, e.upper) << " [label=\"" << e.spaces
       << " / " << big_str(e.friends) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_hasse_json(std::span<const ClassRecord> records, std::span<const HasseEdge> edges) {
  json j;
  j["nodes"] = json::array();
  j["edges"] = json::array();
  for (const auto& r : records) {
    j["nodes"].push_back({{"id", r.id()}, {"m", r.m}, {"index", r.index}, {"cardinality", big_str(r.cardinality)},
                          {"catalog", r.catalog_id}});
  }
  for (const auto& e : edges) {
    j["edges"].push_back({{"lower", std::to_string(e.m) + "," + std::to_string(e.lower)},
                          {"upper", std::to_string(e.m + 1) + "," + std::to_string(e.upper)},
                          {"spaces", e.spaces},
                          {"friends", big_str(e.friends)},
                          {"label", std::to_string(e.spaces) + " / " + big_str(e.friends)}});
  }
  return j.dump(2) + "\n";
}

std::string class_records_jsonl(std::span<const ClassRecord> records) {
  std::string out;
  for (const auto& r : records) {
    json rep = json::array();
    for (const auto& c : r.representative.coordinates()) rep.push_back(format_anf(table_to_anf(c)));
    json j = {{"id", r.id()},
              {"representative", rep},
              {"cardinality", big_str(r.cardinality)},
              {"fingerprint", r.fingerprint_hash},
              {"canonical", r.canonical_hash},
              {"extendable", r.extendable}};
    if (!r.catalog_id.empty()) j["catalog"] = r.catalog_id;
    out += j.dump() + "\n";
  }
  return out;
}

bool verify_example_witness(const BooleanFunction& f, const BooleanFunction& f_prime, const VectorialFunction& pi,
                            const VectorialFunction& sigma) {
  const int n = f.num_vars();
  if (f_prime.num_vars() != n || pi.n() != n || pi.m() != n || sigma.n() != n || sigma.m() != n) return false;
  const auto pv = pi.values();
  const auto sv = sigma.values();
  if (!is_permutation(pv) || !is_permutation(sv)) return false;
  const Point size = Point{1} << n;
  for (Point x = 0; x < size; ++x) {
    for (Point y = 0; y < size; ++y) {
      if (f(pv[x] ^ sv[y]) != f_prime(x ^ y)) return false;
    }
  }
  return true;
}

}  // namespace bentkit
