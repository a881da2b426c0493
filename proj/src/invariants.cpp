#include "bentkit/invariants.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include <openssl/evp.h>

#include "bentkit/walsh.hpp"

namespace bentkit {

std::size_t gamma_rank(const VectorialFunction& F) { return gf2_rank(dev_graph(F).incidence()); }

std::size_t gamma_rank_boolean(const BooleanFunction& f) {
  const std::size_t size = f.domain_size();
  BitMatrix m(size + 1, size + 1);
  for (Point g = 0; g < size; ++g) {
    for (Point x = 0; x < size; ++x) {
      if (f(x ^ g)) m.set(g, x);
    }
    m.set(g, size);
    m.set(size, g);
  }
  return gf2_rank(std::move(m));
}

Multiset make_multiset(std::vector<std::size_t> values) {
  std::sort(values.begin(), values.end());
  Multiset out;
  for (auto v : values) {
    if (!out.empty() && out.back().first == v) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

std::string format_multiset(const Multiset& m) {
  std::string out;
  for (const auto& [v, k] : m) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(v) + "^" + std::to_string(k);
  }
  return out;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << kFingerprintVersion << "|v=" << points << "|b=" << blocks << "|k=" << format_multiset(block_sizes)
     << "|r=" << format_multiset(replications) << "|rank2=" << gf2_rank;
  os << "|snf=" << (snf ? snf->to_string() : "-");
  os << "|deg=" << (degrees ? format_multiset(*degrees) : "-");
  os << "|gamma=" << (component_ranks ? format_multiset(*component_ranks) : "-");
  return os.str();
}

std::string Fingerprint::hash() const {
  const std::string s = to_string();
  return sha256_hex(s.data(), s.size());
}

Fingerprint fingerprint(const IncidenceStructure& d, bool with_snf) {
  Fingerprint fp;
  fp.points = d.num_points();
  fp.blocks = d.num_blocks();
  fp.block_sizes = make_multiset(d.block_sizes());
  std::vector<std::size_t> rep(d.num_points(), 0);
  for (std::size_t b = 0; b < d.num_blocks(); ++b) {
    for (auto p : d.block(b)) ++rep[p];
  }
  fp.replications = make_multiset(std::move(rep));
  fp.gf2_rank = gf2_rank(d.incidence());
  if (with_snf) fp.snf = smith_normal_form(d.incidence());
  return fp;
}

Fingerprint function_fingerprint(const VectorialFunction& F) {
  Fingerprint fp = fingerprint(addition_design(F));
  std::vector<std::size_t> degs;
  std::vector<std::size_t> ranks;
  for (Point b = 1; b < (Point{1} << F.m()); ++b) {
    const BooleanFunction c = component(F, b);
    degs.push_back(static_cast<std::size_t>(algebraic_degree(c)));
    ranks.push_back(gamma_rank_boolean(c));
  }
  fp.degrees = make_multiset(std::move(degs));
  fp.component_ranks = make_multiset(std::move(ranks));
  return fp;
}

std::string sha256_hex(const void* data, std::size_t size) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data, size, digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

}  // namespace bentkit
