#include "bentkit/examples.hpp"

#include <string>
#include <vector>

#include "bentkit/anf_text.hpp"
#include "bentkit/errors.hpp"

namespace bentkit {

namespace {

BooleanFunction from_anf(const char* text, int n) { return anf_to_table(parse_anf(text, n)); }

VectorialFunction from_anfs(const std::vector<const char*>& coords, int n) {
  std::vector<BooleanFunction> fs;
  for (const char* c : coords) fs.push_back(from_anf(c, n));
  return VectorialFunction(std::move(fs));
}

}  // namespace

BentPair quadratic_cubic_pair() {
  return {from_anf("x1*x2 + x3*x4 + x5*x6", 6), from_anf("x1*x2 + x3*x4 + x5*x6 + x1*x3*x5", 6)};
}

BentPair direct_sum_pair(int n) {
  if (n < 6 || n > kMaxVars || n % 2 != 0) throw InvalidInput("direct_sum_pair needs even 6 <= n <= 12");
  BentPair p = quadratic_cubic_pair();
  const int k = n - 6;
  if (k == 0) return p;
  std::string g;
  for (int i = 1; i < k; i += 2) {
    if (!g.empty()) g += " + ";
    g += "x" + std::to_string(i) + "*x" + std::to_string(i + 1);
  }
  const BooleanFunction h = from_anf(g.c_str(), k);
  return {direct_sum(p.f, h), direct_sum(p.f_prime, h)};
}

TranslationWitness degree_five_witness() {
  constexpr int n = 10;
  TranslationWitness w;
  w.f = from_anf("x1*x6 + x2*x7 + x3*x8 + x4*x9 + x5*x10 + x1*x2*x3*x4*x5", n);
  w.f_prime = from_anf(
      "x1*x6 + x2*x7 + x3*x8 + x4*x9 + x5*x10 + x1*x2*x3*x4*x5"
      " + x4 + x6 + x8 + x10 + x1*x2 + x2*x3 + x1*x2*x3 + x2*x4*x5 + x1*x2*x4*x5 + x2*x3*x4*x5",
      n);
  w.pi = from_anfs({"x1", "x2", "x3", "x4", "x1 + x5", "x1 + x10 + x2*x3 + x5 + x6", "x1*x3 + x7", "x1*x2 + x8",
                    "x9", "x1 + x10"},
                   n);
  w.sigma = from_anfs({"x1 + 1", "x2", "x3 + 1", "x4", "x5 + x1", "x6 + x1 + x10 + x2 + x2*x3 + x5",
                       "x7 + x1 + x3 + x1*x3", "x8 + x2 + x1*x2", "x9 + 1", "x10 + 1 + x1"},
                      n);
  return w;
}

}  // namespace bentkit
