#include "bentkit/suites.hpp"

#include <chrono>
#include <map>
#include <sstream>

#include "bentkit/catalog.hpp"
#include "bentkit/classify.hpp"
#include "bentkit/constructions.hpp"
#include "bentkit/designs.hpp"
#include "bentkit/equivalence.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/examples.hpp"
#include "bentkit/invariants.hpp"
#include "bentkit/snf.hpp"
#include "bentkit/walsh.hpp"

namespace bentkit {

namespace {

using Clock = std::chrono::steady_clock;

class Checks {
 public:
  template <class Fn>
  void run(const std::string& name, Fn&& fn) {
    const auto t0 = Clock::now();
    CheckResult r;
    r.name = name;
    try {
      r.ok = fn(r.detail);
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  std::vector<CheckResult> out;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

void appendix_bent(Checks& c) {
  for (const auto& e : catalog_entries()) {
    c.run("bent " + e.id(), [&](std::string& d) {
      const bool bent = is_bent(e.representative);
      const int deg = e.representative.degree();
      d = "bent=" + yes_no(bent) + " degree=" + std::to_string(deg);
      return bent && deg <= 3;
    });
  }
}

void appendix_snf(Checks& c) {
  for (const auto& e : catalog_entries()) {
    c.run("snf " + e.id(), [&](std::string& d) {
      const auto snf = smith_normal_form(dev_graph(e.representative).incidence());
      d = snf.to_string();
      if (!(snf == e.expected_snf)) d += " expected " + e.expected_snf.to_string();
      return snf == e.expected_snf;
    });
  }
}

void example1(Checks& c, const SuiteOptions& o) {
  const auto p = quadratic_cubic_pair();
  c.run("support designs isomorphic", [&](std::string& d) {
    const auto r = are_isomorphic(dev_support(p.f), dev_support(p.f_prime), o.canonical);
    d = r.reason;
    return r.isomorphic && r.witness && verify_witness(dev_support(p.f), dev_support(p.f_prime), *r.witness);
  });
  c.run("graph designs isomorphic", [&](std::string& d) {
    const auto g1 = dev_graph(VectorialFunction(p.f));
    const auto g2 = dev_graph(VectorialFunction(p.f_prime));
    const auto r = are_isomorphic(g1, g2, o.canonical);
    d = r.reason;
    return r.isomorphic && r.witness && verify_witness(g1, g2, *r.witness);
  });
  c.run("not EA-equivalent", [&](std::string& d) {
    const bool eq = ea_equivalent(VectorialFunction(p.f), VectorialFunction(p.f_prime), o.canonical);
    d = "ea_equivalent=" + yes_no(eq);
    return !eq;
  });
}

void example2(Checks& c) {
  const auto w = degree_five_witness();
  c.run("pi and sigma are permutations", [&](std::string& d) {
    const bool a = bentkit::is_permutation(w.pi.values());
    const bool b = bentkit::is_permutation(w.sigma.values());
    d = "pi=" + yes_no(a) + " sigma=" + yes_no(b);
    return a && b;
  });
  c.run("f(pi(x) + sigma(y)) = f'(x + y) on all pairs", [&](std::string&) {
    return verify_example_witness(w.f, w.f_prime, w.pi, w.sigma);
  });
  c.run("2-rank dev(D_f) = 32", [&](std::string& d) {
    const auto r = gf2_rank(dev_support(w.f).incidence());
    d = std::to_string(r);
    return r == 32;
  });
  c.run("2-rank dev(D_f') = 32", [&](std::string& d) {
    const auto r = gf2_rank(dev_support(w.f_prime).incidence());
    d = std::to_string(r);
    return r == 32;
  });
  c.run("2-rank of a quadratic bent design on F_2^10 = 12", [&](std::string& d) {
    const auto q = anf_to_table(Anf(10, {0x21, 0x42, 0x84, 0x108, 0x210}));
    const auto r = gf2_rank(dev_support(q).incidence());
    d = std::to_string(r);
    return r == 12;
  });
}

void n4_oracle(Checks& c, const SuiteOptions& o) {
  const auto bf = brute_force_bent(4);
  c.run("896 bent functions", [&](std::string& d) {
    d = std::to_string(bf.bent);
    return bf.bent == 896;
  });
  c.run("28 affine-free", [&](std::string& d) {
    d = std::to_string(bf.affine_free);
    return bf.affine_free == 28;
  });
  c.run("enumeration agrees with brute force", [&](std::string&) {
    auto tabs = affine_free_bent_tables(4);
    std::sort(tabs.begin(), tabs.end());
    return tabs == bf.affine_free_tables;
  });
  Algorithm1Options ao;
  ao.enumeration.threads = o.threads;
  ao.canonical = o.canonical;
  const auto res = run_algorithm1(4, ao);
  c.run("one class at m = 1 and at m = 2", [&](std::string& d) {
    d = std::to_string(res.class_counts.at(1)) + ", " + std::to_string(res.class_counts.at(2));
    return res.class_counts.at(1) == 1 && res.class_counts.at(2) == 1;
  });
  c.run("class sizes match the direct (4,2) count", [&](std::string& d) {
    const BigInt direct = brute_force_vectorial_count(4, 2);
    d = res.totals.at(2).str() + " vs " + direct.str();
    return res.totals.at(2) == direct && res.totals.at(1) == BigInt(bf.bent);
  });
  c.run("relations", [&](std::string& d) {
    d = res.report.ok() ? "all pass" : res.report.to_string();
    return res.report.ok();
  });
}

void counts_n6(Checks& c, const SuiteOptions& o) {
  Algorithm1Options ao;
  ao.enumeration.threads = o.threads;
  ao.canonical = o.canonical;
  ao.progress = o.progress;
  const auto res = run_algorithm1(6, ao);
  c.run("affine-free count 48386176", [&](std::string& d) {
    d = std::to_string(res.affine_free);
    return res.affine_free == 48386176;
  });
  c.run("|B(6,1)| = 5425430528", [&](std::string& d) {
    d = res.totals.at(1).str();
    return res.totals.at(1) == BigInt("5425430528");
  });
  c.run("4 / 9 / 13 classes", [&](std::string& d) {
    d = std::to_string(res.class_counts.at(1)) + " / " + std::to_string(res.class_counts.at(2)) + " / " +
        std::to_string(res.class_counts.at(3));
    return res.class_counts.at(1) == 4 && res.class_counts.at(2) == 9 && res.class_counts.at(3) == 13;
  });
  c.run("|B(6,2)| = 23392233361244160", [&](std::string& d) {
    d = res.totals.at(2).str();
    return res.totals.at(2) == BigInt("23392233361244160");
  });
  c.run("|B(6,3)| = 121282113886947901440", [&](std::string& d) {
    d = res.totals.at(3).str();
    return res.totals.at(3) == BigInt("121282113886947901440");
  });
  c.run("relations", [&](std::string& d) {
    d = res.report.ok() ? "all pass" : res.report.to_string();
    return res.report.ok();
  });
  c.run("only m = 3 is non-extendable", [&](std::string&) { return res.only_top_layer_lonely; });
  c.run("every class matches a published representative", [&](std::string& d) {
    std::size_t matched = 0;
    std::map<std::string, int> seen;
    for (const auto& r : res.records) {
      if (!r.catalog_id.empty()) {
        ++matched;
        ++seen[r.catalog_id];
      }
    }
    d = std::to_string(matched) + " of " + std::to_string(res.records.size());
    return matched == res.records.size() && seen.size() == matched;
  });
}

void theorem4_n6(Checks& c, const SuiteOptions& o) {
  for (int m = 2; m <= 3; ++m) {
    std::vector<CanonicalForm> forms;
    for (int i = 1; i <= catalog_size(m); ++i) {
      forms.push_back(canonical_form(dev_graph(catalog(m, i).representative), o.canonical));
    }
    for (int i = 0; i < catalog_size(m); ++i) {
      for (int j = i + 1; j < catalog_size(m); ++j) {
        c.run("dev_graph " + catalog(m, i + 1).id() + " vs " + catalog(m, j + 1).id() + " not isomorphic",
              [&](std::string&) { return !(forms[i].matrix == forms[j].matrix); });
      }
    }
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"appendix-bent", "appendix-snf", "example1", "example2", "n4-oracle", "counts-n6", "theorem4-n6"};
}

bool is_extended_suite(const std::string& name) { return name == "counts-n6" || name == "theorem4-n6"; }

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options) {
  Checks c;
  if (name == "appendix-bent") {
    appendix_bent(c);
  } else if (name == "appendix-snf") {
    appendix_snf(c);
  } else if (name == "example1") {
    example1(c, options);
  } else if (name == "example2") {
    example2(c);
  } else if (name == "n4-oracle") {
    n4_oracle(c, options);
  } else if (name == "counts-n6") {
    counts_n6(c, options);
  } else if (name == "theorem4-n6") {
    theorem4_n6(c, options);
  } else {
    throw NotFound("unknown suite '" + name + "'");
  }
  return std::move(c.out);
}

}  // namespace bentkit
