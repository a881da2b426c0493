// bentkit command-line tool.
//
// Exit codes: 0 ok, 1 other error, 2 parse error, 3 failed precondition,
// 4 resource budget exceeded, 5 verification failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bentkit/anf_text.hpp"
#include "bentkit/canonical.hpp"
#include "bentkit/catalog.hpp"
#include "bentkit/classify.hpp"
#include "bentkit/designs.hpp"
#include "bentkit/equivalence.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/invariants.hpp"
#include "bentkit/suites.hpp"
#include "bentkit/walsh.hpp"

namespace {

using json = nlohmann::json;
using namespace bentkit;

enum Exit { kOk = 0, kOther = 1, kParse = 2, kPrecondition = 3, kBudget = 4, kVerification = 5 };

struct Global {
  unsigned threads = 0;
  std::uint64_t budget = CanonicalOptions{}.node_budget;
  bool paper_anf = false;
  std::string format = "json";
  std::string output;

  CanonicalOptions canonical() const { return CanonicalOptions{budget}; }
  AnfSyntax syntax() const { return paper_anf ? AnfSyntax::kDigits : AnfSyntax::kStandard; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A function file (JSON record) or "catalog:m,i".
VectorialFunction load_function(const std::string& source, const Global& g) {
  if (source.rfind("catalog:", 0) == 0) {
    const std::string id = source.substr(8);
    const auto comma = id.find(',');
    if (comma == std::string::npos) throw ParseError("catalog id must look like catalog:m,i");
    try {
      return catalog(std::stoi(id.substr(0, comma)), std::stoi(id.substr(comma + 1))).representative;
    } catch (const std::invalid_argument&) {
      throw ParseError("catalog id must look like catalog:m,i");
    }
  }
  return parse_function_json(read_file(source), g.syntax()).function;
}

bool looks_like_json(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

IncidenceStructure build_design(const VectorialFunction& F, const std::string& kind) {
  if (kind == "support") {
    if (F.m() != 1) throw InvalidInput("support designs need a Boolean function");
    return dev_support(F.coordinate(0));
  }
  if (kind == "graph") return dev_graph(F);
  if (kind == "addition") return addition_design(F);
  throw InvalidInput("unknown design kind '" + kind + "'");
}

DesignParameters expected_parameters(const VectorialFunction& F, const std::string& kind) {
  if (kind == "support") return dev_support_parameters(F.n(), F.coordinate(0)(0));
  if (kind == "graph") return dev_graph_parameters(F.n(), F.m());
  return addition_design_parameters(F.n(), F.m());
}

// An incidence file or a function file turned into a design of `kind`.
IncidenceStructure load_design(const std::string& source, const std::string& kind, const Global& g) {
  if (source.rfind("catalog:", 0) != 0) {
    const std::string text = read_file(source);
    if (!looks_like_json(text)) return parse_incidence(text);
  }
  return build_design(load_function(source, g), kind);
}

void emit_result(const Global& g, const json& result, const std::string& summary) {
  const std::string body = g.format == "text" ? summary : result.dump(2) + "\n";
  if (!g.output.empty()) {
    std::ofstream out(g.output, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + g.output);
    out << result.dump(2) << "\n";
    std::cout << summary;
  } else {
    std::cout << body;
  }
}

json multiset_json(const Multiset& m) {
  json j = json::object();
  for (const auto& [v, k] : m) j[std::to_string(v)] = k;
  return j;
}

int cmd_analyze(const std::string& input, const Global& g) {
  const VectorialFunction F = load_function(input, g);
  json res;
  res["n"] = F.n();
  res["m"] = F.m();
  res["degree"] = F.degree();
  const bool bent = is_bent(F);
  res["bent"] = bent;
  res["nonlinearity"] = nonlinearity(F);
  res["degree_bound"] = degree_bound_check(F);
  std::ostringstream sum;
  sum << "n=" << F.n() << " m=" << F.m() << " degree=" << F.degree() << " bent=" << (bent ? "true" : "false")
      << " nl=" << nonlinearity(F) << "\n";
  if (F.m() == 1) {
    const auto spec = walsh_transform(F.coordinate(0));
    std::map<int, std::size_t> counts;
    for (int v : spec.values) ++counts[v];
    json s = json::object();
    for (const auto& [v, k] : counts) s[std::to_string(v)] = k;
    res["spectrum"] = s;
    if (bent) {
      const std::string d = format_anf(table_to_anf(dual(F.coordinate(0))));
      res["dual"] = d;
      sum << "dual: " << d << "\n";
    }
  }
  emit_result(g, res, sum.str());
  return kOk;
}

int cmd_design(const std::string& input, const std::string& kind, bool hex, const std::string& matrix_out,
               const Global& g) {
  const VectorialFunction F = load_function(input, g);
  if (kind == "addition" && !is_bent(F)) throw NotBent("addition designs need a bent function");
  const IncidenceStructure d = build_design(F, kind);
  json res;
  res["kind"] = kind;
  res["blocks"] = d.num_blocks();
  res["points"] = d.num_points();
  std::ostringstream sum;
  sum << kind << " design: " << d.num_blocks() << " blocks, " << d.num_points() << " points\n";
  int code = kOk;
  if (is_bent(F)) {
    const DesignParameters p = expected_parameters(F, kind);
    const ValidationReport v = validate_parameters(d, p);
    res["parameters"] = p.to_string();
    res["valid"] = v.ok;
    if (!v.ok) res["violation"] = v.message;
    sum << "parameters " << p.to_string() << (v.ok ? " verified\n" : " FAILED: " + v.message + "\n");
    if (!v.ok) code = kVerification;
  } else {
    res["valid"] = nullptr;
    sum << "function is not bent; no design parameters to check\n";
  }
  const std::string matrix = hex ? to_hex(d) : to_text(d);
  if (!matrix_out.empty()) {
    std::ofstream out(matrix_out, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + matrix_out);
    out << matrix;
    res["matrix_file"] = matrix_out;
  } else if (g.format == "text") {
    sum << matrix;
  }
  emit_result(g, res, sum.str());
  return code;
}

json fingerprint_json(const Fingerprint& fp) {
  json j;
  j["points"] = fp.points;
  j["blocks"] = fp.blocks;
  j["block_sizes"] = multiset_json(fp.block_sizes);
  j["replications"] = multiset_json(fp.replications);
  j["gf2_rank"] = fp.gf2_rank;
  if (fp.snf) j["snf"] = fp.snf->to_string();
  if (fp.degrees) j["degrees"] = multiset_json(*fp.degrees);
  if (fp.component_ranks) j["component_gamma_ranks"] = multiset_json(*fp.component_ranks);
  j["version"] = kFingerprintVersion;
  j["hash"] = fp.hash();
  return j;
}

int cmd_invariants(const std::string& input, const std::string& kind, bool canonical, const Global& g) {
  json res;
  std::ostringstream sum;
  if (kind == "function") {
    const VectorialFunction F = load_function(input, g);
    if (!is_bent(F)) throw NotBent("function invariants need a bent function");
    const Fingerprint fp = function_fingerprint(F);
    res["fingerprint"] = fingerprint_json(fp);
    res["gamma_rank"] = gamma_rank(F);
    sum << "fingerprint " << fp.hash() << "\ngamma-rank " << gamma_rank(F) << "\n";
    if (canonical) {
      const auto inv = ea_invariant(F, g.canonical());
      res["canonical_hash"] = inv.hash();
      sum << "canonical " << inv.hash() << "\n";
    }
  } else {
    const IncidenceStructure d = load_design(input, kind, g);
    const Fingerprint fp = fingerprint(d);
    res["fingerprint"] = fingerprint_json(fp);
    sum << "snf " << (fp.snf ? fp.snf->to_string() : "") << "\n2-rank " << fp.gf2_rank << "\n";
    if (canonical) {
      const auto r = canonical_labeling(d, g.canonical());
      res["canonical_hash"] = r.form.hash();
      res["automorphism_order"] = r.automorphism_order.str();
      res["search_nodes"] = r.stats.nodes;
      sum << "canonical " << r.form.hash() << "\n|Aut| " << r.automorphism_order.str() << "\n";
    }
  }
  emit_result(g, res, sum.str());
  return kOk;
}

int cmd_equivalent(const std::string& a, const std::string& b, const Global& g) {
  const VectorialFunction F1 = load_function(a, g);
  const VectorialFunction F2 = load_function(b, g);
  const bool eq = ea_equivalent(F1, F2, g.canonical());
  json res{{"equivalent", eq}};
  emit_result(g, res, std::string(eq ? "EA-equivalent\n" : "not EA-equivalent\n"));
  return kOk;
}

int cmd_isomorphic(const std::string& a, const std::string& b, const std::string& kind, const Global& g) {
  const IncidenceStructure d1 = load_design(a, kind, g);
  const IncidenceStructure d2 = load_design(b, kind, g);
  const IsomorphismResult r = are_isomorphic(d1, d2, g.canonical());
  json res{{"isomorphic", r.isomorphic}, {"reason", r.reason}};
  if (r.witness) {
    res["witness"] = {{"row_perm", r.witness->row_perm}, {"col_perm", r.witness->col_perm}};
    res["witness_verified"] = verify_witness(d1, d2, *r.witness);
  }
  emit_result(g, res, std::string(r.isomorphic ? "isomorphic" : "not isomorphic") + " (" + r.reason + ")\n");
  return kOk;
}

std::function<void(const std::string&)> stderr_progress() {
  return [](const std::string& line) { std::cerr << line << std::endl; };
}

int cmd_classify(int n, const std::string& out_dir, const Global& g) {
  Algorithm1Options o;
  o.enumeration.threads = g.threads;
  o.canonical = g.canonical();
  o.progress = stderr_progress();
  o.enumeration.progress = [](const EnumerationProgress& p) {
    std::cerr << json{{"stage", "enumerate"}, {"cursor", p.cursor}, {"total", p.total}, {"found", p.found},
                      {"seconds", p.seconds}}
                     .dump()
              << std::endl;
  };
  const Algorithm1Result r = run_algorithm1(n, o);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir + "/classes.jsonl") << class_records_jsonl(r.records);
    std::ofstream(out_dir + "/hasse.dot") << emit_hasse_dot(r.records, r.edges);
    std::ofstream(out_dir + "/hasse.json") << emit_hasse_json(r.records, r.edges);
  }
  json res;
  res["n"] = n;
  res["affine_free"] = r.affine_free;
  for (const auto& [m, t] : r.totals) {
    res["layers"][std::to_string(m)] = {{"classes", r.class_counts.at(m)}, {"total", t.str()}};
  }
  res["only_top_layer_lonely"] = r.only_top_layer_lonely;
  json checks = json::array();
  for (const auto& c : r.report.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  res["relations"] = checks;
  res["classes"] = json::array();
  for (const auto& rec : r.records) {
    res["classes"].push_back({{"id", rec.id()}, {"cardinality", rec.cardinality.str()},
                              {"catalog", rec.catalog_id}, {"extendable", rec.extendable}});
  }
  std::ostringstream sum;
  sum << "affine-free bent functions: " << r.affine_free << "\n";
  for (const auto& [m, t] : r.totals) sum << "m=" << m << ": " << r.class_counts.at(m) << " classes, |B| = " << t << "\n";
  sum << r.report.to_string() << emit_hasse_dot(r.records, r.edges);
  emit_result(g, res, sum.str());
  return r.report.ok() ? kOk : kVerification;
}

int cmd_enumerate(int n, std::string checkpoint, std::uint64_t stop_after, const std::string& list_path,
                  const Global& g) {
  if (checkpoint.empty()) {
    if (const char* dir = std::getenv("BENTKIT_CHECKPOINT_DIR")) {
      checkpoint = std::string(dir) + "/enumerate-n" + std::to_string(n) + ".json";
    }
  }
  EnumerationOptions o;
  o.threads = g.threads;
  o.checkpoint_path = checkpoint;
  o.stop_after = stop_after;
  o.progress = [](const EnumerationProgress& p) {
    std::cerr << json{{"stage", "enumerate"}, {"cursor", p.cursor}, {"total", p.total}, {"found", p.found},
                      {"seconds", p.seconds}}
                     .dump()
              << std::endl;
  };
  if (!list_path.empty()) {
    std::ofstream out(list_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + list_path);
    enumerate_affine_free_bent(
        n, [&](std::uint64_t t) { out << format_anf(table_to_anf(word_function(n, t))) << "\n"; }, o);
  }
  const EnumerationCheckpoint cp = count_affine_free_bent(n, o);
  json res = json::parse(cp.to_json());
  res["complete"] = cp.complete();
  std::ostringstream sum;
  sum << "n=" << n << " affine-free bent: " << cp.found << (cp.complete() ? "" : " (partial)") << "\n";
  for (const auto& [k, c] : cp.counts) sum << "  degree:gamma-rank " << k.to_string() << " -> " << c << "\n";
  emit_result(g, res, sum.str());
  return kOk;
}

int cmd_verify(const std::string& suite, const Global& g) {
  SuiteOptions o;
  o.threads = g.threads;
  o.canonical = g.canonical();
  o.progress = stderr_progress();
  const auto results = run_suite(suite, o);
  json res;
  res["suite"] = suite;
  res["checks"] = json::array();
  std::ostringstream sum;
  std::size_t passed = 0;
  for (const auto& c : results) {
    res["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}, {"seconds", c.seconds}});
    sum << (c.ok ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) sum << " (" << c.detail << ")";
    sum << "\n";
    passed += c.ok;
  }
  sum << suite << ": " << passed << "/" << results.size() << " checks passed\n";
  res["passed"] = passed;
  res["total"] = results.size();
  Global text = g;
  if (g.output.empty()) text.format = "text";
  emit_result(text, res, sum.str());
  return passed == results.size() ? kOk : kVerification;
}

int cmd_catalog(const std::string& id) {
  if (!id.empty()) {
    const auto comma = id.find(',');
    if (comma == std::string::npos) throw ParseError("catalog id must look like m,i");
    catalog(std::stoi(id.substr(0, comma)), std::stoi(id.substr(comma + 1)));  // throws NotFound
  }
  for (const auto& e : catalog_entries()) {
    if (!id.empty() && e.id() != id) continue;
    json j = json::parse(function_to_json(e.representative, e.id()));
    j["snf"] = e.expected_snf.to_string();
    j["code_aut_order"] = e.expected_code_aut_order.str();
    j["design_aut_order"] = e.expected_design_aut_order.str();
    std::cout << j.dump() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bent functions, their designs and their EA-classes"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "worker threads (default: BENTKIT_THREADS or all cores)");
  app.add_option("--budget", g.budget, "node budget of the canonical labeling search");
  app.add_flag("--paper-anf", g.paper_anf, "read coordinates in digit shorthand, e.g. \"12+34\"");
  app.add_option("--format", g.format, "stdout format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", g.output, "write the JSON result to this file");

  std::string in1, in2, kind = "graph", out_dir, checkpoint, list_path, suite, id, matrix_out;
  bool hex = false, canonical = false;
  int n = 0;
  std::uint64_t stop_after = UINT64_MAX;

  auto* analyze = app.add_subcommand("analyze", "degree, bentness, nonlinearity, dual, spectrum");
  analyze->add_option("input", in1, "function file or catalog:m,i")->required();

  auto* design = app.add_subcommand("design", "build an incidence structure and check its parameters");
  design->add_option("input", in1)->required();
  design->add_option("--kind", kind)->check(CLI::IsMember({"support", "graph", "addition"}));
  design->add_option("--matrix", matrix_out, "write the incidence matrix here");
  design->add_flag("--hex", hex, "hex rows instead of 0/1 text");

  auto* invariants = app.add_subcommand("invariants", "fingerprint, Smith form and optional canonical form");
  invariants->add_option("input", in1)->required();
  invariants->add_option("--kind", kind)->check(CLI::IsMember({"support", "graph", "addition", "function"}));
  invariants->add_flag("--canonical", canonical, "also compute the canonical form and automorphism order");

  auto* equivalent = app.add_subcommand("equivalent", "decide EA-equivalence of two bent functions");
  equivalent->add_option("first", in1)->required();
  equivalent->add_option("second", in2)->required();

  auto* isomorphic = app.add_subcommand("isomorphic", "decide isomorphism of two incidence structures");
  isomorphic->add_option("first", in1, "incidence file, function file or catalog:m,i")->required();
  isomorphic->add_option("second", in2)->required();
  isomorphic->add_option("--kind", kind, "design built from function inputs")
      ->check(CLI::IsMember({"support", "graph", "addition"}));

  auto* classify = app.add_subcommand("classify", "classify all (n,m)-bent functions layer by layer");
  classify->add_option("--n", n)->required()->check(CLI::IsMember({2, 4, 6}));
  classify->add_option("--out-dir", out_dir, "write classes.jsonl, hasse.dot and hasse.json here");

  auto* enumerate = app.add_subcommand("enumerate", "count affine-free bent functions with checkpointing");
  enumerate->add_option("--n", n)->required()->check(CLI::IsMember({2, 4, 6}));
  enumerate->add_option("--checkpoint", checkpoint, "checkpoint file (default: BENTKIT_CHECKPOINT_DIR)");
  enumerate->add_option("--stop-after", stop_after, "outer ANF parts to process in this run");
  enumerate->add_option("--list", list_path, "also write every function as an ANF line");

  auto* verify = app.add_subcommand("verify", "run a reproduction suite");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));

  auto* cat = app.add_subcommand("catalog", "print the published representatives");
  cat->add_option("--id", id, "only the entry m,i");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*analyze) return cmd_analyze(in1, g);
    if (*design) return cmd_design(in1, kind, hex, matrix_out, g);
    if (*invariants) return cmd_invariants(in1, kind, canonical, g);
    if (*equivalent) return cmd_equivalent(in1, in2, g);
    if (*isomorphic) return cmd_isomorphic(in1, in2, kind, g);
    if (*classify) return cmd_classify(n, out_dir, g);
    if (*enumerate) return cmd_enumerate(n, checkpoint, stop_after, list_path, g);
    if (*verify) return cmd_verify(suite, g);
    if (*cat) return cmd_catalog(id);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << " (budget " << e.budget() << " nodes)\n";
    return kBudget;
  } catch (const NotBent& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const InvalidInput& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const NotFound& e) {
    std::cerr << "not found: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Inconsistency& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
