#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bentkit/anf_text.hpp"
#include "bentkit/canonical.hpp"
#include "bentkit/catalog.hpp"
#include "bentkit/classify.hpp"
#include "bentkit/designs.hpp"
#include "bentkit/equivalence.hpp"
#include "bentkit/errors.hpp"
#include "bentkit/invariants.hpp"
#include "bentkit/snf.hpp"
#include "bentkit/suites.hpp"
#include "bentkit/walsh.hpp"

namespace py = pybind11;
using namespace bentkit;

namespace {

VectorialFunction from_anf(const std::vector<std::string>& coords, int n, bool digits) {
  const auto syntax = digits ? AnfSyntax::kDigits : AnfSyntax::kStandard;
  std::vector<BooleanFunction> fs;
  for (const auto& c : coords) fs.push_back(anf_to_table(parse_anf(c, n, syntax)));
  return VectorialFunction(std::move(fs));
}

std::vector<std::vector<int>> incidence_rows(const IncidenceStructure& d) {
  std::vector<std::vector<int>> rows(d.num_blocks(), std::vector<int>(d.num_points()));
  for (std::size_t r = 0; r < d.num_blocks(); ++r)
    for (std::size_t c = 0; c < d.num_points(); ++c) rows[r][c] = d.incidence().get(r, c);
  return rows;
}

IncidenceStructure from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidInput("ragged incidence matrix");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c] != 0);
  }
  return IncidenceStructure(std::move(m));
}

}  // namespace

PYBIND11_MODULE(_bentkit, m) {
  m.doc() = "Bent functions, their designs and EA-classification";

  auto base = py::register_exception<Error>(m, "Error");
  auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", invalid.ptr());
  py::register_exception<NotBent>(m, "NotBent", base.ptr());
  py::register_exception<NotFound>(m, "NotFound", base.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());
  py::register_exception<Inconsistency>(m, "Inconsistency", base.ptr());

  py::class_<BooleanFunction>(m, "BooleanFunction")
      .def_static("from_anf",
                  [](const std::string& text, int n, bool digits) {
                    return anf_to_table(parse_anf(text, n, digits ? AnfSyntax::kDigits : AnfSyntax::kStandard));
                  },
                  py::arg("text"), py::arg("n"), py::arg("digits") = false)
      .def_static("from_truth_table",
                  [](const std::vector<int>& bits) {
                    int n = 0;
                    while ((std::size_t{1} << n) < bits.size()) ++n;
                    if ((std::size_t{1} << n) != bits.size()) throw InvalidInput("length must be a power of two");
                    return BooleanFunction::from_predicate(n, [&](Point x) { return bits[x] != 0; });
                  })
      .def_property_readonly("n", &BooleanFunction::num_vars)
      .def("__call__", [](const BooleanFunction& f, Point x) { return static_cast<int>(f(x)); })
      .def("truth_table",
           [](const BooleanFunction& f) {
             std::vector<int> out(f.domain_size());
             for (Point x = 0; x < out.size(); ++x) out[x] = f(x);
             return out;
           })
      .def("anf", [](const BooleanFunction& f) { return format_anf(table_to_anf(f)); })
      .def("degree", [](const BooleanFunction& f) { return algebraic_degree(f); })
      .def("__eq__", [](const BooleanFunction& a, const BooleanFunction& b) { return a == b; })
      .def("__repr__", [](const BooleanFunction& f) {
        return "BooleanFunction(" + std::to_string(f.num_vars()) + ", '" + format_anf(table_to_anf(f)) + "')";
      });

  py::class_<VectorialFunction>(m, "VectorialFunction")
      .def(py::init<std::vector<BooleanFunction>>())
      .def_static("from_anf", &from_anf, py::arg("coords"), py::arg("n"), py::arg("digits") = false)
      .def_property_readonly("n", &VectorialFunction::n)
      .def_property_readonly("m", &VectorialFunction::m)
      .def("coordinate", &VectorialFunction::coordinate)
      .def("__call__", [](const VectorialFunction& F, Point x) { return F(x); })
      .def("degree", &VectorialFunction::degree)
      .def("to_json", [](const VectorialFunction& F) { return function_to_json(F); })
      .def("__eq__", [](const VectorialFunction& a, const VectorialFunction& b) { return a == b; });

  m.def("walsh_transform", [](const BooleanFunction& f) { return walsh_transform(f).values; });
  m.def("is_bent", py::overload_cast<const BooleanFunction&>(&is_bent));
  m.def("is_bent", py::overload_cast<const VectorialFunction&>(&is_bent));
  m.def("nonlinearity", py::overload_cast<const BooleanFunction&>(&nonlinearity));
  m.def("nonlinearity", py::overload_cast<const VectorialFunction&>(&nonlinearity));
  m.def("dual", &dual);

  py::class_<IncidenceStructure>(m, "IncidenceStructure")
      .def(py::init(&from_rows))
      .def_property_readonly("num_points", &IncidenceStructure::num_points)
      .def_property_readonly("num_blocks", &IncidenceStructure::num_blocks)
      .def("rows", &incidence_rows)
      .def("to_text", [](const IncidenceStructure& d) { return to_text(d); })
      .def("__eq__", [](const IncidenceStructure& a, const IncidenceStructure& b) { return a == b; });

  m.def("dev_support", &dev_support);
  m.def("dev_graph", &dev_graph);
  m.def("addition_design", &addition_design);
  m.def("parse_incidence", &parse_incidence);
  m.def("gf2_rank", [](const IncidenceStructure& d) { return gf2_rank(d.incidence()); });
  m.def("smith_normal_form", [](const IncidenceStructure& d) { return smith_normal_form(d.incidence()).to_string(); });
  m.def("gamma_rank", &gamma_rank);
  m.def("fingerprint", [](const IncidenceStructure& d) { return fingerprint(d).to_string(); });
  m.def("function_fingerprint", [](const VectorialFunction& F) { return function_fingerprint(F).to_string(); });

  m.def("canonical_hash", [](const IncidenceStructure& d, std::uint64_t budget) {
    CanonicalOptions o;
    o.node_budget = budget;
    return canonical_form(d, o).hash();
  }, py::arg("d"), py::arg("node_budget") = CanonicalOptions{}.node_budget);
  m.def("aut_group_order", [](const IncidenceStructure& d) { return aut_group_order(d).str(); });
  m.def("are_isomorphic", [](const IncidenceStructure& a, const IncidenceStructure& b) {
    return are_isomorphic(a, b).isomorphic;
  });
  m.def("ea_equivalent", [](const VectorialFunction& a, const VectorialFunction& b) { return ea_equivalent(a, b); });

  m.def("catalog", [](int mm, int i) { return catalog(mm, i).representative; });
  m.def("catalog_size", &catalog_size);
  m.def("affine_free_count", [](int n) { return affine_free_bent_tables(n).size(); });

  m.def("classify", [](int n) {
    const auto res = run_algorithm1(n);
    py::dict out;
    py::dict classes;
    py::dict totals;
    for (const auto& [k, v] : res.class_counts) classes[py::int_(k)] = v;
    for (const auto& [k, v] : res.totals) totals[py::int_(k)] = py::int_(py::str(v.str()));
    out["classes"] = classes;
    out["totals"] = totals;
    out["affine_free"] = res.affine_free;
    out["relations_ok"] = res.report.ok();
    out["hasse_dot"] = emit_hasse_dot(res.records, res.edges);
    return out;
  }, py::arg("n"));

  m.def("suite_names", &suite_names);
  m.def("run_suite", [](const std::string& name) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : run_suite(name)) out.emplace_back(r.name, r.ok, r.detail);
    return out;
  });
}
