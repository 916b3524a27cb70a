#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ramseyforge/cli.hpp"
#include "ramseyforge/gallery.hpp"
#include "ramseyforge/morphism.hpp"
#include "ramseyforge/orientation.hpp"
#include "ramseyforge/ramsey.hpp"
#include "ramseyforge/report.hpp"
#include "ramseyforge/structure_file.hpp"

namespace py = pybind11;
using namespace ramseyforge;

namespace {

Structure make_structure(const std::vector<std::pair<std::string, int>>& signature, int size,
                         const std::vector<std::vector<Tuple>>& tuples) {
  std::vector<Relation> rels;
  for (const auto& [name, arity] : signature) rels.push_back({name, arity});
  return Structure(Signature(rels), size, tuples);
}

std::vector<std::pair<std::string, int>> signature_of(const Structure& s) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& r : s.signature().relations()) out.emplace_back(r.name, r.arity);
  return out;
}

py::dict decide_dict(const std::string& name, int max_size) {
  auto frag = builtin_fragment(name, max_size);
  auto outcome = decide(frag);
  py::dict d;
  d["outcome"] = std::string(outcome_name(outcome));
  d["bound"] = outcome.bound;
  d["type_order"] = outcome.type_order;
  d["fully_rigid"] = outcome.fully_rigid;
  if (const auto* r = std::get_if<OrderReduct>(&outcome.result)) {
    std::vector<std::string> signs;
    for (Sign s : r->assignment.signs) signs.emplace_back(to_string(s));
    d["signs"] = signs;
    d["orders"] = r->orders;
    std::vector<Structure> reps;
    for (const Structure* s : frag.all()) reps.push_back(*s);
    d["representatives"] = reps;
  } else if (const auto* w = std::get_if<FailureWitness>(&outcome.result)) {
    d["a"] = w->a;
    d["b"] = w->b;
    d["cycle"] = w->cycle;
    d["origin"] = w->origin;
    d["rule"] = std::string(to_string(w->rule.kind));
  } else {
    d["reason"] = std::get<Inconclusive>(outcome.result).reason;
  }
  d["certificate"] = emit_certificate(outcome, frag, {"builtin:" + name, name});
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ramsey-property dichotomy for classes of rigid finite structures";

  py::register_exception<Error>(m, "RamseyforgeError", PyExc_ValueError);

  py::class_<Structure>(m, "Structure")
      .def(py::init(&make_structure), py::arg("signature"), py::arg("size"), py::arg("tuples"))
      .def_property_readonly("size", &Structure::size)
      .def_property_readonly("signature", &signature_of)
      .def("tuples", &Structure::tuples, py::arg("relation"))
      .def("serialize", &Structure::serialize)
      .def("__eq__", [](const Structure& a, const Structure& b) { return a == b; })
      .def("__lt__", [](const Structure& a, const Structure& b) { return a < b; })
      .def("__hash__",
           [](const Structure& s) {
             auto v = s.serialize();
             return py::hash(py::tuple(py::cast(v)));
           })
      .def("__repr__", [](const Structure& s) {
        return "<Structure " + inline_structure("s", s.signature(), "s", s) + ">";
      });

  m.def("automorphisms", &automorphisms);
  m.def("is_rigid", &is_rigid);
  m.def("isomorphism", [](const Structure& a, const Structure& b) -> std::optional<std::vector<int>> {
    auto iso = isomorphism(a, b);
    if (!iso) return std::nullopt;
    return iso->map;
  });
  m.def("canonical", [](const Structure& s) {
    auto c = canonical(s);
    return py::make_tuple(c.relabeled, c.witness);
  });
  m.def("embeddings", [](const Structure& a, const Structure& c) {
    std::vector<std::vector<int>> out;
    for (const auto& e : embeddings(a, c)) out.push_back(e.map);
    return out;
  });
  m.def("induced", [](const Structure& s, const std::vector<int>& subset) {
    return induced(s, subset).structure;
  });

  m.def("gen_tournaments", &gen_tournaments);
  m.def("gen_c_structures", &gen_c_structures);
  m.def("gen_products", &gen_products);
  m.def("gen_linear_orders", &gen_linear_orders);
  m.def("gen_permutations", &gen_permutations);
  m.def("chain", &chain);
  m.def("builtin_names", &builtin_names);

  m.def("decide", &decide_dict, py::arg("name"), py::arg("max_size"),
        "Run the orientation engine on a builtin class fragment.");

  m.def(
      "exhaustive_witness_check",
      [](const Structure& a, const Structure& b, const Structure& c, int limit) {
        auto s = exhaustive_witness_check(a, b, c, limit);
        py::dict d;
        d["is_witness"] = s.is_witness;
        d["colored_pairs"] = s.colored_pairs;
        d["copies"] = s.copies;
        if (s.defeating) {
          d["pairs"] = s.defeating->pairs;
          std::string colors;
          for (Color col : s.defeating->colors) colors += col == Color::Red ? 'R' : 'B';
          d["defeating"] = colors;
        } else {
          d["defeating"] = py::none();
        }
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("limit") = kDefaultPairLimit);

  m.def("demo_section3", [](int max_size) {
    auto r = demo_section3(max_size);
    py::dict d;
    d["a"] = r.a;
    d["b"] = r.b;
    d["verified"] = r.verified;
    py::list entries;
    for (const auto& e : r.entries) entries.append(py::make_tuple(e.c, e.copies, e.monochromatic));
    d["entries"] = entries;
    return d;
  });

  m.def("parse_structure_file", [](const std::string& text) {
    auto f = parse_structure_file(text);
    py::dict d;
    for (const auto& ns : f.structures) d[py::str(ns.name)] = ns.structure;
    return d;
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
