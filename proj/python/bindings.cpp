#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ksmin/bisim.hpp"
#include "ksmin/ctl.hpp"
#include "ksmin/grammar.hpp"
#include "ksmin/kripke.hpp"
#include "ksmin/minimize.hpp"
#include "ksmin/unwind.hpp"

namespace py = pybind11;

namespace {

int state_index(const ksmin::KripkeStructure& k, const std::string& name) {
  int s = k.index_of(name);
  if (s < 0) throw ksmin::error(ksmin::errc::unknown_state, "unknown state '" + name + "'");
  return s;
}

std::vector<std::string> names_of(const ksmin::KripkeStructure& k, const std::vector<int>& v) {
  std::vector<std::string> out;
  for (int s : v) out.push_back(k.state_name(s));
  return out;
}

using PairList = std::vector<std::pair<std::string, std::string>>;

}  // namespace

PYBIND11_MODULE(_ksmin, m) {
  m.doc() = "Concrete smallest Kripke structures: bisimulation quotients, "
            "graph-grammar folding and CTL checking";

  py::register_exception<ksmin::error>(m, "Error");

  py::class_<ksmin::KripkeStructure>(m, "KripkeStructure")
      .def_property_readonly("state_count", &ksmin::KripkeStructure::state_count)
      .def_property_readonly("states",
                             [](const ksmin::KripkeStructure& k) { return k.states(); })
      .def_property_readonly(
          "atoms", [](const ksmin::KripkeStructure& k) { return k.atoms().names(); })
      .def_property_readonly(
          "init", [](const ksmin::KripkeStructure& k) { return names_of(k, k.init()); })
      .def("successors",
           [](const ksmin::KripkeStructure& k, const std::string& s) {
             return names_of(k, k.successors(state_index(k, s)));
           })
      .def("label",
           [](const ksmin::KripkeStructure& k, const std::string& s) {
             return k.label_names(state_index(k, s));
           })
      .def("serialize", &ksmin::serialize_kripke)
      .def("to_dot", &ksmin::export_dot)
      .def("__str__", &ksmin::serialize_kripke)
      .def("__eq__", [](const ksmin::KripkeStructure& a,
                        const ksmin::KripkeStructure& b) { return a == b; });

  py::class_<ksmin::GraphGrammar>(m, "GraphGrammar")
      .def_property_readonly("n", &ksmin::GraphGrammar::n)
      .def_property_readonly("exits",
                             [](const ksmin::GraphGrammar& g) { return g.exits(); });

  m.def("parse_kripke", [](const std::string& text) { return ksmin::parse_kripke(text); });
  m.def("serialize_kripke", &ksmin::serialize_kripke);
  m.def("restrict_reachable", &ksmin::restrict_reachable);
  m.def("export_dot", &ksmin::export_dot);

  m.def("minimize", &ksmin::minimize);
  m.def("is_reduced", &ksmin::is_reduced);
  m.def("is_connected", &ksmin::is_connected);
  m.def("are_isomorphic", &ksmin::are_isomorphic);
  m.def("block_map", [](const ksmin::KripkeStructure& k) {
    ksmin::MinimizeReport report = ksmin::minimize_with_report(k);
    std::map<std::string, std::vector<std::string>> out;
    for (std::size_t b = 0; b < report.final_partition.blocks.size(); ++b) {
      out[report.block_names[b]] =
          names_of(report.restricted, report.final_partition.blocks[b]);
    }
    return out;
  });

  m.def("are_equivalent", &ksmin::are_equivalent);
  m.def("largest_bisimulation",
        [](const ksmin::KripkeStructure& a, const ksmin::KripkeStructure& b) {
          return ksmin::largest_bisimulation(a, b).pairs;
        });
  m.def("k_approximant",
        [](const ksmin::KripkeStructure& a, const ksmin::KripkeStructure& b, int k) {
          return ksmin::k_approximant(a, b, k).pairs;
        });
  m.def("is_bisimulation",
        [](const ksmin::KripkeStructure& a, const ksmin::KripkeStructure& b, PairList pairs) {
          return ksmin::is_bisimulation(a, b,
                                        ksmin::BisimRelation::from_pairs(std::move(pairs)));
        });

  m.def("unwind_render",
        [](const ksmin::KripkeStructure& k, const std::string& state, int depth) {
          return ksmin::render_tree(ksmin::unwind_tree(k, state, depth));
        });
  m.def("h_approx_equal",
        [](const ksmin::KripkeStructure& k, const std::string& s, const std::string& t,
           int depth) { return ksmin::h_approx_equal(k, s, t, depth); });

  m.def("parse_grammar", [](const std::string& text) { return ksmin::parse_grammar(text); });
  m.def("fold", &ksmin::fold);
  m.def("unfold", &ksmin::unfold);

  m.def("check", [](const ksmin::KripkeStructure& k, const std::string& formula) {
    return ksmin::models(k, ksmin::parse_formula(formula));
  });
  m.def("sat_states", [](const ksmin::KripkeStructure& k, const std::string& formula) {
    return names_of(k, ksmin::sat_set(k, ksmin::parse_formula(formula)));
  });
}
