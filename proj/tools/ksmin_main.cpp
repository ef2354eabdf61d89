#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ksmin/bisim.hpp"
#include "ksmin/ctl.hpp"
#include "ksmin/grammar.hpp"
#include "ksmin/kripke.hpp"
#include "ksmin/minimize.hpp"
#include "ksmin/unwind.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

ksmin::KripkeStructure load_kripke(const std::string& path, bool complete_selfloops) {
  std::string text = read_file(path);
  if (!complete_selfloops) return ksmin::parse_kripke(text);
  std::vector<std::string> added;
  ksmin::KripkeStructure k = ksmin::parse_kripke_complete_selfloops(text, &added);
  for (const auto& edge : added) std::cerr << "note: added self-loop " << edge << "\n";
  return k;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concrete smallest Kripke structures: minimization, bisimulation,\n"
               "graph-grammar folding and CTL checking over .kripke/.kgram files"};
  app.require_subcommand(1);

  std::string in_path, in_path2, out_path, state, state2, formula_text;
  int depth = -1;
  bool map_flag = false, stats_flag = false, selfloops = false;
  auto selfloop_flag = [&](CLI::App* sub) {
    sub->add_flag("--complete-selfloops", selfloops,
                  "give successor-less states a self-loop instead of rejecting the input");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a .kripke file");
  validate->add_option("file", in_path)->required();
  selfloop_flag(validate);

  CLI::App* minimize = app.add_subcommand("minimize", "write the concrete smallest structure");
  minimize->add_option("file", in_path)->required();
  minimize->add_option("-o,--output", out_path, "output path (default stdout)");
  minimize->add_flag("--map", map_flag, "emit the block-to-members report");
  minimize->add_flag("--stats", stats_flag, "report sizes, rounds and wall time on stderr");
  selfloop_flag(minimize);

  CLI::App* bisim = app.add_subcommand("bisim", "are two structures bisimulation equivalent");
  bisim->add_option("left", in_path)->required();
  bisim->add_option("right", in_path2)->required();
  selfloop_flag(bisim);

  CLI::App* bisimilar = app.add_subcommand("bisimilar", "are two states of one structure bisimilar");
  bisimilar->add_option("file", in_path)->required();
  bisimilar->add_option("state", state)->required();
  bisimilar->add_option("other", state2)->required();
  selfloop_flag(bisimilar);

  CLI::App* fold = app.add_subcommand("fold", "splice a .kgram grammar into a finite structure");
  fold->add_option("file", in_path)->required();
  fold->add_option("-o,--output", out_path, "output path (default stdout)");

  CLI::App* unfold = app.add_subcommand("unfold", "expand a .kgram grammar to a finite depth");
  unfold->add_option("file", in_path)->required();
  unfold->add_option("--depth", depth, "number of rule copies")->required();
  unfold->add_option("-o,--output", out_path, "output path (default stdout)");

  CLI::App* unwind = app.add_subcommand("unwind", "print the bounded unwinding tree of a state");
  unwind->add_option("file", in_path)->required();
  unwind->add_option("--state", state, "state to unwind from")->required();
  unwind->add_option("--depth", depth, "tree height (default: number of states)");
  selfloop_flag(unwind);

  CLI::App* check = app.add_subcommand("check", "check a CTL formula at the initial states");
  check->add_option("file", in_path)->required();
  check->add_option("--formula", formula_text, "CTL formula text")->required();
  selfloop_flag(check);

  CLI::App* dot = app.add_subcommand("dot", "export Graphviz DOT");
  dot->add_option("file", in_path)->required();
  dot->add_option("-o,--output", out_path, "output path (default stdout)");
  selfloop_flag(dot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) {
      load_kripke(in_path, selfloops);
      std::cout << "RESULT: valid\n";
    } else if (*minimize) {
      ksmin::KripkeStructure k = load_kripke(in_path, selfloops);
      auto start = std::chrono::steady_clock::now();
      ksmin::MinimizeReport report = ksmin::minimize_with_report(k);
      auto elapsed = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      std::string body = ksmin::serialize_kripke(report.result);
      write_output(out_path, body);
      if (map_flag) {
        std::string map_text = ksmin::block_map_report(report);
        if (out_path.empty()) {
          std::cout << map_text;
        } else {
          write_output(out_path + ".map", map_text);
        }
      }
      if (stats_flag) {
        std::cerr << "STATS: states_before=" << k.state_count()
                  << " states_after=" << report.result.state_count()
                  << " rounds=" << report.rounds << " wall_ms=" << elapsed << "\n";
      }
    } else if (*bisim) {
      bool eq = ksmin::are_equivalent(load_kripke(in_path, selfloops),
                                      load_kripke(in_path2, selfloops));
      std::cout << (eq ? "RESULT: equivalent\n" : "RESULT: not-equivalent\n");
      return eq ? 0 : 1;
    } else if (*bisimilar) {
      ksmin::KripkeStructure k = load_kripke(in_path, selfloops);
      if (k.index_of(state) < 0) throw UsageError("unknown state '" + state + "'");
      if (k.index_of(state2) < 0) throw UsageError("unknown state '" + state2 + "'");
      bool related = ksmin::largest_bisimulation(k, k).contains(state, state2);
      std::cout << (related ? "RESULT: bisimilar\n" : "RESULT: not-bisimilar\n");
      return related ? 0 : 1;
    } else if (*fold) {
      ksmin::GraphGrammar g = ksmin::parse_grammar(read_file(in_path));
      write_output(out_path, ksmin::serialize_kripke(ksmin::fold(g)));
    } else if (*unfold) {
      if (depth < 1) throw UsageError("--depth must be at least 1");
      ksmin::GraphGrammar g = ksmin::parse_grammar(read_file(in_path));
      write_output(out_path, ksmin::serialize_kripke(ksmin::unfold(g, depth)));
    } else if (*unwind) {
      ksmin::KripkeStructure k = load_kripke(in_path, selfloops);
      if (depth < 0) depth = static_cast<int>(k.state_count());
      std::cout << ksmin::render_tree(ksmin::unwind_tree(k, state, depth));
    } else if (*check) {
      ksmin::KripkeStructure k = load_kripke(in_path, selfloops);
      ksmin::CtlFormula::Ptr f = ksmin::parse_formula(formula_text);
      std::vector<int> sat = ksmin::sat_set(k, f);
      bool all = true;
      for (int s : k.init()) {
        bool holds = std::binary_search(sat.begin(), sat.end(), s);
        all = all && holds;
        std::cout << "init " << k.state_name(s) << ": " << (holds ? "true" : "false") << "\n";
      }
      std::cout << (all ? "RESULT: true\n" : "RESULT: false\n");
      return all ? 0 : 1;
    } else if (*dot) {
      write_output(out_path, ksmin::export_dot(load_kripke(in_path, selfloops)));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ksmin::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
