// wreathrep: build self-similar representations of C_p wr Z^d and check them.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wreathrep/constructions.hpp"
#include "wreathrep/tree.hpp"
#include "wreathrep/verify.hpp"

#ifndef WREATHREP_DEFAULT_REFERENCE
#define WREATHREP_DEFAULT_REFERENCE ""
#endif

namespace fs = std::filesystem;
using namespace wreathrep;

namespace {

  struct Options {
    std::string   config;
    std::uint64_t seed = 0;
    std::string   out;

    std::string                construction;
    std::optional<std::uint32_t> p;
    std::optional<std::size_t>   d;
    std::optional<std::int64_t>  n;
    std::optional<std::string>   u;
    std::optional<Scalar>        c;
    std::optional<std::uint32_t> j;

    std::string element = "x1";
    std::size_t max_states = 10000;
    std::size_t depth      = 8;
    std::string vertex;
    std::string suite = "all";
    std::string reference = WREATHREP_DEFAULT_REFERENCE;
    std::size_t word_length = 6;
    std::size_t trials      = 1000;
    std::string gamma;
    std::uint64_t bound = 4096;
  };

  class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  nlohmann::json read_json(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw UsageError("cannot open config file " + path);
    }
    try {
      return nlohmann::json::parse(in);
    } catch (nlohmann::json::exception const& e) {
      throw UsageError("config " + path + ": " + e.what());
    }
  }

  template <class T>
  T need(std::optional<T> const& v, char const* flag, std::string const& construction) {
    if (!v) {
      throw UsageError(construction + " needs --" + std::string(flag));
    }
    return *v;
  }

  // Config values fill in whatever the command line left unset.
  void merge_named(Options& o, nlohmann::json const& j) {
    auto fill = [&](auto& slot, char const* key) {
      using T = typename std::decay_t<decltype(slot)>::value_type;
      if (!slot && j.contains(key)) {
        slot = j.at(key).get<T>();
      }
    };
    if (o.construction.empty()) {
      o.construction = j.at("construction").get<std::string>();
    }
    fill(o.p, "p");
    fill(o.d, "d");
    fill(o.n, "n");
    fill(o.u, "u");
    fill(o.c, "c");
    fill(o.j, "j");
  }

  SimilarityPair build_pair(Options o) {
    std::optional<nlohmann::json> config;
    if (!o.config.empty()) {
      config = read_json(o.config);
      if (config->contains("construction")) {
        merge_named(o, *config);
      } else if (o.construction.empty()) {
        o.construction = "custom";
      }
    }
    auto const& name = o.construction;
    if (name.empty()) {
      throw UsageError("give --construction or --config");
    }
    if (name == "custom") {
      if (!config || config->contains("construction")) {
        throw UsageError("custom construction needs --config with a pair specification");
      }
      return pair_from_json(*config);
    }
    if (name == "classical_lamplighter") {
      return classical_lamplighter();
    }
    if (name == "theorem2") {
      auto p = need(o.p, "p", name);
      auto u = parse_poly(Ring(p, 1), need(o.u, "u", name));
      return theorem2_pair(p, need(o.n, "n", name), u, o.c.value_or(1));
    }
    if (name == "theorem3") {
      return theorem3_pair(need(o.p, "p", name), need(o.j, "j", name));
    }
    if (name == "theorem4") {
      return theorem4_pair(need(o.p, "p", name), need(o.d, "d", name));
    }
    throw UsageError("unknown construction '" + name + "'");
  }

  // A generator word ("a*X1*x2") or, failing that, an element name.
  WreathElement parse_target(Ring const& ring, std::string const& text) {
    try {
      return eval_word(ring, parse_word(text, ring.rank()));
    } catch (ParseError const&) {
      return parse_element_name(ring, text);
    }
  }

  std::string decomposition_line(std::string const& label, Decomposition const& d) {
    std::string s = label + " = (";
    for (std::size_t k = 0; k < d.children.size(); ++k) {
      s += (k ? ", " : "") + element_name(d.children[k]);
    }
    s += ")";
    if (!d.perm.is_identity()) {
      s += d.perm.cycles();
    }
    return s;
  }

  void write_file(Options const& o, std::string const& file, std::string const& text) {
    if (o.out.empty()) {
      return;
    }
    fs::create_directories(o.out);
    auto          path = fs::path(o.out) / file;
    std::ofstream f(path);
    if (!f) {
      throw UsageError("cannot write " + path.string());
    }
    f << text;
    std::cout << "wrote " << path.string() << '\n';
  }

  std::map<std::string, std::string> reference_aliases(Options const& o, Ring const& ring) {
    std::map<std::string, std::string> out;
    if (o.reference.empty() || !fs::exists(o.reference)) {
      return out;
    }
    auto ref = load_reference_file(o.reference);
    if (ref.aliases.empty()) {
      return out;
    }
    for (std::size_t k = 0; k < ref.states.size(); ++k) {
      try {
        out[element_name(parse_element_name(ring, ref.states[k]))] = ref.aliases[k];
      } catch (std::invalid_argument const&) {
        // Names from another rank do not apply.
      }
    }
    return out;
  }

  int cmd_build(Options const& o) {
    RepContext ctx(build_pair(o));
    auto const& ring = ctx.ring();
    std::cout << "group: C_" << ring.p() << " wr Z^" << ring.rank() << '\n';
    std::cout << "subgroup: A0 = " << ctx.pair().a0().describe() << ", Y = rows "
              << ctx.pair().y().basis().to_string() << '\n';
    std::cout << "degree: " << ctx.degree() << '\n';
    std::cout << "transversal:\n";
    for (std::size_t k = 0; k < ctx.degree(); ++k) {
      std::cout << "  " << k << ": " << element_name(ctx.transversal()[k]) << '\n';
    }
    std::cout << "generators:\n";
    std::cout << "  " << decomposition_line("a", decompose(ctx, WreathElement::a(ring))) << '\n';
    for (std::size_t i = 0; i < ring.rank(); ++i) {
      auto label = "x" + std::to_string(i + 1);
      std::cout << "  " << decomposition_line(label, decompose(ctx, WreathElement::x(ring, i)))
                << '\n';
    }
    if (auto const* dp = std::get_if<DegreeP>(&ctx.pair().endo().mu_spec());
        dp && !ctx.pair().endo().is_twisted()) {
      auto v = check_simplicity_degree_p(ring, dp->n, dp->u, dp->c);
      std::cout << "simplicity: " << to_string(v.verdict) << " (" << v.reason << ")";
      if (!v.witness.empty()) {
        std::cout << ", witness " << v.witness;
      }
      std::cout << '\n';
    }
    write_file(o, "pair.json", pair_to_json(ctx.pair()).dump(2) + "\n");
    return 0;
  }

  std::optional<MealyAutomaton> closure(Options const& o, RepContext const& ctx) {
    auto aut = state_closure(ctx, parse_target(ctx.ring(), o.element), o.max_states);
    if (!aut) {
      std::cout << o.element << ": not shown finite-state within bound (" << o.max_states
                << " states)\n";
    }
    return aut;
  }

  int cmd_states(Options const& o) {
    RepContext ctx(build_pair(o));
    auto       aut = closure(o, ctx);
    if (!aut) {
      return 1;
    }
    auto aliases = reference_aliases(o, ctx.ring());
    std::cout << "states: " << aut->size() << '\n';
    auto names = aut->names();
    for (std::size_t k = 0; k < names.size(); ++k) {
      std::cout << "  " << k << ": " << names[k];
      if (auto it = aliases.find(names[k]); it != aliases.end()) {
        std::cout << "  [" << it->second << "]";
      }
      std::cout << '\n';
    }
    write_file(o, "states.dot", export_dot(*aut, o.element));
    write_file(o, "states.csv", export_matrix_csv(*aut, aliases));
    return 0;
  }

  int cmd_matrix(Options const& o) {
    RepContext ctx(build_pair(o));
    auto       aut = closure(o, ctx);
    if (!aut) {
      return 1;
    }
    auto csv = export_matrix_csv(*aut, reference_aliases(o, ctx.ring()));
    std::cout << csv;
    write_file(o, "matrix.csv", csv);
    return 0;
  }

  int cmd_dot(Options const& o) {
    RepContext ctx(build_pair(o));
    auto       aut = closure(o, ctx);
    if (!aut) {
      return 1;
    }
    auto dot = export_dot(*aut, o.element);
    std::cout << dot;
    write_file(o, "states.dot", dot);
    return 0;
  }

  int cmd_portrait(Options const& o) {
    RepContext ctx(build_pair(o));
    auto       text = to_text(portrait(ctx, parse_target(ctx.ring(), o.element), o.depth));
    std::cout << text;
    write_file(o, "portrait.txt", text);
    return 0;
  }

  int cmd_act(Options const& o) {
    RepContext ctx(build_pair(o));
    std::cout << act_on_vertex(ctx, parse_target(ctx.ring(), o.element), std::string_view(o.vertex))
              << '\n';
    return 0;
  }

  int cmd_verify(Options const& o) {
    RepContext   ctx(build_pair(o));
    SuiteOptions so;
    so.seed           = o.seed;
    so.max_states     = o.max_states;
    so.word_length    = o.word_length;
    so.skew_trials    = o.trials;
    so.reference_path = o.reference;
    so.element        = o.element;
    std::vector<std::string> suites{o.suite};
    if (o.suite == "all") {
      // The bundled reference table only describes the G_{2,2} automaton.
      suites = suite_names();
      if (ctx.pair() != theorem4_pair(2, 2)) {
        std::erase(suites, "matrix");
      }
    } else if (auto const known = suite_names();
               std::ranges::find(known, o.suite) == known.end()) {
      throw UsageError("unknown suite '" + o.suite + "'");
    }
    nlohmann::json report{{"pair", pair_to_json(ctx.pair())}, {"seed", o.seed}};
    bool           passed = true;
    for (auto const& s : suites) {
      SuiteResult r;
      try {
        r = run_suite(s, ctx, so);
      } catch (std::exception const& e) {
        r = {s, false, {{"error", e.what()}, {"passed", false}}};
      }
      report[s] = r.report;
      passed    = passed && r.passed;
      std::cerr << (r.passed ? "PASS " : "FAIL ") << s << '\n';
    }
    report["passed"] = passed;
    std::cout << report.dump(2) << '\n';
    write_file(o, "verify.json", report.dump(2) + "\n");
    return passed ? 0 : 1;
  }

  int cmd_deformations(Options const& o) {
    auto pair  = build_pair(o);
    auto found = enumerate_deformations(pair.ring(), pair.a0(), pair.y(), o.bound);
    std::cout << "deformations: " << found.size() << '\n';
    auto arr = nlohmann::json::array();
    for (auto const& v : found) {
      std::string line;
      auto        entry = nlohmann::json::array();
      for (std::size_t i = 0; i < v.size(); ++i) {
        line += (i ? " | " : "") + to_string(v[i]);
        entry.push_back(to_string(v[i]));
      }
      std::cout << "  " << line << '\n';
      arr.push_back(entry);
    }
    write_file(o, "deformations.json", arr.dump(2) + "\n");
    return 0;
  }

  int cmd_reduce(Options const& o) {
    auto pair    = build_pair(o);
    auto reduced = replace_pair(pair);
    if (!o.gamma.empty()) {
      nlohmann::json g;
      try {
        g = nlohmann::json::parse(o.gamma);
      } catch (nlohmann::json::exception const& e) {
        throw UsageError(std::string("--gamma: ") + e.what());
      }
      reduced = twist_pair(reduced, IntMatrix::from_rows(g.get<std::vector<std::vector<std::int64_t>>>()));
    }
    std::cout << "index: " << reduced.index() << '\n';
    std::cout << "deformation removed: " << (pair.has_deformation() ? "yes" : "no") << '\n';
    auto j = pair_to_json(reduced);
    std::cout << j.dump(2) << '\n';
    write_file(o, "reduced.json", j.dump(2) + "\n");
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar representations of C_p wr Z^d"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;

  app.add_option("--config", o.config, "JSON file: a pair specification or a named construction");
  app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--out", o.out, "Directory for written artifacts");
  app.add_option("--construction", o.construction,
                 "classical_lamplighter | theorem2 | theorem3 | theorem4 | custom");
  app.add_option("--p", o.p, "Prime p");
  app.add_option("--d", o.d, "Rank d");
  app.add_option("--n", o.n, "Exponent n (theorem2)");
  app.add_option("--u", o.u, "Polynomial u (theorem2)");
  app.add_option("--c", o.c, "Evaluation point c (theorem2)");
  app.add_option("--j", o.j, "Parameter j (theorem3)");

  auto element = [&](CLI::App* sub) {
    sub->add_option("--element", o.element, "Generator word or element name")->capture_default_str();
  };
  auto bound = [&](CLI::App* sub) {
    sub->add_option("--max-states", o.max_states, "State closure bound")->capture_default_str();
  };
  auto reference = [&](CLI::App* sub) {
    sub->add_option("--reference", o.reference, "Reference table JSON")->capture_default_str();
  };

  std::function<int()> run;
  auto*                build = app.add_subcommand("build", "Print the transversal and generator recursions");
  build->callback([&] { run = [&] { return cmd_build(o); }; });

  auto* states = app.add_subcommand("states", "State closure, with DOT and CSV export to --out");
  element(states);
  bound(states);
  reference(states);
  states->callback([&] { run = [&] { return cmd_states(o); }; });

  auto* matrix = app.add_subcommand("matrix", "Incidence matrix of the state closure as CSV");
  element(matrix);
  bound(matrix);
  reference(matrix);
  matrix->callback([&] { run = [&] { return cmd_matrix(o); }; });

  auto* dot = app.add_subcommand("dot", "State closure as a DOT graph");
  element(dot);
  bound(dot);
  dot->callback([&] { run = [&] { return cmd_dot(o); }; });

  auto* portrait_cmd = app.add_subcommand("portrait", "Truncated portrait as an indented tree");
  element(portrait_cmd);
  portrait_cmd->add_option("--depth", o.depth, "Portrait depth")->capture_default_str();
  portrait_cmd->callback([&] { run = [&] { return cmd_portrait(o); }; });

  auto* act = app.add_subcommand("act", "Image of a vertex");
  element(act);
  act->add_option("--vertex", o.vertex, "Vertex, e.g. 0132")->required();
  act->callback([&] { run = [&] { return cmd_act(o); }; });

  auto* verify = app.add_subcommand("verify", "Run a verification suite; exit 0 iff it passes");
  element(verify);
  bound(verify);
  reference(verify);
  verify->add_option("--suite", o.suite, "relations | skew | closed_forms | kernel | matrix | all")
      ->capture_default_str();
  verify->add_option("--word-length", o.word_length, "Kernel scan word length")->capture_default_str();
  verify->add_option("--trials", o.trials, "Skew condition trials")->capture_default_str();
  verify->callback([&] { run = [&] { return cmd_verify(o); }; });

  auto* deformations = app.add_subcommand("deformations", "Enumerate deformations of A0 Y");
  deformations->add_option("--bound", o.bound, "Transversal bound")->capture_default_str();
  deformations->callback([&] { run = [&] { return cmd_deformations(o); }; });

  auto* reduce = app.add_subcommand("reduce", "Drop the deformation and optionally twist");
  reduce->add_option("--gamma", o.gamma, "Unimodular matrix as JSON rows, e.g. [[0,1],[1,0]]");
  reduce->callback([&] { run = [&] { return cmd_reduce(o); }; });

  CLI11_PARSE(app, argc, argv);

  try {
    return run();
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << " (at position " << e.position() << ")\n";
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
