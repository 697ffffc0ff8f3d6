#include "wreathrep/automaton.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wreathrep {

  std::vector<std::string> MealyAutomaton::names() const {
    std::vector<std::string> out;
    out.reserve(states.size());
    for (auto const& s : states) {
      out.push_back(element_name(s));
    }
    return out;
  }

  std::optional<std::size_t> MealyAutomaton::find(WreathElement const& g) const {
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (states[k] == g) {
        return k;
      }
    }
    return std::nullopt;
  }

  bool MealyAutomaton::is_well_formed() const {
    if (transitions.size() != states.size() || outputs.size() != states.size()
        || initial >= states.size()) {
      return false;
    }
    for (std::size_t s = 0; s < states.size(); ++s) {
      if (transitions[s].size() != alphabet_size || outputs[s].size() != alphabet_size) {
        return false;
      }
      for (auto t : transitions[s]) {
        if (t >= states.size()) {
          return false;
        }
      }
    }
    return true;
  }

  IntMatrix incidence_matrix(MealyAutomaton const& aut) {
    auto const n = aut.size();
    IntMatrix  m(n, n);
    for (std::size_t s = 0; s < n; ++s) {
      for (auto t : aut.transitions[s]) {
        m(s, t) += 1;
      }
    }
    return m;
  }

  namespace {

    std::string quoted(std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + '"';
    }

    std::string csv_field(std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"') {
          out += '"';
        }
        out += c;
      }
      return out + '"';
    }

  }  // namespace

  std::string export_dot(MealyAutomaton const& aut, std::string const& graph_name) {
    std::ostringstream os;
    auto const         names = aut.names();
    os << "digraph " << quoted(graph_name) << " {\n";
    os << "  rankdir=LR;\n";
    for (std::size_t s = 0; s < aut.size(); ++s) {
      os << "  s" << s << " [label=" << quoted(names[s]);
      if (s == aut.initial) {
        os << ", shape=doublecircle";
      }
      os << "];\n";
    }
    for (std::size_t s = 0; s < aut.size(); ++s) {
      for (std::uint32_t l = 0; l < aut.alphabet_size; ++l) {
        os << "  s" << s << " -> s" << aut.transitions[s][l] << " [label=\"" << l << '|'
           << aut.outputs[s](l) << "\"];\n";
      }
    }
    os << "}\n";
    return os.str();
  }

  std::string export_matrix_csv(MealyAutomaton const& aut,
                                std::map<std::string, std::string> const& aliases) {
    auto names = aut.names();
    for (auto& n : names) {
      if (auto it = aliases.find(n); it != aliases.end()) {
        n = it->second;
      }
    }
    auto const         m = incidence_matrix(aut);
    std::ostringstream os;
    os << csv_field("");
    for (auto const& n : names) {
      os << ',' << csv_field(n);
    }
    os << '\n';
    for (std::size_t r = 0; r < aut.size(); ++r) {
      os << csv_field(names[r]);
      for (std::size_t c = 0; c < aut.size(); ++c) {
        os << ',' << m(r, c);
      }
      os << '\n';
    }
    return os.str();
  }

  ReferenceAutomaton load_reference(std::string const& json_text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (nlohmann::json::exception const& e) {
      throw std::invalid_argument(std::string("reference: ") + e.what());
    }
    ReferenceAutomaton ref;
    try {
      ref.states = j.at("states").get<std::vector<std::string>>();
      ref.matrix = j.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
      if (j.contains("aliases")) {
        ref.aliases = j.at("aliases").get<std::vector<std::string>>();
      }
      if (j.contains("errata")) {
        for (auto const& e : j.at("errata")) {
          ref.errata.push_back({e.at("row").get<std::string>(), e.at("column").get<std::string>(),
                                e.at("transcribed").get<std::int64_t>(),
                                e.at("corrected").get<std::int64_t>(),
                                e.value("note", std::string{})});
        }
      }
    } catch (nlohmann::json::exception const& e) {
      throw std::invalid_argument(std::string("reference: ") + e.what());
    }
    auto const n = ref.states.size();
    if (ref.matrix.size() != n) {
      throw std::invalid_argument("reference: matrix row count differs from state count");
    }
    for (auto const& row : ref.matrix) {
      if (row.size() != n) {
        throw std::invalid_argument("reference: matrix is not square");
      }
    }
    if (!ref.aliases.empty() && ref.aliases.size() != n) {
      throw std::invalid_argument("reference: alias count differs from state count");
    }
    return ref;
  }

  ReferenceAutomaton load_reference_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument("reference: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_reference(buf.str());
  }

  std::size_t ReferenceDiff::undocumented() const {
    std::size_t n = 0;
    for (auto const& c : cells) {
      n += c.documented ? 0 : 1;
    }
    return n;
  }

  bool ReferenceDiff::matches() const {
    return missing_states.empty() && extra_states.empty() && undocumented() == 0;
  }

  ReferenceDiff compare_to_reference(MealyAutomaton const& aut, ReferenceAutomaton const& ref) {
    if (aut.size() == 0) {
      throw std::invalid_argument("compare_to_reference: empty automaton");
    }
    auto const&   ring = aut.states.front().ring();
    ReferenceDiff diff;

    auto label = [&](std::size_t k) {
      return ref.aliases.empty() ? ref.states[k] : ref.aliases[k];
    };
    // Reference index -> computed index.
    std::vector<std::optional<std::size_t>> align(ref.states.size());
    std::set<std::size_t>                   used;
    for (std::size_t k = 0; k < ref.states.size(); ++k) {
      WreathElement g = WreathElement::identity(ring);
      try {
        g = parse_element_name(ring, ref.states[k]);
      } catch (std::invalid_argument const& e) {
        throw std::invalid_argument("compare_to_reference: cannot resolve state name '"
                                    + ref.states[k] + "': " + e.what());
      }
      align[k] = aut.find(g);
      if (align[k]) {
        used.insert(*align[k]);
      } else {
        diff.missing_states.push_back(label(k));
      }
    }
    auto const names = aut.names();
    for (std::size_t s = 0; s < aut.size(); ++s) {
      if (!used.contains(s)) {
        diff.extra_states.push_back(names[s]);
      }
    }

    auto const m = incidence_matrix(aut);
    for (std::size_t r = 0; r < ref.states.size(); ++r) {
      for (std::size_t c = 0; c < ref.states.size(); ++c) {
        if (!align[r] || !align[c]) {
          continue;
        }
        auto computed = m(*align[r], *align[c]);
        auto expected = ref.matrix[r][c];
        if (computed == expected) {
          continue;
        }
        CellDiff cell{label(r), label(c), expected, computed, false};
        for (auto const& e : ref.errata) {
          if (e.row == cell.row && e.column == cell.column && e.transcribed == expected
              && e.corrected == computed) {
            cell.documented = true;
          }
        }
        diff.cells.push_back(std::move(cell));
      }
    }
    return diff;
  }

  ReferenceAutomaton reference_from(MealyAutomaton const& aut) {
    ReferenceAutomaton ref;
    ref.states = aut.names();
    auto m     = incidence_matrix(aut);
    ref.matrix = m.to_rows();
    return ref;
  }

}  // namespace wreathrep
