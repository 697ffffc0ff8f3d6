#pragma once

// Finite Mealy automata built from state closures, plus incidence matrices,
// DOT/CSV export and comparison against a transcribed reference table.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wreathrep/int_matrix.hpp"
#include "wreathrep/wreath.hpp"

namespace wreathrep {

  struct MealyAutomaton {
    std::size_t                             alphabet_size = 0;
    std::vector<WreathElement>              states;
    std::vector<std::vector<std::uint32_t>> transitions;  // [state][letter]
    std::vector<Permutation>                outputs;      // root permutation per state
    std::size_t                             initial = 0;  // state the closure started from

    std::size_t              size() const noexcept { return states.size(); }
    std::vector<std::string> names() const;
    // Index of the state equal to g, if any.
    std::optional<std::size_t> find(WreathElement const& g) const;
    // Closed under transitions, outputs are permutations of the alphabet.
    bool is_well_formed() const;
  };

  // Entry (s, s') counts letters l with transition(s, l) = s'.
  IntMatrix incidence_matrix(MealyAutomaton const& aut);

  // One node per state, one edge per (state, letter) labelled "l|out".
  std::string export_dot(MealyAutomaton const& aut, std::string const& graph_name = "automaton");

  // Header row of quoted state names, then one row per state. Aliases, when
  // given, replace the names they cover.
  std::string export_matrix_csv(MealyAutomaton const& aut,
                                std::map<std::string, std::string> const& aliases = {});

  // A documented correction to a transcribed table cell.
  struct ReferenceErratum {
    std::string row;
    std::string column;
    std::int64_t transcribed = 0;
    std::int64_t corrected   = 0;
    std::string note;
  };

  struct ReferenceAutomaton {
    std::vector<std::string>              states;   // element names, reference order
    std::vector<std::string>              aliases;  // short names, same order (may be empty)
    std::vector<std::vector<std::int64_t>> matrix;
    std::vector<ReferenceErratum>         errata;
  };

  // Parses the JSON reference format; throws std::invalid_argument.
  ReferenceAutomaton load_reference(std::string const& json_text);
  ReferenceAutomaton load_reference_file(std::string const& path);

  struct CellDiff {
    std::string  row;
    std::string  column;
    std::int64_t reference = 0;
    std::int64_t computed  = 0;
    bool         documented = false;  // covered by a reference erratum
  };

  struct ReferenceDiff {
    std::vector<std::string> missing_states;  // in reference, not computed
    std::vector<std::string> extra_states;    // computed, not in reference
    std::vector<CellDiff>    cells;

    std::size_t undocumented() const;
    // No missing/extra states and every cell difference is documented.
    bool matches() const;
  };

  // Aligns states by group element (names are parsed in the automaton's
  // ring); throws std::invalid_argument when a reference name does not parse.
  ReferenceDiff compare_to_reference(MealyAutomaton const& aut, ReferenceAutomaton const& ref);

  // Reference from a computed automaton (its own names, no errata).
  ReferenceAutomaton reference_from(MealyAutomaton const& aut);

}  // namespace wreathrep
