#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wreathrep/automaton.hpp"
#include "wreathrep/constructions.hpp"
#include "wreathrep/tree.hpp"

using namespace wreathrep;

namespace {

  std::size_t count(std::string const& text, std::string const& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
      ++n;
    }
    return n;
  }

  MealyAutomaton x1_automaton() {
    RepContext ctx(theorem4_pair(2, 2));
    return *state_closure(ctx, WreathElement::x(ctx.ring(), 0));
  }

  std::string reference_path() { return std::string(WREATHREP_DATA_DIR) + "/theorem5_reference.json"; }

}  // namespace

TEST_CASE("incidence matrix") {
  RepContext ctx(theorem4_pair(2, 2));
  auto       id = *state_closure(ctx, WreathElement::identity(ctx.ring()));
  CHECK(incidence_matrix(id) == IntMatrix{{4}});

  auto aut = x1_automaton();
  auto m   = incidence_matrix(aut);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::int64_t sum = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      sum += m(r, c);
    }
    CHECK(sum == 4);
  }
  CHECK(m.row(0) == std::vector<std::int64_t>{4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("paper cells through the reference aliases") {
  auto const ref  = load_reference_file(reference_path());
  auto const aut  = x1_automaton();
  auto const m    = incidence_matrix(aut);
  auto const ring = aut.states.front().ring();
  auto       at   = [&](std::string const& alias) {
    auto k = std::find(ref.aliases.begin(), ref.aliases.end(), alias) - ref.aliases.begin();
    return *aut.find(parse_element_name(ring, ref.states[static_cast<std::size_t>(k)]));
  };
  CHECK(m(at("s9"), at("s6")) == 4);
  CHECK(m(at("s2"), at("s1")) == 3);
  CHECK(m(at("s2"), at("s10")) == 1);
}

TEST_CASE("DOT export") {
  auto aut = x1_automaton();
  auto dot = export_dot(aut);
  CHECK(dot == export_dot(x1_automaton()));
  CHECK(count(dot, "[label=\"") - count(dot, " -> ") == 12);
  CHECK(count(dot, " -> ") == 48);
  CHECK(count(dot, "doublecircle") == 1);
  CHECK(dot.find("label=\"0|2\"") != std::string::npos);

  RepContext lamp(classical_lamplighter());
  auto       l    = *state_closure(lamp, WreathElement::x(lamp.ring(), 0));
  auto       ldot = export_dot(l);
  CHECK(count(ldot, " -> ") == 4);
  CHECK(count(ldot, "[label=\"") - count(ldot, " -> ") == 2);

  auto id = *state_closure(lamp, WreathElement::identity(lamp.ring()));
  auto idot = export_dot(id);
  CHECK(count(idot, "s0 -> s0") == 2);
}

TEST_CASE("CSV export") {
  auto aut = x1_automaton();
  auto csv = export_matrix_csv(aut, {{"e", "E"}});
  std::istringstream in(csv);
  std::string        header;
  std::getline(in, header);
  CHECK(header.rfind("\"\",\"E\",", 0) == 0);
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
  }
  CHECK(rows == 12);
}

TEST_CASE("inverse automaton") {
  RepContext  ctx(theorem4_pair(2, 2));
  auto const  g   = WreathElement::x(ctx.ring(), 0);
  auto        aut = *state_closure(ctx, g);
  auto        inv = *state_closure(ctx, g.inverse());
  REQUIRE(inv.size() == aut.size());
  // State s of the inverse automaton is the inverse of a state of aut; the
  // transition on letter sigma_s(l) leads to the inverse of the child at l.
  for (std::size_t s = 0; s < aut.size(); ++s) {
    auto const k = inv.find(aut.states[s].inverse());
    REQUIRE(k.has_value());
    CHECK(inv.outputs[*k] == aut.outputs[s].inverse());
    for (std::uint32_t l = 0; l < aut.alphabet_size; ++l) {
      auto const out    = aut.outputs[s](l);
      auto const target = inv.states[inv.transitions[*k][out]];
      CHECK(target == aut.states[aut.transitions[s][l]].inverse());
    }
  }
}

TEST_CASE("compare against itself and against the transcribed table") {
  auto aut  = x1_automaton();
  auto self = compare_to_reference(aut, reference_from(aut));
  CHECK(self.cells.empty());
  CHECK(self.matches());

  auto ref  = load_reference_file(reference_path());
  CHECK(ref.states.size() == 12);
  auto diff = compare_to_reference(aut, ref);
  CHECK(diff.missing_states.empty());
  CHECK(diff.extra_states.empty());
  CHECK(diff.undocumented() == 0);
  CHECK(diff.cells.size() == ref.errata.size());
  CHECK(diff.matches());
}

TEST_CASE("a perturbed reference is reported") {
  auto aut = x1_automaton();
  auto ref = reference_from(aut);
  std::size_t r2 = 2;
  while (ref.matrix[r2] == ref.matrix[1]) {
    ++r2;
  }
  std::swap(ref.matrix[1], ref.matrix[r2]);
  auto diff = compare_to_reference(aut, ref);
  CHECK_FALSE(diff.matches());
  CHECK(diff.undocumented() > 0);
  for (auto const& c : diff.cells) {
    bool const in_rows = c.row == ref.states[1] || c.row == ref.states[r2];
    CHECK(in_rows);
  }

  auto missing = reference_from(aut);
  missing.states[5] = "a^{x1^{7}}";
  auto d2 = compare_to_reference(aut, missing);
  CHECK(d2.missing_states.size() == 1);
  CHECK(d2.extra_states.size() == 1);

  auto broken = reference_from(aut);
  broken.states[2] = "a^{x9}";
  CHECK_THROWS_AS(compare_to_reference(aut, broken), std::invalid_argument);
}

TEST_CASE("reference parsing") {
  CHECK_THROWS_AS(load_reference("{"), std::invalid_argument);
  CHECK_THROWS_AS(load_reference(R"({"states": ["e"], "matrix": [[1, 2]]})"), std::invalid_argument);
  CHECK_THROWS_AS(load_reference_file("/nonexistent.json"), std::invalid_argument);
  auto r = load_reference(R"({"states": ["e"], "matrix": [[4]]})");
  CHECK(r.aliases.empty());
}
