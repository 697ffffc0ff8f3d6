#pragma once

// Verification suites with JSON reports, shared by the command-line tool and
// the acceptance checks.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wreathrep/automaton.hpp"
#include "wreathrep/tree.hpp"

namespace wreathrep {

  struct SuiteResult {
    std::string    suite;
    bool           passed = false;
    nlohmann::json report;
  };

  struct SuiteOptions {
    std::uint64_t seed            = 0;
    std::size_t   max_states      = 10000;
    std::size_t   word_length     = 6;
    std::size_t   skew_trials     = 1000;
    std::size_t   relation_shifts = 10;
    std::string   reference_path;         // matrix suite
    std::string   element         = "x1";  // matrix suite, element name
  };

  // Word-level relations checked through composed letter decompositions.
  SuiteResult run_relations(RepContext const& ctx, SuiteOptions const& opt);
  SuiteResult run_skew(RepContext const& ctx, SuiteOptions const& opt);
  SuiteResult run_closed_forms(RepContext const& ctx, SuiteOptions const& opt);
  SuiteResult run_kernel(RepContext const& ctx, SuiteOptions const& opt);
  SuiteResult run_matrix(RepContext const& ctx, SuiteOptions const& opt);

  std::vector<std::string> suite_names();
  // Throws std::invalid_argument for an unknown suite.
  SuiteResult run_suite(std::string const& name, RepContext const& ctx, SuiteOptions const& opt);

  // Action of a word computed letter by letter (not from the evaluated element).
  Decomposition word_decomposition(RepContext const& ctx, GeneratorWord const& w);

  nlohmann::json to_json(KernelReport const& r);
  nlohmann::json to_json(ClosedFormReport const& r);
  nlohmann::json to_json(ReferenceDiff const& d);

}  // namespace wreathrep
