#pragma once

// Wreath recursion for the representation induced by a similarity pair.
//
// The transversal is {x^t a^s} with t running over X/Y and s over A/A0;
// letter index = (position of t) * [A:A0] + (position of s).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wreathrep/automaton.hpp"
#include "wreathrep/similarity.hpp"
#include "wreathrep/wreath.hpp"

namespace wreathrep {

  struct CosetResolution {
    std::uint32_t letter;
    WreathElement cofactor;  // g * t_letter^{-1}, an element of H
  };

  class RepContext {
   public:
    // Throws std::length_error if the degree exceeds max_degree.
    explicit RepContext(SimilarityPair pair, std::uint64_t max_degree = 1u << 16);

    SimilarityPair const&             pair() const noexcept { return pair_; }
    Ring const&                       ring() const noexcept { return pair_.ring(); }
    std::size_t                       degree() const noexcept { return transversal_.size(); }
    std::vector<WreathElement> const& transversal() const noexcept { return transversal_; }

    // Letter of a transversal element; nullopt if g is not one.
    std::optional<std::uint32_t> letter_of(WreathElement const& g) const;

    bool in_subgroup(WreathElement const& g) const;
    // The coset H t containing g, by direct residue computation.
    CosetResolution resolve(WreathElement const& g) const;
    // Same result by testing every transversal element.
    CosetResolution resolve_by_scan(WreathElement const& g) const;
    // f(h) for h in H; throws std::domain_error otherwise.
    WreathElement image(WreathElement const& h) const;

   private:
    SimilarityPair                                                  pair_;
    std::vector<ExponentVector>                                     x_reps_;
    std::unordered_map<ExponentVector, std::size_t, ExponentVectorHash> x_index_;
    std::size_t                                                     a_count_ = 0;
    std::vector<WreathElement>                                      transversal_;
  };

  struct Decomposition {
    std::vector<WreathElement> children;
    Permutation                perm;
    bool operator==(Decomposition const&) const = default;
  };

  Permutation   coset_action(RepContext const& ctx, WreathElement const& g);
  Decomposition decompose(RepContext const& ctx, WreathElement const& g);

  // Wreath product of two decompositions: (g h)_i = g_i h_{sigma_g(i)}.
  Decomposition compose(Decomposition const& g, Decomposition const& h);

  using Vertex = std::vector<std::uint32_t>;

  // Single characters when the degree is at most 10, comma-separated
  // letters otherwise. Throws ParseError on a bad letter.
  Vertex      parse_vertex(std::string_view text, std::size_t degree);
  std::string format_vertex(Vertex const& v, std::size_t degree);

  Vertex      act_on_vertex(RepContext const& ctx, WreathElement const& g, Vertex const& v);
  std::string act_on_vertex(RepContext const& ctx, WreathElement const& g, std::string_view v);

  struct Portrait {
    std::size_t                   depth = 0;
    std::size_t                   degree = 0;
    std::map<Vertex, Permutation> labels;
    bool operator==(Portrait const&) const = default;
  };

  Portrait    portrait(RepContext const& ctx, WreathElement const& g, std::size_t depth);
  std::string to_text(Portrait const& p);

  enum class Triviality { trivial, non_trivial, unknown };
  std::string to_string(Triviality t);

  // Exact state closure under decompose. The identity (when reachable) comes
  // first, then breadth-first discovery order. nullopt past max_states.
  std::optional<MealyAutomaton> state_closure(RepContext const& ctx, WreathElement const& g,
                                              std::size_t max_states = 10000);
  // Single-threaded reference with the same output.
  std::optional<MealyAutomaton> state_closure_serial(RepContext const& ctx,
                                                     WreathElement const& g,
                                                     std::size_t max_states = 10000);

  Triviality is_trivial_action(RepContext const& ctx, WreathElement const& g,
                               std::size_t max_states = 10000);

  struct KernelEntry {
    std::string word;
    std::string element;
    bool operator==(KernelEntry const&) const = default;
  };

  struct KernelReport {
    std::size_t              max_word_length = 0;
    std::size_t              words = 0;            // freely reduced words examined
    std::size_t              identity_words = 0;   // skipped, evaluate to e
    std::size_t              distinct_elements = 0;
    std::vector<KernelEntry> witnesses;            // nontrivial elements acting trivially
    std::vector<KernelEntry> unknown;              // closure bound exceeded
    bool passed() const noexcept { return witnesses.empty() && unknown.empty(); }
    bool operator==(KernelReport const&) const = default;
  };

  // All freely reduced words of length <= max_length, by length then letter order.
  std::vector<GeneratorWord> reduced_words(std::size_t rank, std::size_t max_length);

  KernelReport kernel_scan(RepContext const& ctx, std::size_t max_word_length = 6,
                           std::size_t max_states = 10000);
  KernelReport kernel_scan_serial(RepContext const& ctx, std::size_t max_word_length = 6,
                                  std::size_t max_states = 10000);

  struct ClosedFormMismatch {
    std::string   generator;
    std::uint32_t letter;
    std::string   expected;
    std::string   computed;
  };

  struct ClosedFormReport {
    bool                            applicable = false;
    std::string                     family;  // "degree-p" or "degree-p^2"
    std::size_t                     checked = 0;
    std::vector<ClosedFormMismatch> mismatches;
    bool passed() const noexcept { return applicable && mismatches.empty(); }
  };

  // Decompositions of the generators against the known closed forms.
  ClosedFormReport verify_closed_form(RepContext const& ctx);

}  // namespace wreathrep
