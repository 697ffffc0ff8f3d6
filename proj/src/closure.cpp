// State closure and kernel scan. The parallel versions split the expensive
// decompositions across OpenMP threads and merge in a fixed order, so their
// output is identical to the serial references.

#include <deque>
#include <exception>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wreathrep/tree.hpp"

namespace wreathrep {

  namespace {

    struct ClosureState {
      std::vector<WreathElement>                              states;
      std::unordered_map<WreathElement, std::uint32_t>        index;
      std::vector<Decomposition>                              decs;
    };

    // Moves the identity (if present) to the front and builds the automaton.
    MealyAutomaton finish(RepContext const& ctx, ClosureState& cs) {
      auto const n = cs.states.size();
      std::vector<std::uint32_t> order(n);
      for (std::uint32_t k = 0; k < n; ++k) {
        order[k] = k;
      }
      auto id = cs.index.find(WreathElement::identity(ctx.ring()));
      if (id != cs.index.end() && id->second != 0) {
        order.erase(order.begin() + id->second);
        order.insert(order.begin(), id->second);
      }
      std::vector<std::uint32_t> pos(n);
      for (std::uint32_t k = 0; k < n; ++k) {
        pos[order[k]] = k;
      }
      MealyAutomaton aut;
      aut.alphabet_size = ctx.degree();
      aut.initial       = pos[0];
      for (auto old : order) {
        aut.states.push_back(cs.states[old]);
        aut.outputs.push_back(cs.decs[old].perm);
        std::vector<std::uint32_t> row;
        row.reserve(ctx.degree());
        for (auto const& child : cs.decs[old].children) {
          row.push_back(pos[cs.index.at(child)]);
        }
        aut.transitions.push_back(std::move(row));
      }
      return aut;
    }

    // Appends unseen children in letter order; false once the bound is hit.
    bool absorb(ClosureState& cs, Decomposition const& d, std::vector<std::uint32_t>& next,
                std::size_t max_states) {
      for (auto const& child : d.children) {
        if (cs.index.contains(child)) {
          continue;
        }
        if (cs.states.size() >= max_states) {
          return false;
        }
        auto k = static_cast<std::uint32_t>(cs.states.size());
        cs.index.emplace(child, k);
        cs.states.push_back(child);
        next.push_back(k);
      }
      return true;
    }

    template <class Body>
    void parallel_for(std::size_t n, Body&& body) {
      std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
        try {
          body(static_cast<std::size_t>(k));
        } catch (...) {
#pragma omp critical(wreathrep_parallel_error)
          if (!error) {
            error = std::current_exception();
          }
        }
      }
      if (error) {
        std::rethrow_exception(error);
      }
    }

  }  // namespace

  std::optional<MealyAutomaton> state_closure_serial(RepContext const& ctx,
                                                     WreathElement const& g,
                                                     std::size_t max_states) {
    if (max_states == 0) {
      throw std::invalid_argument("state_closure: max_states must be at least 1");
    }
    ClosureState cs;
    cs.states.push_back(g);
    cs.index.emplace(g, 0);
    std::vector<std::uint32_t> scratch;
    for (std::size_t k = 0; k < cs.states.size(); ++k) {
      cs.decs.push_back(decompose(ctx, cs.states[k]));
      if (!absorb(cs, cs.decs.back(), scratch, max_states)) {
        return std::nullopt;
      }
    }
    return finish(ctx, cs);
  }

  std::optional<MealyAutomaton> state_closure(RepContext const& ctx, WreathElement const& g,
                                              std::size_t max_states) {
    if (max_states == 0) {
      throw std::invalid_argument("state_closure: max_states must be at least 1");
    }
    ClosureState cs;
    cs.states.push_back(g);
    cs.index.emplace(g, 0);
    std::vector<std::uint32_t> level{0};
    while (!level.empty()) {
      std::vector<Decomposition> found(level.size());
      parallel_for(level.size(), [&](std::size_t k) {
        found[k] = decompose(ctx, cs.states[level[k]]);
      });
      std::vector<std::uint32_t> next;
      for (auto& d : found) {
        // Levels are contiguous index ranges, so decs stays aligned with states.
        cs.decs.push_back(std::move(d));
        if (!absorb(cs, cs.decs.back(), next, max_states)) {
          return std::nullopt;
        }
      }
      level = std::move(next);
    }
    return finish(ctx, cs);
  }

  Triviality is_trivial_action(RepContext const& ctx, WreathElement const& g,
                               std::size_t max_states) {
    std::unordered_map<WreathElement, bool> seen;
    std::deque<WreathElement>               queue;
    seen.emplace(g, true);
    queue.push_back(g);
    while (!queue.empty()) {
      auto d = decompose(ctx, queue.front());
      queue.pop_front();
      if (!d.perm.is_identity()) {
        return Triviality::non_trivial;
      }
      for (auto& child : d.children) {
        if (seen.contains(child)) {
          continue;
        }
        if (seen.size() >= max_states) {
          return Triviality::unknown;
        }
        seen.emplace(child, true);
        queue.push_back(std::move(child));
      }
    }
    return Triviality::trivial;
  }

  std::vector<GeneratorWord> reduced_words(std::size_t rank, std::size_t max_length) {
    auto const                 alphabet = GeneratorWord::alphabet(rank);
    std::vector<GeneratorWord> out;
    std::vector<GeneratorWord> frontier{GeneratorWord{}};
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::vector<GeneratorWord> grown;
      for (auto const& w : frontier) {
        for (auto const& l : alphabet) {
          if (!w.empty() && w.letters().back() == l.inverted()) {
            continue;
          }
          auto letters = w.letters();
          letters.push_back(l);
          grown.emplace_back(std::move(letters));
        }
      }
      out.insert(out.end(), grown.begin(), grown.end());
      frontier = std::move(grown);
    }
    return out;
  }

  namespace {

    struct ScanPlan {
      KernelReport               report;
      std::vector<WreathElement> elements;  // distinct nontrivial elements
      std::vector<std::string>   words;     // first word reaching each element
    };

    ScanPlan plan_scan(RepContext const& ctx, std::size_t max_word_length) {
      ScanPlan plan;
      plan.report.max_word_length = max_word_length;
      std::unordered_map<WreathElement, std::size_t> first;
      for (auto const& w : reduced_words(ctx.ring().rank(), max_word_length)) {
        ++plan.report.words;
        auto g = eval_word(ctx.ring(), w);
        if (g.is_identity()) {
          ++plan.report.identity_words;
          continue;
        }
        if (first.emplace(g, plan.elements.size()).second) {
          plan.elements.push_back(std::move(g));
          plan.words.push_back(to_string(w));
        }
      }
      plan.report.distinct_elements = plan.elements.size();
      return plan;
    }

    KernelReport collect(ScanPlan& plan, std::vector<Triviality> const& verdicts) {
      for (std::size_t k = 0; k < verdicts.size(); ++k) {
        KernelEntry entry{plan.words[k], element_name(plan.elements[k])};
        if (verdicts[k] == Triviality::trivial) {
          plan.report.witnesses.push_back(std::move(entry));
        } else if (verdicts[k] == Triviality::unknown) {
          plan.report.unknown.push_back(std::move(entry));
        }
      }
      return std::move(plan.report);
    }

  }  // namespace

  KernelReport kernel_scan_serial(RepContext const& ctx, std::size_t max_word_length,
                                  std::size_t max_states) {
    auto                    plan = plan_scan(ctx, max_word_length);
    std::vector<Triviality> verdicts(plan.elements.size());
    for (std::size_t k = 0; k < plan.elements.size(); ++k) {
      verdicts[k] = is_trivial_action(ctx, plan.elements[k], max_states);
    }
    return collect(plan, verdicts);
  }

  KernelReport kernel_scan(RepContext const& ctx, std::size_t max_word_length,
                           std::size_t max_states) {
    auto                    plan = plan_scan(ctx, max_word_length);
    std::vector<Triviality> verdicts(plan.elements.size());
    parallel_for(plan.elements.size(), [&](std::size_t k) {
      verdicts[k] = is_trivial_action(ctx, plan.elements[k], max_states);
    });
    return collect(plan, verdicts);
  }

}  // namespace wreathrep
