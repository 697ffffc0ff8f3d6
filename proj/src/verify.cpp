#include "wreathrep/verify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "wreathrep/identities.hpp"
#include "wreathrep/similarity.hpp"

namespace wreathrep {

  namespace {

    using Letters = std::vector<Letter>;

    Letter a_letter(bool inverse = false) { return {Letter::Kind::a, 0, inverse}; }
    Letter x_letter(std::size_t i, bool inverse = false) { return {Letter::Kind::x, i, inverse}; }

    void append_power(Letters& out, Letter l, std::int64_t k) {
      if (k < 0) {
        l = l.inverted();
        k = -k;
      }
      for (std::int64_t j = 0; j < k; ++j) {
        out.push_back(l);
      }
    }

    // x^{-v} a^{+-1} x^{v}
    Letters conjugate_a(ExponentVector const& v, bool inverse) {
      Letters out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        append_power(out, x_letter(i), -v[i]);
      }
      out.push_back(a_letter(inverse));
      for (std::size_t i = v.size(); i-- > 0;) {
        append_power(out, x_letter(i), v[i]);
      }
      return out;
    }

    GeneratorWord commutator_word(Letters const& g, Letters const& h) {
      auto inv = [](Letters w) {
        std::reverse(w.begin(), w.end());
        for (auto& l : w) {
          l = l.inverted();
        }
        return w;
      };
      Letters out = inv(g);
      auto    hi  = inv(h);
      out.insert(out.end(), hi.begin(), hi.end());
      out.insert(out.end(), g.begin(), g.end());
      out.insert(out.end(), h.begin(), h.end());
      return GeneratorWord(std::move(out));
    }

    WreathElement letter_element(Ring const& ring, Letter const& l) {
      auto g = l.kind == Letter::Kind::a ? WreathElement::a(ring) : WreathElement::x(ring, l.index);
      return l.inverse ? g.inverse() : g;
    }

    nlohmann::json mismatch_json(ClosedFormMismatch const& m) {
      return {{"generator", m.generator},
              {"letter", m.letter},
              {"expected", m.expected},
              {"computed", m.computed}};
    }

  }  // namespace

  Decomposition word_decomposition(RepContext const& ctx, GeneratorWord const& w) {
    auto const& ring = ctx.ring();
    Decomposition acc{std::vector<WreathElement>(ctx.degree(), WreathElement::identity(ring)),
                      Permutation::identity(ctx.degree())};
    for (auto const& l : w.letters()) {
      acc = compose(acc, decompose(ctx, letter_element(ring, l)));
    }
    return acc;
  }

  nlohmann::json to_json(KernelReport const& r) {
    auto entries = [](std::vector<KernelEntry> const& v) {
      auto arr = nlohmann::json::array();
      for (auto const& e : v) {
        arr.push_back({{"word", e.word}, {"element", e.element}});
      }
      return arr;
    };
    return {{"max_word_length", r.max_word_length},
            {"words", r.words},
            {"identity_words", r.identity_words},
            {"distinct_elements", r.distinct_elements},
            {"witnesses", entries(r.witnesses)},
            {"unknown", entries(r.unknown)},
            {"passed", r.passed()}};
  }

  nlohmann::json to_json(ClosedFormReport const& r) {
    auto arr = nlohmann::json::array();
    for (auto const& m : r.mismatches) {
      arr.push_back(mismatch_json(m));
    }
    return {{"applicable", r.applicable},
            {"family", r.family},
            {"checked", r.checked},
            {"mismatches", arr},
            {"passed", r.passed()}};
  }

  nlohmann::json to_json(ReferenceDiff const& d) {
    auto cells = nlohmann::json::array();
    for (auto const& c : d.cells) {
      cells.push_back({{"row", c.row},
                       {"column", c.column},
                       {"reference", c.reference},
                       {"computed", c.computed},
                       {"documented", c.documented}});
    }
    return {{"missing_states", d.missing_states},
            {"extra_states", d.extra_states},
            {"cells", cells},
            {"undocumented", d.undocumented()},
            {"matches", d.matches()}};
  }

  SuiteResult run_relations(RepContext const& ctx, SuiteOptions const& opt) {
    auto const&     ring = ctx.ring();
    auto const      d    = ring.rank();
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::int64_t> coord(-3, 3);

    std::vector<std::pair<std::string, GeneratorWord>> relators;
    {
      Letters w;
      append_power(w, a_letter(), ring.p());
      relators.emplace_back("a^p", GeneratorWord(std::move(w)));
    }
    for (std::size_t k = 0; k < opt.relation_shifts; ++k) {
      ExponentVector v(d);
      do {
        for (std::size_t i = 0; i < d; ++i) {
          v[i] = coord(rng);
        }
      } while (v.is_zero());
      relators.emplace_back("[a, a^{" + monomial_string(v) + "}]",
                            commutator_word({a_letter()}, conjugate_a(v, false)));
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        relators.emplace_back("[x" + std::to_string(i + 1) + ", x" + std::to_string(j + 1) + "]",
                              commutator_word({x_letter(i)}, {x_letter(j)}));
      }
    }

    bool passed  = true;
    auto entries = nlohmann::json::array();
    for (auto const& [name, word] : relators) {
      auto const dec     = word_decomposition(ctx, word);
      auto       verdict = dec.perm.is_identity() ? Triviality::trivial : Triviality::non_trivial;
      for (auto const& child : dec.children) {
        if (verdict != Triviality::trivial) {
          break;
        }
        verdict = is_trivial_action(ctx, child, opt.max_states);
      }
      bool ok = verdict == Triviality::trivial;
      passed  = passed && ok;
      entries.push_back({{"relator", name},
                         {"word", to_string(word)},
                         {"expected", "Trivial"},
                         {"verdict", to_string(verdict)},
                         {"ok", ok}});
    }
    std::vector<std::pair<std::string, WreathElement>> generators{{"a", WreathElement::a(ring)}};
    for (std::size_t i = 0; i < d; ++i) {
      generators.emplace_back("x" + std::to_string(i + 1), WreathElement::x(ring, i));
    }
    for (auto const& [name, g] : generators) {
      auto verdict = is_trivial_action(ctx, g, opt.max_states);
      bool ok      = verdict == Triviality::non_trivial;
      passed       = passed && ok;
      entries.push_back(
          {{"element", name}, {"expected", "NonTrivial"}, {"verdict", to_string(verdict)}, {"ok", ok}});
    }
    return {"relations", passed, {{"seed", opt.seed}, {"checks", entries}, {"passed", passed}}};
  }

  SuiteResult run_skew(RepContext const& ctx, SuiteOptions const& opt) {
    auto const& pair   = ctx.pair();
    auto        skew   = check_skew_condition(pair, opt.skew_trials, opt.seed);
    auto        fails  = nlohmann::json::array();
    for (std::size_t k = 0; k < std::min<std::size_t>(skew.failures.size(), 10); ++k) {
      auto const& f = skew.failures[k];
      fails.push_back({{"w", to_string(f.w)},
                       {"nu", to_string(f.nu)},
                       {"lhs", to_string(f.lhs)},
                       {"rhs", to_string(f.rhs)}});
    }
    nlohmann::json report{{"seed", opt.seed},
                          {"trials", skew.trials},
                          {"skew_failures", skew.failures.size()},
                          {"examples", fails}};
    bool passed = skew.passed();

    // Additivity, and agreement with the decomposition route when available.
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    std::size_t     additive_failures = 0, oracle_failures = 0;
    bool const      has_oracle
        = std::holds_alternative<AugmentationClosedForm>(pair.endo().mu_spec());
    for (std::size_t k = 0; k < opt.skew_trials; ++k) {
      auto f = random_ideal_element(pair.ring(), pair.a0(), rng);
      auto g = random_ideal_element(pair.ring(), pair.a0(), rng);
      if (mu_apply(pair, f + g) != mu_apply(pair, f) + mu_apply(pair, g)) {
        ++additive_failures;
      }
      if (has_oracle && mu_apply(pair, f) != mu_apply_via_decomposition(pair, f)) {
        ++oracle_failures;
      }
    }
    report["additivity_failures"] = additive_failures;
    if (has_oracle) {
      report["decomposition_oracle_failures"] = oracle_failures;
    }
    passed           = passed && additive_failures == 0 && oracle_failures == 0;
    report["passed"] = passed;
    return {"skew", passed, report};
  }

  SuiteResult run_closed_forms(RepContext const& ctx, SuiteOptions const& /*opt*/) {
    auto           generators = verify_closed_form(ctx);
    nlohmann::json report{{"generators", to_json(generators)}};
    bool           passed     = generators.passed();
    auto           identities = verify_g22_identities(ctx);
    if (identities.applicable) {
      report["identities"] = to_json(identities);
      passed               = passed && identities.passed();
    }
    if (!generators.applicable) {
      report["note"] = "no closed form is known for this pair";
    }
    report["passed"] = passed;
    return {"closed_forms", passed, report};
  }

  SuiteResult run_kernel(RepContext const& ctx, SuiteOptions const& opt) {
    auto r      = kernel_scan(ctx, opt.word_length, opt.max_states);
    auto report = to_json(r);
    return {"kernel", r.passed(), report};
  }

  SuiteResult run_matrix(RepContext const& ctx, SuiteOptions const& opt) {
    if (opt.reference_path.empty()) {
      throw std::invalid_argument("matrix suite needs a reference file");
    }
    auto ref = load_reference_file(opt.reference_path);
    auto g   = parse_element_name(ctx.ring(), opt.element);
    auto aut = state_closure(ctx, g, opt.max_states);
    if (!aut) {
      return {"matrix",
              false,
              {{"element", opt.element},
               {"error", "not shown finite-state within bound"},
               {"max_states", opt.max_states},
               {"passed", false}}};
    }
    auto           diff = compare_to_reference(*aut, ref);
    nlohmann::json report{{"element", opt.element},
                          {"states", aut->size()},
                          {"reference_states", ref.states.size()},
                          {"diff", to_json(diff)},
                          {"passed", diff.matches()}};
    return {"matrix", diff.matches(), report};
  }

  std::vector<std::string> suite_names() {
    return {"relations", "skew", "closed_forms", "kernel", "matrix"};
  }

  SuiteResult run_suite(std::string const& name, RepContext const& ctx, SuiteOptions const& opt) {
    if (name == "relations") {
      return run_relations(ctx, opt);
    }
    if (name == "skew") {
      return run_skew(ctx, opt);
    }
    if (name == "closed_forms") {
      return run_closed_forms(ctx, opt);
    }
    if (name == "kernel") {
      return run_kernel(ctx, opt);
    }
    if (name == "matrix") {
      return run_matrix(ctx, opt);
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
  }

}  // namespace wreathrep
