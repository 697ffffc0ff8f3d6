// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "wreathrep/constructions.hpp"
#include "wreathrep/identities.hpp"
#include "wreathrep/tree.hpp"
#include "wreathrep/verify.hpp"

using namespace wreathrep;

namespace {

  struct Outcome {
    bool        ok = true;
    std::string detail;
  };

  // Collects the first failure message.
  struct Check {
    Outcome out;
    void    expect(bool cond, std::string const& what) {
      if (!cond && out.ok) {
        out.ok     = false;
        out.detail = what;
      }
    }
  };

  double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  std::string reference_path() { return std::string(WREATHREP_DATA_DIR) + "/theorem5_reference.json"; }

  Outcome criterion1() {
    Check                      c;
    RepContext                 ctx(theorem4_pair(2, 2));
    auto const                 x1   = WreathElement::x(ctx.ring(), 0);
    auto const                 aut  = state_closure(ctx, x1);
    c.expect(aut.has_value(), "closure of x1 did not terminate");
    if (!aut) {
      return c.out;
    }
    c.expect(aut->size() == 12, "expected 12 states, got " + std::to_string(aut->size()));
    c.expect(decompose(ctx, x1).children.front().is_identity(), "first child of x1 is not e");
    auto const ref  = load_reference_file(reference_path());
    auto const diff = compare_to_reference(*aut, ref);
    c.expect(diff.missing_states.empty() && diff.extra_states.empty(),
             "state names differ from the transcribed list");
    c.expect(diff.undocumented() == 0,
             std::to_string(diff.undocumented()) + " undocumented matrix cell differences");
    std::ostringstream os;
    os << "12 states, " << diff.cells.size() << " documented erratum cells";
    for (auto const& cell : diff.cells) {
      os << " [" << cell.row << "," << cell.column << ": " << cell.reference << "->"
         << cell.computed << "]";
    }
    if (c.out.ok) {
      c.out.detail = os.str();
    }
    return c.out;
  }

  Outcome criterion2() {
    Check      c;
    RepContext ctx(theorem3_pair(2, 1));
    auto const xi = WreathElement::x(ctx.ring(), 0);
    auto const a  = WreathElement::a(ctx.ring());
    auto const d  = decompose(ctx, xi);
    c.expect(d.children.size() == 2 && d.children[0] == xi && d.children[1] == xi * a,
             "xi is not (xi, xi a)");
    c.expect(d.perm == coset_action(ctx, xi) && d.perm.is_identity(),
             "unexpected root permutation " + d.perm.cycles());
    auto aut = state_closure(ctx, xi);
    c.expect(aut && aut->size() == 2, "state closure is not 2 states");
    if (c.out.ok) {
      c.out.detail = "x1 = (" + element_name(d.children[0]) + ", " + element_name(d.children[1])
                     + "), 2 states";
    }
    return c.out;
  }

  Outcome criterion3() {
    Check       c;
    std::size_t cases = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
      for (std::uint32_t j = 1; j < p; ++j) {
        RepContext ctx(theorem3_pair(p, j));
        auto       tag = "p=" + std::to_string(p) + " j=" + std::to_string(j);
        c.expect(verify_closed_form(ctx).passed(), "closed form mismatch at " + tag);
        auto aut = state_closure(ctx, WreathElement::x(ctx.ring(), 0));
        c.expect(aut && aut->size() == p, "state count differs from p at " + tag);
        ++cases;
      }
    }
    if (c.out.ok) {
      c.out.detail = std::to_string(cases) + " (p, j) cases";
    }
    return c.out;
  }

  Outcome criterion4() {
    Check           c;
    std::mt19937_64 rng(0);
    std::size_t     cases = 0;
    for (std::uint32_t p : {2u, 3u}) {
      Ring ring(p, 1);
      for (int sample = 0; sample < 5; ++sample) {
        std::int64_t n;
        do {
          n = static_cast<std::int64_t>(rng() % 13) - 6;
        } while (n == 0 || std::gcd(n, static_cast<std::int64_t>(p)) != 1);
        LaurentPoly u(ring);
        do {
          u = random_poly(ring, rng);
        } while (evaluate(u, {1}) == 0);
        RepContext ctx(theorem2_pair(p, n, u));
        auto const x   = WreathElement::x(ring, 0);
        auto const d   = decompose(ctx, x);
        bool       hit = d.perm.is_identity();
        for (std::uint32_t i = 0; i < p; ++i) {
          hit = hit && d.children[i] == x.pow(n) * WreathElement::from_a_part(u.scaled(i));
        }
        c.expect(hit, "closed form mismatch for p=" + std::to_string(p) + " n=" + std::to_string(n)
                          + " u=" + to_string(u));
        ++cases;
      }
    }
    if (c.out.ok) {
      c.out.detail = std::to_string(cases) + " random (n, u) samples";
    }
    return c.out;
  }

  std::vector<std::pair<std::string, SimilarityPair>> built_representations() {
    std::vector<std::pair<std::string, SimilarityPair>> out;
    for (std::uint32_t p : {2u, 3u}) {
      for (std::uint32_t j = 1; j < p; ++j) {
        out.emplace_back("theorem3(" + std::to_string(p) + "," + std::to_string(j) + ")",
                         theorem3_pair(p, j));
      }
      std::string const u = p == 2 ? "x^2 + x + 1" : "x^2 + 1";
      out.emplace_back("theorem2(" + std::to_string(p) + ",-1," + u + ")",
                       theorem2_pair(p, -1, parse_poly(Ring(p, 1), u)));
      out.emplace_back("theorem4(" + std::to_string(p) + ",2)", theorem4_pair(p, 2));
    }
    return out;
  }

  Outcome criterion5() {
    Check        c;
    SuiteOptions opt;
    opt.relation_shifts = 10;
    std::size_t checks  = 0;
    for (auto const& [tag, pair] : built_representations()) {
      RepContext ctx(pair);
      auto       r = run_relations(ctx, opt);
      c.expect(r.passed, "relation failure in " + tag + ": " + r.report.dump());
      checks += r.report["checks"].size();
    }
    if (c.out.ok) {
      c.out.detail = std::to_string(checks) + " relation checks over "
                     + std::to_string(built_representations().size()) + " representations";
    }
    return c.out;
  }

  Outcome criterion6() {
    Check c;
    Ring  r3(3, 1);
    std::vector<std::pair<std::string, SimilarityPair>> pairs{
        {"degree-p theorem3(5,2)", theorem3_pair(5, 2)},
        {"degree-p theorem2(3,2,x^2+x)", theorem2_pair(3, 2, parse_poly(r3, "x^2 + x"))},
        {"augmentation theorem4(2,2)", theorem4_pair(2, 2)},
        {"augmentation theorem4(3,3)", theorem4_pair(3, 3)}};
    for (auto const& [tag, pair] : pairs) {
      auto r = check_skew_condition(pair, 1000, 0);
      c.expect(r.trials == 1000 && r.passed(),
               std::to_string(r.failures.size()) + " skew failures for " + tag);
    }
    if (c.out.ok) {
      c.out.detail = "1000 trials each for 4 pairs (both mu kinds)";
    }
    return c.out;
  }

  Outcome criterion7() {
    Check c;
    for (auto [p, d] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}}) {
      auto            pair = theorem4_pair(p, d);
      std::mt19937_64 rng(0);
      std::size_t     bad = 0;
      for (int k = 0; k < 1000; ++k) {
        auto f = random_ideal_element(pair.ring(), pair.a0(), rng);
        bad += mu_apply(pair, f) == mu_apply_via_decomposition(pair, f) ? 0 : 1;
      }
      c.expect(bad == 0, std::to_string(bad) + " disagreements for (p,d)=(" + std::to_string(p) + ","
                             + std::to_string(d) + ")");
    }
    if (c.out.ok) {
      c.out.detail = "1000 elements each for (2,2), (3,2), (2,3)";
    }
    return c.out;
  }

  Outcome criterion8() {
    Check      c;
    RepContext ctx(theorem4_pair(2, 2));
    auto       r = kernel_scan(ctx, 6);
    c.expect(r.witnesses.empty(), std::to_string(r.witnesses.size()) + " kernel witnesses");
    c.expect(r.unknown.empty(), std::to_string(r.unknown.size()) + " unknown verdicts");

    Ring       ring(2, 1);
    RepContext broken(degree_p_pair(2, 1, parse_poly(ring, "x + 1"), 1));
    auto       bad = kernel_scan(broken, 6);
    c.expect(!bad.witnesses.empty(), "sabotaged mu produced no witness");
    if (c.out.ok) {
      c.out.detail = std::to_string(r.distinct_elements) + " distinct nontrivial elements from "
                     + std::to_string(r.words) + " words, 0 witnesses; sabotaged witness "
                     + bad.witnesses.front().word;
    }
    return c.out;
  }

  Outcome criterion9() {
    Check      c;
    RepContext ctx(theorem4_pair(2, 2));
    auto       r = verify_g22_identities(ctx, {0, 1, 2});
    c.expect(r.applicable, "identities not applicable");
    c.expect(r.mismatches.empty(), std::to_string(r.mismatches.size()) + " mismatches, first: "
                                       + (r.mismatches.empty() ? "" : r.mismatches.front().generator));
    if (c.out.ok) {
      c.out.detail = std::to_string(r.checked) + " displayed recursions checked";
    }
    return c.out;
  }

  Outcome criterion10() {
    Check       c;
    std::size_t cases = 0;
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      Ring ring(p, 1);
      for (Scalar j = 1; j < p; ++j) {
        auto v = check_simplicity_degree_p(ring, 1, LaurentPoly::one(ring), j);
        c.expect(v.verdict == Simplicity::simple,
                 "theorem3 p=" + std::to_string(p) + " j=" + std::to_string(j) + " not Simple");
        auto lin = parse_poly(ring, "x") - LaurentPoly::constant(ring, j);
        auto w   = check_simplicity_degree_p(ring, 1, lin * parse_poly(ring, "x^2 + 1"), j);
        c.expect(w.verdict == Simplicity::not_simple && w.witness == "M",
                 "(x-c)|u not detected for p=" + std::to_string(p));
        cases += 2;
      }
      auto k = check_simplicity_degree_p(ring, 2 * p, LaurentPoly::one(ring), 1);
      c.expect(k.verdict == Simplicity::not_simple && k.witness == "I(x-1)^2",
               "p | n not detected for p=" + std::to_string(p));
      ++cases;
    }
    if (c.out.ok) {
      c.out.detail = std::to_string(cases) + " verdicts";
    }
    return c.out;
  }

}  // namespace

int main() {
  struct Criterion {
    int                      id;
    std::string              title;
    std::function<Outcome()> run;
    double                   budget;  // seconds
  };
  std::vector<Criterion> criteria{
      {1, "x1 states and incidence matrix in the degree-4 representation", criterion1, 1.0},
      {2, "classical lamplighter", criterion2, 1.0},
      {3, "degree-p family with u = 1, n = 1", criterion3, 0.0},
      {4, "degree-p family closed form, random samples", criterion4, 0.0},
      {5, "relations act trivially", criterion5, 10.0},
      {6, "skew condition", criterion6, 0.0},
      {7, "mu decomposition oracle", criterion7, 0.0},
      {8, "kernel scan and sabotage", criterion8, 60.0},
      {9, "powers and conjugates", criterion9, 0.0},
      {10, "simplicity verdicts", criterion10, 0.0}};

  int failures = 0;
  for (auto const& cr : criteria) {
    auto    t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (std::exception const& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double const secs = seconds_since(t0);
    if (out.ok && cr.budget > 0 && secs >= cr.budget) {
      out = {false, "over time budget"};
    }
    failures += out.ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.3f s) %s\n", out.ok ? "PASS" : "FAIL", cr.id,
                cr.title.c_str(), secs, out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
