#include "wreathrep/identities.hpp"

#include <stdexcept>

namespace wreathrep {

  namespace {

    std::string pw(char const* var, std::int64_t k) {
      return std::string(var) + "^{" + std::to_string(k) + "}";
    }

    std::string conj(std::string const& exponent) { return "a^{" + exponent + "}"; }

    void add(std::vector<IdentityCase>& out, std::string group, std::string element,
             std::vector<std::string> children, std::string perm) {
      out.push_back({std::move(group), std::move(element), std::move(children), std::move(perm)});
    }

    // Every increasing run of 1..5 as exponent sets, lengths 1 to 4.
    std::vector<std::vector<std::int64_t>> increasing_runs() {
      std::vector<std::vector<std::int64_t>> out;
      for (unsigned mask = 1; mask < 32; ++mask) {
        std::vector<std::int64_t> run;
        for (std::int64_t k = 0; k < 5; ++k) {
          if (mask & (1u << k)) {
            run.push_back(k + 1);
          }
        }
        if (run.size() <= 4) {
          out.push_back(std::move(run));
        }
      }
      return out;
    }

  }  // namespace

  std::vector<IdentityCase> g22_identities(std::vector<std::int64_t> const& ns) {
    std::vector<IdentityCase> out;
    std::string const         swap_halves = "(0,2)(1,3)";
    std::string const         swap_pairs  = "(0,1)(2,3)";
    std::string const         cross       = "(0,3)(1,2)";

    for (auto n : ns) {
      // Powers.
      auto x2n  = pw("x2", n);
      auto x2n1 = pw("x2", n + 1);
      add(out, "powers", pw("x1", 2 * n), {x2n, x2n, x2n, conj("x2^{-1}+" + pw("x2", -(n + 1))) + x2n},
          "()");
      add(out, "powers", pw("x1", 2 * n + 1),
          {x2n, conj(pw("x2", -(n + 1))) + x2n, x2n1, conj("x2^{-1}") + x2n1}, swap_halves);
      auto x1n = pw("x1", n);
      add(out, "powers", pw("x2", n),
          {x1n, x1n, x1n, conj("x2^{-1}+" + pw("x1", -n) + "x2^{-1}") + x1n}, "()");

      // Conjugates.
      auto c0 = conj(pw("x2", n - 1) + "+x2^{-1}");
      add(out, "conjugates", conj(pw("x1", 2 * n)), {"1", "1", c0, c0}, swap_pairs);
      add(out, "conjugates", conj(pw("x1", 2 * n + 1)),
          {conj(x2n), conj(x2n), "a^{x2^{-1}}", "a^{x2^{-1}}"}, swap_pairs);
      auto c1 = conj(pw("x1", n) + "x2^{-1}+x2^{-1}");
      add(out, "conjugates", conj(pw("x2", n)), {"1", "1", c1, c1}, swap_pairs);
      for (auto l : ns) {
        auto c2 = conj(pw("x1", l) + pw("x2", n - 1) + "+x2^{-1}");
        add(out, "conjugates", conj(pw("x1", 2 * n) + pw("x2", l)), {"1", "1", c2, c2}, swap_pairs);
        auto c3 = conj(pw("x1", l) + pw("x2", n));
        add(out, "conjugates", conj(pw("x1", 2 * n + 1) + pw("x2", l)),
            {c3, c3, "a^{x2^{-1}}", "a^{x2^{-1}}"}, swap_pairs);

        // States built from a^{x1^{2n} x2^m} x1 and a^{x1^{2n+1} x2^m} x1.
        auto m   = l;
        auto s0  = pw("x1", m) + pw("x2", n - 1);
        add(out, "states", conj(pw("x1", 2 * n) + pw("x2", m)) + "x1",
            {"a^{x2^{-1}}", "1", conj(s0) + "x2", conj(s0 + "+x2^{-1}") + "x2"}, cross);
        auto s1 = pw("x1", m) + pw("x2", n);
        add(out, "states", conj(pw("x1", 2 * n + 1) + pw("x2", m)) + "x1",
            {conj(s1 + "+x2^{-1}"), conj(s1), "x2", "a^{x2^{-1}}x2"}, cross);
      }
    }

    // Products of conjugates: sum over 0 < n_1 < ... of x1^{2 n_k}.
    for (auto const& run : increasing_runs()) {
      std::string exponent;
      std::string image;
      for (auto k : run) {
        exponent += (exponent.empty() ? "" : "+") + pw("x1", 2 * k);
        image += (image.empty() ? "" : "+") + pw("x2", k - 1);
      }
      bool const odd = run.size() % 2 == 1;
      auto       c   = conj(odd ? image + "+x2^{-1}" : image);
      add(out, "products", conj(exponent), {"1", "1", c, c}, odd ? swap_pairs : "()");
      if (odd) {
        auto c1 = conj("x2^{-1}+" + image);
        add(out, "products", conj("1+" + exponent), {"1", "1", c1, c1}, "()");
      }
    }

    // The nine states of x1 displayed individually.
    std::string const u = "x1^{-1}x2^{-1}";
    std::string const w = "x2^{-1}";
    add(out, "states", conj(w), {"1", "1", conj(u + "+" + w), conj(u + "+" + w)}, swap_pairs);
    add(out, "states", conj(w) + "x2", {"x1", "x1", "x1", conj(u + "+" + w) + "x1"}, swap_pairs);
    add(out, "states", conj(w + "+" + u), {conj(u), conj(u), conj(u), conj(u)}, "()");
    add(out, "states", conj(w + "+" + u) + "x1",
        {conj(u), conj(u + "+" + w), conj(u) + "x2", conj(u + "+" + w) + "x2"}, swap_halves);
    add(out, "states", conj(u), {conj(u), conj(u), conj(w), conj(w)}, swap_pairs);
    add(out, "states", conj(u) + "x2",
        {conj(u) + "x1", conj(u) + "x1", conj(u) + "x1", conj(w) + "x1"}, swap_pairs);
    add(out, "states", conj(w + "+" + u) + "x2",
        {conj(u) + "x1", conj(u) + "x1", conj(u) + "x1", conj(w) + "x1"}, "()");
    add(out, "states", conj(u) + "x1", {conj(u + "+" + w), conj(u), "x2", conj(w) + "x2"}, cross);
    add(out, "states", conj(w) + "x1",
        {conj(w), "1", conj(u) + "x2", conj(u + "+" + w) + "x2"}, cross);
    return out;
  }

  ClosedFormReport verify_g22_identities(RepContext const& ctx,
                                         std::vector<std::int64_t> const& ns) {
    ClosedFormReport report;
    auto const&      pair = ctx.pair();
    auto const&      ring = ctx.ring();
    if (ring.p() != 2 || ring.rank() != 2 || pair.has_deformation() || pair.endo().is_twisted()
        || !std::holds_alternative<AugmentationClosedForm>(pair.endo().mu_spec())
        || !pair.y().same_subgroup(Lattice(IntMatrix{{2, 0}, {0, 1}}))) {
      return report;
    }
    report.applicable = true;
    report.family     = "G_{2,2} identities";
    for (auto const& c : g22_identities(ns)) {
      auto const g = parse_element_name(ring, c.element);
      auto const d = decompose(ctx, g);
      ++report.checked;
      auto const perm = Permutation::from_cycles(4, c.perm);
      if (d.perm != perm) {
        report.mismatches.push_back({c.group + " " + c.element, 4, perm.cycles(), d.perm.cycles()});
      }
      for (std::uint32_t l = 0; l < 4; ++l) {
        auto expected = parse_element_name(ring, c.children[l]);
        if (expected != d.children[l]) {
          report.mismatches.push_back({c.group + " " + c.element, l, element_name(expected),
                                       element_name(d.children[l])});
        }
      }
    }
    return report;
  }

}  // namespace wreathrep
