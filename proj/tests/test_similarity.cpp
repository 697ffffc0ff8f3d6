#include <doctest.h>

#include <random>

#include "wreathrep/constructions.hpp"
#include "wreathrep/similarity.hpp"

using namespace wreathrep;

namespace {

  LaurentPoly P(Ring ring, char const* text) { return parse_poly(ring, text); }

  // Commutator form of the deformation condition, evaluated in the group:
  // [y_i, w_j] in [y_j, w_i] A0 with w_i = a^{v_i} conjugated by y_i.
  bool commutator_condition(Ring ring, IdealSpec const& a0, Lattice const& y,
                            std::vector<LaurentPoly> const& v) {
    auto const d = ring.rank();
    std::vector<WreathElement> ys, ws;
    for (std::size_t i = 0; i < d; ++i) {
      ExponentVector e(y.basis().row(i));
      ys.push_back(WreathElement::from_x_part(ring, e));
      ws.push_back(WreathElement::from_a_part(v[i]).conjugated_by(ys.back()));
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        auto lhs = commutator(ys[i], ws[j]);
        auto rhs = commutator(ys[j], ws[i]);
        auto q   = rhs.inverse() * lhs;
        if (!q.x_part().is_zero() || !ideal_contains(a0, q.a_part())) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("ideal membership") {
  Ring r(2, 1);
  auto eval1 = IdealSpec::augmentation(1);
  CHECK(ideal_contains(eval1, LaurentPoly::zero(r)));
  CHECK(ideal_contains(eval1, P(r, "x - 1")));
  CHECK_FALSE(ideal_contains(eval1, P(r, "x")));
  CHECK(ideal_contains(IdealSpec::exponent_reduction(2), P(r, "x^3 + x")));
  CHECK_FALSE(ideal_contains(IdealSpec::exponent_reduction(2), P(r, "x^2 + x")));
  Ring r3(3, 2);
  CHECK(IdealSpec::exponent_reduction(2).index(r3) == 81);
  CHECK(IdealSpec::evaluation({2, 1}).index(r3) == 3);
  CHECK_THROWS(IdealSpec::evaluation({0, 1}).validate(r3));
}

TEST_CASE("ideal residues form a transversal") {
  std::mt19937_64 rng(1);
  Ring            ring(3, 1);
  for (auto const& spec : {IdealSpec::evaluation({2}), IdealSpec::exponent_reduction(2)}) {
    auto reps = spec.transversal(ring, 100);
    CHECK(reps.size() == spec.index(ring));
    CHECK(reps.front().is_zero());
    for (int k = 0; k < 100; ++k) {
      auto f = random_poly(ring, rng);
      auto r = spec.residue(f);
      CHECK(ideal_contains(spec, f - r));
      CHECK(reps[spec.residue_index(f)] == r);
    }
  }
}

TEST_CASE("mu: augmentation closed form examples") {
  auto pair = theorem4_pair(2, 2);
  Ring r(2, 2);
  CHECK(mu_apply(pair, LaurentPoly::zero(r)).is_zero());
  CHECK(mu_apply(pair, P(r, "x1^3 - 1")) == P(r, "x2"));
  for (int k = -3; k <= 3; ++k) {
    CHECK(mu_apply(pair, LaurentPoly::monomial(r, {0, k}) - LaurentPoly::one(r)).is_zero());
  }
  CHECK(mu_apply(pair, P(r, "x1^2 * (x1 - 1)")) == P(r, "x2"));
  CHECK(mu_apply(pair, P(r, "(x2 - 1) * (x1 - 1)")) == P(r, "x1 - 1"));
  CHECK(mu_apply(pair, P(r, "x2 * (x1 - 1)")) == P(r, "x1"));
  CHECK_THROWS_AS(mu_apply(pair, P(r, "x1")), std::domain_error);
}

TEST_CASE("mu: degree-p examples") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t j = 1; j < p; ++j) {
      auto pair = theorem3_pair(p, j);
      Ring r(p, 1);
      auto lin = P(r, "x") - LaurentPoly::constant(r, j);
      auto rr  = P(r, "x^2 + 2*x^-1 + 1");
      CHECK(mu_apply(pair, rr * lin) == rr);
    }
  }
  Ring r(3, 1);
  auto u    = P(r, "x + x^2");
  auto pair = theorem2_pair(3, 2, u);
  auto lin  = P(r, "x - 1");
  CHECK(mu_apply(pair, P(r, "x") * lin) == P(r, "x^2") * u);
}

TEST_CASE("mu is additive and satisfies the skew condition") {
  std::vector<SimilarityPair> pairs{theorem4_pair(2, 2), theorem4_pair(3, 2), theorem4_pair(2, 3),
                                    theorem3_pair(5, 3), classical_lamplighter(),
                                    theorem2_pair(3, 4, parse_poly(Ring(3, 1), "x^2 + 1"))};
  for (auto const& pair : pairs) {
    auto report = check_skew_condition(pair, 300, 7);
    CHECK(report.trials == 300);
    CHECK(report.passed());
    std::mt19937_64 rng(8);
    for (int k = 0; k < 100; ++k) {
      auto f = random_ideal_element(pair.ring(), pair.a0(), rng);
      auto g = random_ideal_element(pair.ring(), pair.a0(), rng);
      CHECK(mu_apply(pair, f + g) == mu_apply(pair, f) + mu_apply(pair, g));
    }
  }
}

TEST_CASE("alpha must agree with the mu kind") {
  Ring ring(3, 1);
  CHECK_THROWS(SimilarityPair(ring, IdealSpec::augmentation(1), Lattice::full(1), {},
                              VirtualEndo(IntMatrix{{2}}, DegreeP{1, LaurentPoly::one(ring), 1})));
}

TEST_CASE("decomposition oracle agrees with mu") {
  for (auto [p, d] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}}) {
    auto            pair = theorem4_pair(p, d);
    std::mt19937_64 rng(9);
    for (int k = 0; k < 300; ++k) {
      auto f   = random_ideal_element(pair.ring(), pair.a0(), rng);
      auto dec = decompose_augmentation(pair.ring(), f);
      CHECK(dec.reassemble(pair.ring()) == f);
      CHECK(mu_apply_via_decomposition(pair, f) == mu_apply(pair, f));
    }
    CHECK(mu_apply_via_decomposition(pair, LaurentPoly::zero(pair.ring())).is_zero());
  }
}

TEST_CASE("pair invariants") {
  auto pair = theorem4_pair(2, 2);
  CHECK(pair.index() == 4);
  CHECK(theorem4_pair(3, 3).index() == 9);
  CHECK(classical_lamplighter().index() == 2);
  CHECK_THROWS(theorem4_pair(2, 1));
  CHECK_THROWS(theorem3_pair(3, 3));
  CHECK_THROWS(theorem3_pair(3, 0));
  CHECK_THROWS(theorem2_pair(2, 2, LaurentPoly::one(Ring(2, 1))));
  CHECK_THROWS(theorem2_pair(3, 1, parse_poly(Ring(3, 1), "x - 1")));
  CHECK_THROWS(degree_p_pair(4, 1, LaurentPoly::one(Ring(2, 1)), 1));
  // alpha must be injective.
  Ring r(2, 1);
  CHECK_THROWS(SimilarityPair(r, IdealSpec::augmentation(1), Lattice::full(1), {},
                              VirtualEndo(IntMatrix{{0}}, DegreeP{0, LaurentPoly::one(r), 1})));
  // Deformation values must lie outside A0.
  CHECK_THROWS(SimilarityPair(r, IdealSpec::augmentation(1), Lattice::full(1), {P(r, "x + 1")},
                              VirtualEndo(IntMatrix{{1}}, DegreeP{1, LaurentPoly::one(r), 1})));
}

TEST_CASE("alpha on the lattice") {
  auto pair = theorem4_pair(2, 3);
  CHECK(pair.alpha(ExponentVector{2, 0, 0}) == ExponentVector{0, 1, 0});
  CHECK(pair.alpha(ExponentVector{0, 1, 0}) == ExponentVector{0, 0, 1});
  CHECK(pair.alpha(ExponentVector{0, 0, 1}) == ExponentVector{1, 0, 0});
  CHECK_THROWS_AS(pair.alpha(ExponentVector{1, 0, 0}), std::domain_error);
}

TEST_CASE("replace_pair") {
  auto plain = classical_lamplighter();
  CHECK(replace_pair(plain) == plain);
  Ring ring(2, 1);
  SimilarityPair deformed(ring, IdealSpec::augmentation(1), Lattice::full(1),
                          {LaurentPoly::one(ring)}, plain.endo());
  CHECK(deformed.has_deformation());
  auto replaced = replace_pair(deformed);
  CHECK_FALSE(replaced.has_deformation());
  CHECK(replaced.endo() == deformed.endo());
  CHECK(replaced.index() == deformed.index());
  CHECK(replace_pair(replaced) == replaced);
}

TEST_CASE("twist_pair") {
  auto      pair = theorem4_pair(2, 2);
  IntMatrix swap{{0, 1}, {1, 0}};
  CHECK(twist_pair(pair, IntMatrix::identity(2)) == pair);
  auto t = twist_pair(pair, swap);
  CHECK(t.y().same_subgroup(Lattice(IntMatrix{{0, 2}, {1, 0}})));
  CHECK(t.index() == pair.index());
  CHECK(t.endo().is_twisted());
  CHECK(check_skew_condition(t, 200, 1).passed());
  CHECK_THROWS(twist_pair(pair, IntMatrix{{2, 0}, {0, 1}}));

  IntMatrix g1{{1, 1}, {0, 1}};
  IntMatrix g2{{1, 0}, {-2, 1}};
  auto      lhs = twist_pair(twist_pair(pair, g1), g2);
  auto      rhs = twist_pair(pair, g1 * g2);
  CHECK(lhs.y().same_subgroup(rhs.y()));
  CHECK(lhs.endo() == rhs.endo());
  CHECK(check_skew_condition(lhs, 200, 2).passed());

  // Round trip through the inverse.
  auto back = twist_pair(twist_pair(pair, g1), g1.unimodular_inverse());
  CHECK(back.y().same_subgroup(pair.y()));
  CHECK(back.endo().alpha_matrix() == pair.endo().alpha_matrix());
  CHECK_FALSE(back.endo().is_twisted());

  // Rank one: the evaluation point moves through the twist.
  auto t3 = theorem3_pair(5, 2);
  auto tw = twist_pair(t3, IntMatrix{{-1}});
  CHECK(tw.a0() == IdealSpec::evaluation({3}));
  CHECK(check_skew_condition(tw, 200, 3).passed());
}

TEST_CASE("simplicity verdicts") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    Ring ring(p, 1);
    for (Scalar j = 1; j < p; ++j) {
      CHECK(check_simplicity_degree_p(ring, 1, LaurentPoly::one(ring), j).verdict
            == Simplicity::simple);
      auto u = P(ring, "x + 1") * (P(ring, "x") - LaurentPoly::constant(ring, j));
      auto v = check_simplicity_degree_p(ring, 1, u, j);
      CHECK(v.verdict == Simplicity::not_simple);
      CHECK(v.witness == "M");
      CHECK(v.witness_generator == P(ring, "x") - LaurentPoly::constant(ring, j));
    }
    for (std::int64_t n : {1, 2, 4, 5}) {
      if (n % p != 0) {
        CHECK(check_simplicity_degree_p(ring, n, LaurentPoly::one(ring), 1).verdict
              == Simplicity::simple);
      }
    }
    for (std::int64_t nprime : {1, 2, 3}) {
      auto v = check_simplicity_degree_p(ring, p * nprime, LaurentPoly::one(ring), 1);
      CHECK(v.verdict == Simplicity::not_simple);
      CHECK(v.witness == "I(x-1)^2");
      CHECK(v.witness_generator == P(ring, "(x - 1)^3"));
    }
  }
  Ring r5(5, 1);
  // u vanishes at c^n = 4 but not at c = 2.
  auto v = check_simplicity_degree_p(r5, 2, P(r5, "x - 4"), 2);
  CHECK(v.verdict == Simplicity::not_simple);
  CHECK(v.witness == "M u(x)");
  CHECK(v.witness_generator == P(r5, "(x - 2) * (x - 4)"));
  // c = 2 has order 4, n = 2: the orbit 2 -> 4 -> 1 leaves c, no rule applies.
  CHECK(check_simplicity_degree_p(r5, 2, LaurentPoly::one(r5), 2).verdict
        == Simplicity::inconclusive);
  CHECK_THROWS(check_simplicity_degree_p(r5, 1, LaurentPoly::zero(r5), 1));
  CHECK(to_string(Simplicity::not_simple) == "NotSimple");
}

TEST_CASE("simplicity witness generators are mu-invariant") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Ring ring(p, 1);
    for (Scalar c = 1; c < p; ++c) {
      for (std::int64_t n : {1, 2, 3, 5, 6, 10}) {
        auto u = P(ring, "x^2 + 1");
        if (evaluate(u, {c}) == 0) {
          continue;
        }
        auto v = check_simplicity_degree_p(ring, n, u, c);
        if (v.verdict != Simplicity::not_simple || !v.witness_generator) {
          continue;
        }
        auto pair = degree_p_pair(p, n, u, c);
        auto g    = *v.witness_generator;
        CHECK(ideal_contains(pair.a0(), g));
        // mu(x^k g) must stay in the principal ideal (g).
        for (std::int64_t k = -2; k <= 2; ++k) {
          auto shifted = g.shifted(ExponentVector{k});
          CHECK(univariate_divides(g, mu_apply(pair, shifted)));
        }
      }
    }
  }
}

TEST_CASE("deformation enumeration") {
  Ring r3(3, 1);
  auto one_d = enumerate_deformations(r3, IdealSpec::augmentation(1), Lattice::full(1));
  CHECK(one_d.size() == 3);
  CHECK(one_d.front().front().is_zero());

  Ring r2(2, 2);
  Lattice y(IntMatrix{{2, 0}, {0, 1}});
  auto    found = enumerate_deformations(r2, IdealSpec::augmentation(2), y);
  REQUIRE_FALSE(found.empty());
  CHECK(found.front()[0].is_zero());
  CHECK(found.front()[1].is_zero());
  // Exhaustive cross-check against the commutator form.
  auto const reps = IdealSpec::augmentation(2).transversal(r2, 16);
  std::size_t expected = 0;
  for (auto const& v1 : reps) {
    for (auto const& v2 : reps) {
      expected += commutator_condition(r2, IdealSpec::augmentation(2), y, {v1, v2}) ? 1 : 0;
    }
  }
  CHECK(found.size() == expected);
  for (auto const& v : found) {
    CHECK(commutator_condition(r2, IdealSpec::augmentation(2), y, v));
  }
  CHECK_THROWS(enumerate_deformations(r3, IdealSpec::exponent_reduction(3), Lattice::full(1), 10));
}

TEST_CASE("invariant ideal witness") {
  Ring ring(3, 1);
  auto u         = P(ring, "x^2 - 1");  // divisible by x - 1
  auto sabotaged = degree_p_pair(3, 1, u, 1);
  CHECK_FALSE(invariant_ideal_witness(sabotaged, {LaurentPoly::zero(ring)}).has_value());
  auto w = invariant_ideal_witness(sabotaged, {P(ring, "x - 1")});
  REQUIRE(w.has_value());
  CHECK(w->seed == P(ring, "x - 1"));
  for (auto const& g : w->generators) {
    CHECK(ideal_contains(sabotaged.a0(), g));
  }

  CHECK_FALSE(invariant_ideal_witness(theorem3_pair(3, 2), {P(ring, "x - 2")}).has_value());

  auto            t4 = theorem4_pair(2, 2);
  std::mt19937_64 rng(11);
  std::vector<LaurentPoly> seeds;
  for (int k = 0; k < 5; ++k) {
    seeds.push_back(random_ideal_element(t4.ring(), t4.a0(), rng));
  }
  CHECK_FALSE(invariant_ideal_witness(t4, seeds, 2000).has_value());
}

TEST_CASE("pair JSON round trip") {
  std::vector<SimilarityPair> pairs{theorem4_pair(2, 2), theorem3_pair(5, 4),
                                    twist_pair(theorem4_pair(3, 2), IntMatrix{{1, 1}, {0, 1}}),
                                    theorem2_pair(3, 2, parse_poly(Ring(3, 1), "x + 1"))};
  for (auto const& pair : pairs) {
    CHECK(pair_from_json(pair_to_json(pair)) == pair);
  }
  auto bad = pair_to_json(theorem4_pair(2, 2));
  bad["ideal"]["kind"] = "nope";
  CHECK_THROWS_AS(pair_from_json(bad), std::invalid_argument);
  auto bad_poly = pair_to_json(theorem3_pair(3, 1));
  bad_poly["mu"]["u"] = "x +";
  CHECK_THROWS_AS(pair_from_json(bad_poly), std::invalid_argument);
}
