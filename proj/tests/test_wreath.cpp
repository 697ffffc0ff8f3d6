#include <doctest.h>

#include <random>
#include <set>

#include "wreathrep/lattice.hpp"
#include "wreathrep/wreath.hpp"

using namespace wreathrep;

namespace {

  WreathElement random_element(Ring ring, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> exp(-3, 3);
    std::uniform_int_distribution<std::int64_t> coeff(0, ring.p() - 1);
    std::vector<Term>                           terms;
    for (int k = 0; k < 4; ++k) {
      ExponentVector e(ring.rank());
      for (std::size_t i = 0; i < ring.rank(); ++i) {
        e[i] = exp(rng);
      }
      terms.push_back({e, static_cast<Scalar>(coeff(rng))});
    }
    ExponentVector v(ring.rank());
    for (std::size_t i = 0; i < ring.rank(); ++i) {
      v[i] = exp(rng);
    }
    return {LaurentPoly(ring, terms), v};
  }

  // Membership by bounded search over integer combinations of the basis.
  bool brute_member(IntMatrix const& basis, ExponentVector const& v, std::int64_t bound) {
    auto const d = basis.rows();
    std::vector<std::int64_t> c(d, -bound);
    while (true) {
      bool hit = true;
      for (std::size_t j = 0; j < d && hit; ++j) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < d; ++i) {
          s += c[i] * basis(i, j);
        }
        hit = s == v[j];
      }
      if (hit) {
        return true;
      }
      std::size_t k = 0;
      while (k < d && c[k] == bound) {
        c[k++] = -bound;
      }
      if (k == d) {
        return false;
      }
      ++c[k];
    }
  }

}  // namespace

TEST_CASE("multiplication convention") {
  Ring ring(2, 1);
  auto a  = WreathElement::a(ring);
  auto x  = WreathElement::x(ring, 0);
  auto ax = a.conjugated_by(x);
  CHECK(ax == WreathElement(parse_poly(ring, "x"), ExponentVector{0}));
  CHECK((ax * a).a_part() == parse_poly(ring, "x + 1"));
  CHECK((ax * a).x_part().is_zero());
  std::mt19937_64 rng(1);
  auto            g = random_element(ring, rng);
  CHECK(g * WreathElement::identity(ring) == g);
  CHECK((g * g.inverse()).is_identity());
}

TEST_CASE("inverse formula") {
  std::mt19937_64 rng(2);
  Ring            ring(3, 2);
  for (int k = 0; k < 100; ++k) {
    auto g = random_element(ring, rng);
    WreathElement expected(-conjugate_by_x(g.a_part(), g.x_part()), -g.x_part());
    CHECK(g.inverse() == expected);
  }
}

TEST_CASE("group axioms") {
  std::mt19937_64 rng(3);
  for (auto [p, d] : {std::pair{2u, 1u}, {3u, 2u}, {5u, 3u}}) {
    Ring ring(p, d);
    auto e = WreathElement::identity(ring);
    for (int k = 0; k < 200; ++k) {
      auto f = random_element(ring, rng);
      auto g = random_element(ring, rng);
      auto h = random_element(ring, rng);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * e == f);
      CHECK(e * f == f);
      CHECK((f * f.inverse()).is_identity());
      CHECK((f.inverse() * f).is_identity());
      CHECK(f.pow(3) == f * f * f);
      CHECK(f.pow(-2) == (f * f).inverse());
    }
  }
}

TEST_CASE("base group is abelian and self-centralizing") {
  std::mt19937_64 rng(4);
  Ring            ring(3, 2);
  for (int k = 0; k < 100; ++k) {
    auto f = WreathElement::from_a_part(random_element(ring, rng).a_part());
    auto g = WreathElement::from_a_part(random_element(ring, rng).a_part());
    CHECK(f * g == g * f);
    ExponentVector v{static_cast<std::int64_t>(rng() % 5) - 2, static_cast<std::int64_t>(rng() % 5) - 2};
    if (!v.is_zero()) {
      auto one = LaurentPoly::one(ring);
      CHECK(conjugate_by_x(one, v) != one);
    }
  }
}

TEST_CASE("conjugate_by_x") {
  Ring ring(2, 1);
  auto one = LaurentPoly::one(ring);
  CHECK(conjugate_by_x(one, ExponentVector{0}) == one);
  CHECK(conjugate_by_x(one, ExponentVector{-1}) == parse_poly(ring, "x^-1"));
  // Cofactors of x1 against the transversal x1^i a^j.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Ring r(p, 2);
    auto x1 = WreathElement::x(r, 0);
    for (std::int64_t i = 0; i + 1 < p; ++i) {
      for (std::int64_t j = 0; j < p; ++j) {
        auto t   = x1.pow(i) * WreathElement::a(r).pow(j);
        auto t2  = x1.pow(i + 1) * WreathElement::a(r).pow(j);
        auto cof = t * x1 * t2.inverse();
        auto exp = LaurentPoly::monomial(r, {-i, 0}, j)
                   * (LaurentPoly::one(r) - LaurentPoly::monomial(r, {-1, 0}));
        CHECK(cof.x_part().is_zero());
        CHECK(cof.a_part() == exp);
      }
    }
  }
}

TEST_CASE("eval_word") {
  Ring ring(3, 2);
  CHECK(eval_word(ring, GeneratorWord{}).is_identity());
  CHECK(eval_word(ring, parse_word("a*a*a", 2)).is_identity());
  CHECK(eval_word(ring, parse_word("X1*X2*x1*x2", 2)).is_identity());
  CHECK(eval_word(ring, parse_word("X1*a*x1", 2)) == WreathElement::a(ring).conjugated_by(WreathElement::x(ring, 0)));
  CHECK(eval_word(ring, parse_word("e", 2)).is_identity());
  CHECK_THROWS_AS(parse_word("a*x3", 2), ParseError);
  auto w = parse_word("a*A*x1*X2*x2", 2);
  CHECK_FALSE(w.is_freely_reduced());
  CHECK(to_string(w.freely_reduced()) == "x1");
  CHECK(GeneratorWord::alphabet(2).size() == 6);
}

TEST_CASE("element text forms") {
  std::mt19937_64 rng(5);
  Ring            ring(2, 2);
  for (int k = 0; k < 100; ++k) {
    auto g = random_element(ring, rng);
    CHECK(parse_element(ring, to_string(g)) == g);
    CHECK(parse_element_name(ring, element_name(g)) == g);
  }
  CHECK(element_name(WreathElement::identity(ring)) == "e");
  auto g = parse_element_name(ring, "a^{x1^{-1}x2^{-1}+x2^{-1}}x2^{3}");
  CHECK(g.a_part() == parse_poly(ring, "x1^-1*x2^-1 + x2^-1"));
  CHECK(g.x_part() == ExponentVector{0, 3});
  CHECK(parse_element_name(ring, "x1") == WreathElement::x(ring, 0));
  CHECK(parse_element_name(ring, "a") == WreathElement::a(ring));
  CHECK_THROWS_AS(parse_element_name(ring, "a^{x3}"), ParseError);
}

TEST_CASE("lattice membership") {
  Lattice full = Lattice::full(2);
  CHECK(lattice_membership(full, ExponentVector{0, 0}));
  for (std::int64_t p : {2, 3}) {
    Lattice y(IntMatrix{{p, 0}, {0, 1}});
    CHECK_FALSE(lattice_membership(y, ExponentVector{1, 0}));
    CHECK(lattice_membership(y, ExponentVector{p, 5}));
    CHECK(y.index() == p);
  }
  CHECK_THROWS(Lattice(IntMatrix{{1, 2}, {2, 4}}));
}

TEST_CASE("lattice membership agrees with brute force") {
  std::mt19937_64                             rng(6);
  std::uniform_int_distribution<std::int64_t> entry(-3, 3);
  std::uniform_int_distribution<std::int64_t> coord(-6, 6);
  int                                         tested = 0;
  while (tested < 60) {
    IntMatrix b(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        b(i, j) = entry(rng);
      }
    }
    if (b.determinant() == 0) {
      continue;
    }
    ++tested;
    Lattice y(b);
    CHECK(static_cast<std::int64_t>(y.transversal().size()) == std::abs(b.determinant()));
    for (int k = 0; k < 20; ++k) {
      ExponentVector v{coord(rng), coord(rng)};
      bool const     member = y.contains(v);
      // With |entries| <= 3 and |v| <= 6 coefficients stay within 60 when a solution exists.
      CHECK(member == brute_member(b, v, 60));
      if (member) {
        CHECK(y.combine(*y.coordinates(v)) == v);
      }
      auto r = y.reduce(v);
      CHECK(y.contains(v - r));
    }
  }
}

TEST_CASE("lattice transversal") {
  CHECK(lattice_transversal(Lattice::full(3)) == std::vector<ExponentVector>{ExponentVector{0, 0, 0}});
  auto t = lattice_transversal(Lattice(IntMatrix{{3}}));
  CHECK(t == std::vector<ExponentVector>{{0}, {1}, {2}});
  auto t2 = lattice_transversal(Lattice(IntMatrix{{2, 0}, {0, 1}}));
  CHECK(t2 == std::vector<ExponentVector>{{0, 0}, {1, 0}});
  Lattice y(IntMatrix{{2, 1}, {-1, 3}});
  auto    reps = y.transversal();
  CHECK(reps.size() == 7);
  CHECK(reps.front().is_zero());
  std::set<ExponentVector> classes;
  for (auto const& r : reps) {
    classes.insert(y.reduce(r));
  }
  CHECK(classes.size() == 7);
}

TEST_CASE("permutations compose left to right") {
  auto g = Permutation::from_cycles(4, "(0,1)(2,3)");
  auto h = Permutation::from_cycles(4, "(0,2)(1,3)");
  CHECK((g * h)(0) == 3);
  CHECK((g * g).is_identity());
  CHECK(g.cycles() == "(0,1)(2,3)");
  CHECK(Permutation::from_cycles(3, "()").is_identity());
  CHECK((h * h.inverse()).is_identity());
  CHECK_THROWS(Permutation(std::vector<std::uint32_t>{0, 0}));
}
