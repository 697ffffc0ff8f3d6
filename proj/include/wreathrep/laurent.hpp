#pragma once

// Exact arithmetic in the group algebra GF(p)[x1^{+-1}, ..., xd^{+-1}].
//
// A LaurentPoly doubles as an element of the base group A of C_p wr Z^d in
// additive notation: the polynomial f stands for the product of conjugates
// a^{c_e X^e} over its terms.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wreathrep/int_matrix.hpp"

namespace wreathrep {

  using Scalar = std::uint32_t;

  // GF(p) together with the rank d of the free abelian group of exponents.
  class Ring {
   public:
    Ring(std::uint32_t p, std::size_t rank);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t   rank() const noexcept { return rank_; }

    Scalar reduce(std::int64_t v) const noexcept;
    Scalar add(Scalar a, Scalar b) const noexcept { return (a + b) % p_; }
    Scalar sub(Scalar a, Scalar b) const noexcept { return (a + p_ - b) % p_; }
    Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const noexcept {
      return static_cast<Scalar>((std::uint64_t{a} * b) % p_);
    }
    Scalar inv(Scalar a) const;
    Scalar pow(Scalar base, std::int64_t exponent) const;

    // Multiplicative order of a nonzero scalar.
    std::uint32_t order(Scalar a) const;

    bool operator==(Ring const&) const = default;

   private:
    std::uint32_t p_;
    std::size_t   rank_;
  };

  bool is_prime(std::uint32_t n) noexcept;

  class ExponentVector {
   public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t rank) : e_(rank, 0) {}
    ExponentVector(std::initializer_list<std::int64_t> e) : e_(e) {}
    explicit ExponentVector(std::vector<std::int64_t> e) : e_(std::move(e)) {}

    static ExponentVector unit(std::size_t rank, std::size_t i);

    std::size_t  size() const noexcept { return e_.size(); }
    std::int64_t operator[](std::size_t i) const { return e_[i]; }
    std::int64_t& operator[](std::size_t i) { return e_[i]; }
    auto begin() const noexcept { return e_.begin(); }
    auto end() const noexcept { return e_.end(); }
    bool is_zero() const noexcept;

    std::vector<std::int64_t> const& values() const noexcept { return e_; }

    ExponentVector operator+(ExponentVector const& o) const;
    ExponentVector operator-(ExponentVector const& o) const;
    ExponentVector operator-() const;
    ExponentVector scaled(std::int64_t k) const;

    auto operator<=>(ExponentVector const&) const = default;
    bool operator==(ExponentVector const&) const = default;

   private:
    std::vector<std::int64_t> e_;
  };

  struct ExponentVectorHash {
    std::size_t operator()(ExponentVector const& v) const noexcept;
  };

  struct Term {
    ExponentVector exps;
    Scalar         coeff;
    bool operator==(Term const&) const = default;
  };

  class LaurentPoly {
   public:
    explicit LaurentPoly(Ring ring) : ring_(ring) {}
    // Canonicalizes: merges equal exponents, drops zeros, sorts.
    LaurentPoly(Ring ring, std::vector<Term> terms);

    static LaurentPoly zero(Ring ring) { return LaurentPoly(ring); }
    static LaurentPoly constant(Ring ring, std::int64_t c);
    static LaurentPoly one(Ring ring) { return constant(ring, 1); }
    static LaurentPoly monomial(Ring ring, ExponentVector exps, std::int64_t c = 1);
    // x_i (0-based i).
    static LaurentPoly variable(Ring ring, std::size_t i);

    Ring const& ring() const noexcept { return ring_; }
    std::uint32_t p() const noexcept { return ring_.p(); }
    std::size_t rank() const noexcept { return ring_.rank(); }

    // Terms in the fixed order: exponent vectors lexicographically descending.
    std::vector<Term> const& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    Scalar coefficient(ExponentVector const& e) const;
    // Sum of coefficients (value at (1,...,1)).
    Scalar augmentation() const noexcept;

    LaurentPoly operator+(LaurentPoly const& o) const;
    LaurentPoly operator-(LaurentPoly const& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(LaurentPoly const& o) const;
    LaurentPoly scaled(std::int64_t c) const;
    LaurentPoly& operator+=(LaurentPoly const& o) { return *this = *this + o; }
    LaurentPoly& operator-=(LaurentPoly const& o) { return *this = *this - o; }
    LaurentPoly& operator*=(LaurentPoly const& o) { return *this = *this * o; }

    // Multiplication by the monomial X^v.
    LaurentPoly shifted(ExponentVector const& v) const;

    bool operator==(LaurentPoly const& o) const {
      return ring_ == o.ring_ && terms_ == o.terms_;
    }

    std::size_t hash() const noexcept;

   private:
    void check_same(LaurentPoly const& o) const;

    Ring              ring_;
    std::vector<Term> terms_;
  };

  // Raised when two operands belong to different (p, d) contexts.
  class ContextMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  // Raised by the polynomial / word / name parsers; carries the offending
  // character position.
  class ParseError : public std::invalid_argument {
   public:
    ParseError(std::string const& what, std::size_t position);
    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
  };

  LaurentPoly poly_add(LaurentPoly const& a, LaurentPoly const& b);
  LaurentPoly poly_mul(LaurentPoly const& a, LaurentPoly const& b);

  // Substitution value at a point with all coordinates nonzero.
  Scalar evaluate(LaurentPoly const& f, std::span<Scalar const> point);
  Scalar evaluate(LaurentPoly const& f, std::initializer_list<Scalar> point);

  // Rank 1 only: returns r with r * (x - c) == f; throws std::domain_error
  // when the remainder is nonzero.
  LaurentPoly divide_by_linear(LaurentPoly const& f, Scalar c);

  // Rank 1: 1 + x + ... + x^{n-1}.
  LaurentPoly geometric_sum(Ring ring, std::int64_t n);

  // Ring homomorphism x_i -> X^{row i of images}; exponent e maps to e*images.
  LaurentPoly substitute_monomials(LaurentPoly const& f, IntMatrix const& images);

  // Reduce every exponent into [0, v): the canonical residue modulo the ideal
  // generated by x_i^v - 1.
  LaurentPoly reduce_exponents(LaurentPoly const& f, std::int64_t v);

  // Rank 1 helpers for principal-ideal computations in GF(p)[x^{+-1}].
  // gcd normalized to a monic ordinary polynomial with nonzero constant term
  // (associates differ by units c*x^k).
  LaurentPoly univariate_gcd(LaurentPoly const& a, LaurentPoly const& b);
  // True iff b divides a in GF(p)[x^{+-1}].
  bool univariate_divides(LaurentPoly const& b, LaurentPoly const& a);

  // Canonical text form, e.g. "1 + x1^-1*x2^-1".
  std::string to_string(LaurentPoly const& f);
  LaurentPoly parse_poly(Ring ring, std::string_view text);

  // Monomial text, e.g. "x1^-1*x2"; the zero vector is "1".
  std::string monomial_string(ExponentVector const& e);

}  // namespace wreathrep

template <>
struct std::hash<wreathrep::LaurentPoly> {
  std::size_t operator()(wreathrep::LaurentPoly const& f) const noexcept {
    return f.hash();
  }
};
