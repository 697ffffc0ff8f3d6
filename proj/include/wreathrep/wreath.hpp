#pragma once

// Elements of G_{p,d} = A x| X with A = GF(p)[X] written additively.
//
// The pair (f, v) stands for a^f x^v. Multiplication:
//   (f1, v1) * (f2, v2) = (f1 + f2 * X^{-v1}, v1 + v2),
// so the conjugate a^{x^v} = x^{-v} a x^v is (X^v, 0).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wreathrep/laurent.hpp"

namespace wreathrep {

  class WreathElement {
   public:
    WreathElement(LaurentPoly a_part, ExponentVector x_part);

    static WreathElement identity(Ring ring);
    static WreathElement a(Ring ring);
    // x_i, 0-based index.
    static WreathElement x(Ring ring, std::size_t i);
    static WreathElement from_a_part(LaurentPoly f);
    static WreathElement from_x_part(Ring ring, ExponentVector v);

    LaurentPoly const&    a_part() const noexcept { return a_; }
    ExponentVector const& x_part() const noexcept { return x_; }
    Ring const&           ring() const noexcept { return a_.ring(); }

    bool is_identity() const noexcept { return a_.is_zero() && x_.is_zero(); }

    WreathElement operator*(WreathElement const& h) const;
    WreathElement& operator*=(WreathElement const& h) { return *this = *this * h; }
    WreathElement inverse() const;
    WreathElement pow(std::int64_t k) const;
    // g^h = h^{-1} g h.
    WreathElement conjugated_by(WreathElement const& h) const;

    bool operator==(WreathElement const&) const = default;

    std::size_t hash() const noexcept;

   private:
    LaurentPoly    a_;
    ExponentVector x_;
  };

  struct WreathElementHash {
    std::size_t operator()(WreathElement const& g) const noexcept { return g.hash(); }
  };

  WreathElement wreath_mul(WreathElement const& g, WreathElement const& h);
  WreathElement commutator(WreathElement const& g, WreathElement const& h);

  // f * X^v: the exponent of the conjugate (a^f)^{x^v}.
  LaurentPoly conjugate_by_x(LaurentPoly const& f, ExponentVector const& v);

  // "(poly ; v1,...,vd)".
  std::string   to_string(WreathElement const& g);
  WreathElement parse_element(Ring ring, std::string_view text);

  // Exponent-calculus name, e.g. "a^{x2^{-1}+x1^{-1}x2^{-1}}x1", "x2", "e".
  std::string   element_name(WreathElement const& g);
  WreathElement parse_element_name(Ring ring, std::string_view text);

  ////////////////////////////////////////////////////////////////////////
  // Generator words
  ////////////////////////////////////////////////////////////////////////

  struct Letter {
    enum class Kind : std::uint8_t { a, x };
    Kind        kind  = Kind::a;
    std::size_t index = 0;  // 0-based variable index for Kind::x
    bool        inverse = false;

    bool   operator==(Letter const&) const = default;
    Letter inverted() const { return Letter{kind, index, !inverse}; }
  };

  class GeneratorWord {
   public:
    GeneratorWord() = default;
    explicit GeneratorWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    // All 2 + 2d letters of a rank-d context: a, A, x1, X1, ...
    static std::vector<Letter> alphabet(std::size_t rank);

    std::vector<Letter> const& letters() const noexcept { return letters_; }
    std::size_t                size() const noexcept { return letters_.size(); }
    bool                       empty() const noexcept { return letters_.empty(); }
    bool                       is_freely_reduced() const;
    GeneratorWord              freely_reduced() const;

    bool operator==(GeneratorWord const&) const = default;

   private:
    std::vector<Letter> letters_;
  };

  // Letters "a", "A", "x1", "X1", ... joined by '*'; "" or "e" is empty.
  GeneratorWord parse_word(std::string_view text, std::size_t rank);
  std::string   to_string(GeneratorWord const& w);
  WreathElement eval_word(Ring ring, GeneratorWord const& w);

  ////////////////////////////////////////////////////////////////////////
  // Permutations of {0, ..., m-1}
  ////////////////////////////////////////////////////////////////////////

  // Composition is left to right: (g * h)(i) = h(g(i)).
  class Permutation {
   public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> images);

    static Permutation identity(std::size_t m);
    // Product of disjoint cycles, e.g. "(0,1)(2,3)".
    static Permutation from_cycles(std::size_t m, std::string_view cycles);

    std::size_t size() const noexcept { return images_.size(); }
    std::uint32_t operator()(std::uint32_t i) const { return images_.at(i); }
    std::vector<std::uint32_t> const& images() const noexcept { return images_; }
    bool is_identity() const noexcept;

    Permutation operator*(Permutation const& h) const;
    Permutation inverse() const;

    std::string cycles() const;

    bool operator==(Permutation const&) const = default;

   private:
    std::vector<std::uint32_t> images_;
  };

}  // namespace wreathrep

template <>
struct std::hash<wreathrep::WreathElement> {
  std::size_t operator()(wreathrep::WreathElement const& g) const noexcept {
    return g.hash();
  }
};
