#include "wreathrep/wreath.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wreathrep/checked.hpp"

namespace wreathrep {

  WreathElement::WreathElement(LaurentPoly a_part, ExponentVector x_part)
      : a_(std::move(a_part)), x_(std::move(x_part)) {
    if (x_.size() != a_.rank()) {
      throw ContextMismatch("x-part rank differs from a-part rank");
    }
  }

  WreathElement WreathElement::identity(Ring ring) {
    return {LaurentPoly::zero(ring), ExponentVector(ring.rank())};
  }

  WreathElement WreathElement::a(Ring ring) {
    return {LaurentPoly::one(ring), ExponentVector(ring.rank())};
  }

  WreathElement WreathElement::x(Ring ring, std::size_t i) {
    return {LaurentPoly::zero(ring), ExponentVector::unit(ring.rank(), i)};
  }

  WreathElement WreathElement::from_a_part(LaurentPoly f) {
    auto const rank = f.rank();
    return {std::move(f), ExponentVector(rank)};
  }

  WreathElement WreathElement::from_x_part(Ring ring, ExponentVector v) {
    return {LaurentPoly::zero(ring), std::move(v)};
  }

  WreathElement WreathElement::operator*(WreathElement const& h) const {
    if (!(ring() == h.ring())) {
      throw ContextMismatch("wreath elements over different contexts");
    }
    return {a_ + h.a_.shifted(-x_), x_ + h.x_};
  }

  WreathElement WreathElement::inverse() const {
    return {(-a_).shifted(x_), -x_};
  }

  WreathElement WreathElement::pow(std::int64_t k) const {
    WreathElement base   = k < 0 ? inverse() : *this;
    std::uint64_t n      = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1
                                 : static_cast<std::uint64_t>(k);
    WreathElement result = identity(ring());
    while (n > 0) {
      if (n & 1U) {
        result = result * base;
      }
      n >>= 1U;
      if (n > 0) {
        base = base * base;
      }
    }
    return result;
  }

  WreathElement WreathElement::conjugated_by(WreathElement const& h) const {
    return h.inverse() * *this * h;
  }

  std::size_t WreathElement::hash() const noexcept {
    return a_.hash() * 31 + ExponentVectorHash{}(x_);
  }

  WreathElement wreath_mul(WreathElement const& g, WreathElement const& h) {
    return g * h;
  }

  WreathElement commutator(WreathElement const& g, WreathElement const& h) {
    return g.inverse() * h.inverse() * g * h;
  }

  LaurentPoly conjugate_by_x(LaurentPoly const& f, ExponentVector const& v) {
    return f.shifted(v);
  }

  ////////////////////////////////////////////////////////////////////////
  // Text forms
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(WreathElement const& g) {
    std::string out = "(" + to_string(g.a_part()) + " ; ";
    for (std::size_t i = 0; i < g.x_part().size(); ++i) {
      out += (i ? "," : "") + std::to_string(g.x_part()[i]);
    }
    return out + ")";
  }

  WreathElement parse_element(Ring ring, std::string_view text) {
    auto const open  = text.find('(');
    auto const semi  = text.rfind(';');
    auto const close = text.rfind(')');
    if (open == std::string_view::npos || semi == std::string_view::npos
        || close == std::string_view::npos || !(open < semi && semi < close)) {
      throw ParseError("expected '(poly ; v1,...,vd)'", 0);
    }
    auto poly = parse_poly(ring, text.substr(open + 1, semi - open - 1));
    std::vector<std::int64_t> v;
    std::string               field;
    std::istringstream        in(std::string(text.substr(semi + 1, close - semi - 1)));
    while (std::getline(in, field, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(field, &used));
        if (field.find_first_not_of(" \t", used) != std::string::npos) {
          throw std::invalid_argument(field);
        }
      } catch (std::exception const&) {
        throw ParseError("bad exponent '" + field + "'", semi + 1);
      }
    }
    if (v.size() != ring.rank()) {
      throw ParseError("x-part has " + std::to_string(v.size()) + " entries, expected "
                           + std::to_string(ring.rank()),
                       semi + 1);
    }
    return {std::move(poly), ExponentVector(std::move(v))};
  }

  namespace {
    std::string name_monomial(ExponentVector const& e) {
      std::string out;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) {
          continue;
        }
        out += 'x' + std::to_string(i + 1);
        if (e[i] != 1) {
          out += "^{" + std::to_string(e[i]) + "}";
        }
      }
      return out;
    }
  }  // namespace

  std::string element_name(WreathElement const& g) {
    if (g.is_identity()) {
      return "e";
    }
    std::string out;
    auto const& f = g.a_part();
    if (!f.is_zero()) {
      if (f == LaurentPoly::one(f.ring())) {
        out = "a";
      } else {
        std::string exponent;
        for (auto const& t : f.terms()) {
          if (!exponent.empty()) {
            exponent += '+';
          }
          auto mono = name_monomial(t.exps);
          if (mono.empty()) {
            exponent += std::to_string(t.coeff);
          } else {
            exponent += (t.coeff == 1 ? std::string() : std::to_string(t.coeff)) + mono;
          }
        }
        out = "a^{" + exponent + "}";
      }
    }
    return out + name_monomial(g.x_part());
  }

  namespace {
    class NameParser {
     public:
      NameParser(Ring ring, std::string_view s) : ring_(ring), s_(s) {}

      WreathElement parse() {
        skip();
        if (rest() == "e" || rest() == "1") {
          return WreathElement::identity(ring_);
        }
        auto a = LaurentPoly::zero(ring_);
        if (peek() == 'a') {
          ++pos_;
          a = LaurentPoly::one(ring_);
          if (peek() == '^') {
            ++pos_;
            if (peek() == '{') {
              ++pos_;
              a = poly();
              expect('}');
            } else {
              a = term();
            }
          }
        }
        ExponentVector v(ring_.rank());
        if (peek() == 'x') {
          v = monomial();
        }
        skip();
        if (pos_ != s_.size()) {
          throw ParseError("unexpected character in element name", pos_);
        }
        return {std::move(a), std::move(v)};
      }

     private:
      std::string_view rest() const { return s_.substr(pos_); }
      void             skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
          ++pos_;
        }
      }
      char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
      }
      void expect(char c) {
        if (peek() != c) {
          throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
      }

      std::int64_t integer() {
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
          neg = s_[pos_++] == '-';
        }
        auto const   start = pos_;
        std::int64_t v     = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          v = checked_add(checked_mul(v, 10), s_[pos_++] - '0');
        }
        if (start == pos_) {
          throw ParseError("expected integer", start);
        }
        return neg ? -v : v;
      }

      ExponentVector monomial() {
        ExponentVector v(ring_.rank());
        bool           any = false;
        while (peek() == 'x') {
          auto const at = pos_++;
          std::size_t index = 0;
          if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            auto k = integer();
            if (k < 1 || static_cast<std::size_t>(k) > ring_.rank()) {
              throw ParseError("variable index out of range", at);
            }
            index = static_cast<std::size_t>(k - 1);
          } else if (ring_.rank() != 1) {
            throw ParseError("bare 'x' needs an index when rank > 1", at);
          }
          std::int64_t e = 1;
          if (peek() == '^') {
            ++pos_;
            if (peek() == '{') {
              ++pos_;
              e = integer();
              expect('}');
            } else {
              e = integer();
            }
          }
          v[index] = checked_add(v[index], e);
          any      = true;
        }
        if (!any) {
          throw ParseError("expected monomial", pos_);
        }
        return v;
      }

      LaurentPoly term() {
        std::int64_t coeff = 1;
        bool         have  = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          coeff = integer();
          have  = true;
        }
        if (peek() == 'x') {
          return LaurentPoly::monomial(ring_, monomial(), coeff);
        }
        if (!have) {
          throw ParseError("expected term", pos_);
        }
        return LaurentPoly::constant(ring_, coeff);
      }

      LaurentPoly poly() {
        bool negate = false;
        if (peek() == '-') {
          ++pos_;
          negate = true;
        }
        auto acc = term();
        if (negate) {
          acc = -acc;
        }
        while (peek() == '+' || peek() == '-') {
          bool const minus = s_[pos_++] == '-';
          auto       t     = term();
          acc              = minus ? acc - t : acc + t;
        }
        return acc;
      }

      Ring             ring_;
      std::string_view s_;
      std::size_t      pos_ = 0;
    };
  }  // namespace

  WreathElement parse_element_name(Ring ring, std::string_view text) {
    return NameParser(ring, text).parse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Words
  ////////////////////////////////////////////////////////////////////////

  std::vector<Letter> GeneratorWord::alphabet(std::size_t rank) {
    std::vector<Letter> out{{Letter::Kind::a, 0, false}, {Letter::Kind::a, 0, true}};
    for (std::size_t i = 0; i < rank; ++i) {
      out.push_back({Letter::Kind::x, i, false});
      out.push_back({Letter::Kind::x, i, true});
    }
    return out;
  }

  bool GeneratorWord::is_freely_reduced() const {
    for (std::size_t i = 1; i < letters_.size(); ++i) {
      if (letters_[i] == letters_[i - 1].inverted()) {
        return false;
      }
    }
    return true;
  }

  GeneratorWord GeneratorWord::freely_reduced() const {
    std::vector<Letter> stack;
    for (auto const& l : letters_) {
      if (!stack.empty() && stack.back() == l.inverted()) {
        stack.pop_back();
      } else {
        stack.push_back(l);
      }
    }
    return GeneratorWord(std::move(stack));
  }

  GeneratorWord parse_word(std::string_view text, std::size_t rank) {
    std::vector<Letter> letters;
    std::size_t         pos = 0;
    auto skip = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    skip();
    if (text.substr(pos) == "e" || pos == text.size()) {
      return {};
    }
    while (true) {
      skip();
      if (pos >= text.size()) {
        throw ParseError("expected letter", pos);
      }
      char const c  = text[pos];
      auto const at = pos++;
      if (c == 'a' || c == 'A') {
        letters.push_back({Letter::Kind::a, 0, c == 'A'});
      } else if (c == 'x' || c == 'X') {
        std::size_t index = 0;
        auto const  start = pos;
        std::size_t k     = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          k = k * 10 + static_cast<std::size_t>(text[pos++] - '0');
          if (k > 1000000) {
            throw ParseError("variable index too large", start);
          }
        }
        if (pos == start) {
          if (rank != 1) {
            throw ParseError("bare 'x' needs an index when rank > 1", at);
          }
        } else {
          if (k < 1 || k > rank) {
            throw ParseError("variable index out of range", at);
          }
          index = k - 1;
        }
        letters.push_back({Letter::Kind::x, index, c == 'X'});
      } else {
        throw ParseError(std::string("bad letter '") + c + "'", at);
      }
      skip();
      if (pos == text.size()) {
        break;
      }
      if (text[pos] != '*') {
        throw ParseError("expected '*'", pos);
      }
      ++pos;
    }
    return GeneratorWord(std::move(letters));
  }

  std::string to_string(GeneratorWord const& w) {
    if (w.empty()) {
      return "e";
    }
    std::string out;
    for (auto const& l : w.letters()) {
      if (!out.empty()) {
        out += '*';
      }
      if (l.kind == Letter::Kind::a) {
        out += l.inverse ? 'A' : 'a';
      } else {
        out += (l.inverse ? 'X' : 'x') + std::to_string(l.index + 1);
      }
    }
    return out;
  }

  WreathElement eval_word(Ring ring, GeneratorWord const& w) {
    auto g = WreathElement::identity(ring);
    for (auto const& l : w.letters()) {
      if (l.kind == Letter::Kind::x && l.index >= ring.rank()) {
        throw std::invalid_argument("word letter x" + std::to_string(l.index + 1)
                                    + " exceeds rank");
      }
      auto gen = l.kind == Letter::Kind::a ? WreathElement::a(ring)
                                           : WreathElement::x(ring, l.index);
      g = g * (l.inverse ? gen.inverse() : gen);
    }
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // Permutation
  ////////////////////////////////////////////////////////////////////////

  Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto i : images_) {
      if (i >= images_.size() || seen[i]) {
        throw std::invalid_argument("not a permutation");
      }
      seen[i] = true;
    }
  }

  Permutation Permutation::identity(std::size_t m) {
    std::vector<std::uint32_t> images(m);
    std::iota(images.begin(), images.end(), 0U);
    return Permutation(std::move(images));
  }

  Permutation Permutation::from_cycles(std::size_t m, std::string_view text) {
    std::vector<std::uint32_t> images(m);
    std::iota(images.begin(), images.end(), 0U);
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      if (text[pos] != '(') {
        throw ParseError("expected '('", pos);
      }
      ++pos;
      std::vector<std::uint32_t> cycle;
      while (pos < text.size() && text[pos] != ')') {
        if (text[pos] == ',' || std::isspace(static_cast<unsigned char>(text[pos]))) {
          ++pos;
          continue;
        }
        auto const    start = pos;
        std::uint32_t v     = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          v = v * 10 + static_cast<std::uint32_t>(text[pos++] - '0');
        }
        if (start == pos || v >= m) {
          throw ParseError("bad cycle entry", start);
        }
        cycle.push_back(v);
      }
      if (pos == text.size()) {
        throw ParseError("unterminated cycle", pos);
      }
      ++pos;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        images[cycle[k]] = cycle[(k + 1) % cycle.size()];
      }
    }
    return Permutation(std::move(images));
  }

  bool Permutation::is_identity() const noexcept {
    for (std::uint32_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) {
        return false;
      }
    }
    return true;
  }

  Permutation Permutation::operator*(Permutation const& h) const {
    if (h.size() != size()) {
      throw std::invalid_argument("permutations of different degree");
    }
    std::vector<std::uint32_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      out[i] = h.images_[images_[i]];
    }
    return Permutation(std::move(out));
  }

  Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> out(size());
    for (std::uint32_t i = 0; i < size(); ++i) {
      out[images_[i]] = i;
    }
    return Permutation(std::move(out));
  }

  std::string Permutation::cycles() const {
    std::string       out;
    std::vector<bool> seen(size(), false);
    for (std::uint32_t i = 0; i < size(); ++i) {
      if (seen[i] || images_[i] == i) {
        continue;
      }
      out += '(';
      for (std::uint32_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        out += (j == i ? "" : ",") + std::to_string(j);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

}  // namespace wreathrep
