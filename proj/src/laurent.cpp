#include "wreathrep/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wreathrep/checked.hpp"

namespace wreathrep {

  ////////////////////////////////////////////////////////////////////////
  // Ring
  ////////////////////////////////////////////////////////////////////////

  bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) {
      return false;
    }
    for (std::uint64_t q = 2; q * q <= n; ++q) {
      if (n % q == 0) {
        return false;
      }
    }
    return true;
  }

  Ring::Ring(std::uint32_t p, std::size_t rank) : p_(p), rank_(rank) {
    if (!is_prime(p)) {
      throw std::invalid_argument("characteristic " + std::to_string(p)
                                  + " is not prime");
    }
    if (p > 65521) {
      throw std::invalid_argument("characteristic too large");
    }
    if (rank == 0) {
      throw std::invalid_argument("rank must be at least 1");
    }
  }

  Scalar Ring::reduce(std::int64_t v) const noexcept {
    return static_cast<Scalar>(floor_mod(v, static_cast<std::int64_t>(p_)));
  }

  Scalar Ring::pow(Scalar base, std::int64_t exponent) const {
    if (exponent < 0) {
      base     = inv(base);
      exponent = -(exponent + 1);  // avoid overflow on INT64_MIN
      return mul(base, pow(base, exponent));
    }
    Scalar result = 1 % p_;
    while (exponent > 0) {
      if (exponent & 1) {
        result = mul(result, base);
      }
      base = mul(base, base);
      exponent >>= 1;
    }
    return result;
  }

  Scalar Ring::inv(Scalar a) const {
    a %= p_;
    if (a == 0) {
      throw std::domain_error("zero is not invertible in GF(p)");
    }
    return pow(a, static_cast<std::int64_t>(p_) - 2);
  }

  std::uint32_t Ring::order(Scalar a) const {
    a %= p_;
    if (a == 0) {
      throw std::domain_error("zero has no multiplicative order");
    }
    std::uint32_t k = 1;
    Scalar        t = a;
    while (t != 1) {
      t = mul(t, a);
      ++k;
    }
    return k;
  }

  ////////////////////////////////////////////////////////////////////////
  // ExponentVector
  ////////////////////////////////////////////////////////////////////////

  ExponentVector ExponentVector::unit(std::size_t rank, std::size_t i) {
    ExponentVector v(rank);
    v.e_.at(i) = 1;
    return v;
  }

  bool ExponentVector::is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](auto x) { return x == 0; });
  }

  ExponentVector ExponentVector::operator+(ExponentVector const& o) const {
    if (o.size() != size()) {
      throw ContextMismatch("exponent vectors of different rank");
    }
    ExponentVector r(size());
    for (std::size_t i = 0; i < size(); ++i) {
      r.e_[i] = checked_add(e_[i], o.e_[i]);
    }
    return r;
  }

  ExponentVector ExponentVector::operator-(ExponentVector const& o) const {
    if (o.size() != size()) {
      throw ContextMismatch("exponent vectors of different rank");
    }
    ExponentVector r(size());
    for (std::size_t i = 0; i < size(); ++i) {
      r.e_[i] = checked_sub(e_[i], o.e_[i]);
    }
    return r;
  }

  ExponentVector ExponentVector::operator-() const {
    return scaled(-1);
  }

  ExponentVector ExponentVector::scaled(std::int64_t k) const {
    ExponentVector r(size());
    for (std::size_t i = 0; i < size(); ++i) {
      r.e_[i] = checked_mul(e_[i], k);
    }
    return r;
  }

  std::size_t ExponentVectorHash::operator()(ExponentVector const& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // LaurentPoly
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool term_order(Term const& a, Term const& b) {
      return a.exps > b.exps;
    }

    // Sorts by the fixed order and merges equal exponents mod p.
    void canonicalize(Ring const& ring, std::vector<Term>& terms) {
      std::sort(terms.begin(), terms.end(), term_order);
      std::size_t out = 0;
      for (std::size_t i = 0; i < terms.size();) {
        Scalar      c = 0;
        std::size_t j = i;
        for (; j < terms.size() && terms[j].exps == terms[i].exps; ++j) {
          c = ring.add(c, terms[j].coeff % ring.p());
        }
        if (c != 0) {
          if (out != i) {
            terms[out].exps = std::move(terms[i].exps);
          }
          terms[out].coeff = c;
          ++out;
        }
        i = j;
      }
      terms.resize(out);
    }
  }  // namespace

  LaurentPoly::LaurentPoly(Ring ring, std::vector<Term> terms)
      : ring_(ring), terms_(std::move(terms)) {
    for (auto const& t : terms_) {
      if (t.exps.size() != ring_.rank()) {
        throw ContextMismatch("term rank differs from ring rank");
      }
    }
    canonicalize(ring_, terms_);
  }

  LaurentPoly LaurentPoly::constant(Ring ring, std::int64_t c) {
    return monomial(ring, ExponentVector(ring.rank()), c);
  }

  LaurentPoly LaurentPoly::monomial(Ring ring, ExponentVector exps, std::int64_t c) {
    if (exps.size() != ring.rank()) {
      throw ContextMismatch("monomial rank differs from ring rank");
    }
    LaurentPoly f(ring);
    Scalar      s = ring.reduce(c);
    if (s != 0) {
      f.terms_.push_back(Term{std::move(exps), s});
    }
    return f;
  }

  LaurentPoly LaurentPoly::variable(Ring ring, std::size_t i) {
    if (i >= ring.rank()) {
      throw std::out_of_range("variable index exceeds rank");
    }
    return monomial(ring, ExponentVector::unit(ring.rank(), i));
  }

  bool LaurentPoly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exps.is_zero());
  }

  Scalar LaurentPoly::coefficient(ExponentVector const& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{e, 0}, term_order);
    return (it != terms_.end() && it->exps == e) ? it->coeff : 0;
  }

  Scalar LaurentPoly::augmentation() const noexcept {
    Scalar s = 0;
    for (auto const& t : terms_) {
      s = ring_.add(s, t.coeff);
    }
    return s;
  }

  void LaurentPoly::check_same(LaurentPoly const& o) const {
    if (!(ring_ == o.ring_)) {
      throw ContextMismatch("polynomials over different (p, d) contexts");
    }
  }

  LaurentPoly LaurentPoly::operator+(LaurentPoly const& o) const {
    check_same(o);
    LaurentPoly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && i->exps > j->exps)) {
        r.terms_.push_back(*i++);
      } else if (i == terms_.end() || j->exps > i->exps) {
        r.terms_.push_back(*j++);
      } else {
        Scalar c = ring_.add(i->coeff, j->coeff);
        if (c != 0) {
          r.terms_.push_back(Term{i->exps, c});
        }
        ++i;
        ++j;
      }
    }
    return r;
  }

  LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(*this);
    for (auto& t : r.terms_) {
      t.coeff = ring_.neg(t.coeff);
    }
    return r;
  }

  LaurentPoly LaurentPoly::operator-(LaurentPoly const& o) const {
    return *this + (-o);
  }

  LaurentPoly LaurentPoly::scaled(std::int64_t c) const {
    Scalar s = ring_.reduce(c);
    if (s == 0) {
      return LaurentPoly(ring_);
    }
    LaurentPoly r(*this);
    for (auto& t : r.terms_) {
      t.coeff = ring_.mul(t.coeff, s);
    }
    return r;
  }

  LaurentPoly LaurentPoly::operator*(LaurentPoly const& o) const {
    check_same(o);
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (auto const& s : terms_) {
      for (auto const& t : o.terms_) {
        prod.push_back(Term{s.exps + t.exps, ring_.mul(s.coeff, t.coeff)});
      }
    }
    return LaurentPoly(ring_, std::move(prod));
  }

  LaurentPoly LaurentPoly::shifted(ExponentVector const& v) const {
    if (v.size() != rank()) {
      throw ContextMismatch("shift vector rank differs from ring rank");
    }
    if (v.is_zero()) {
      return *this;
    }
    // Translation preserves the lexicographic order.
    LaurentPoly r(*this);
    for (auto& t : r.terms_) {
      t.exps = t.exps + v;
    }
    return r;
  }

  std::size_t LaurentPoly::hash() const noexcept {
    std::size_t        h = terms_.size();
    ExponentVectorHash eh;
    for (auto const& t : terms_) {
      h ^= eh(t.exps) + t.coeff * 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  ParseError::ParseError(std::string const& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  LaurentPoly poly_add(LaurentPoly const& a, LaurentPoly const& b) {
    return a + b;
  }

  LaurentPoly poly_mul(LaurentPoly const& a, LaurentPoly const& b) {
    return a * b;
  }

  Scalar evaluate(LaurentPoly const& f, std::span<Scalar const> point) {
    auto const& ring = f.ring();
    if (point.size() != ring.rank()) {
      throw ContextMismatch("evaluation point has wrong dimension");
    }
    for (auto c : point) {
      if (c % ring.p() == 0) {
        throw std::domain_error("evaluation point has a zero coordinate");
      }
    }
    Scalar value = 0;
    for (auto const& t : f.terms()) {
      Scalar m = t.coeff;
      for (std::size_t i = 0; i < ring.rank(); ++i) {
        m = ring.mul(m, ring.pow(point[i] % ring.p(), t.exps[i]));
      }
      value = ring.add(value, m);
    }
    return value;
  }

  Scalar evaluate(LaurentPoly const& f, std::initializer_list<Scalar> point) {
    return evaluate(f, std::span<Scalar const>(point.begin(), point.size()));
  }

  namespace {
    // Ordinary polynomial coefficients (low to high) after shifting by x^{-lo}.
    struct Dense {
      std::int64_t        lo = 0;
      std::vector<Scalar> c;
    };

    void require_rank_one(LaurentPoly const& f, char const* op) {
      if (f.rank() != 1) {
        throw std::invalid_argument(std::string(op) + " requires rank 1");
      }
    }

    Dense to_dense(LaurentPoly const& f) {
      Dense d;
      if (f.is_zero()) {
        return d;
      }
      // Terms are sorted descending.
      std::int64_t hi = f.terms().front().exps[0];
      d.lo            = f.terms().back().exps[0];
      std::int64_t span = checked_sub(hi, d.lo);
      if (span > (std::int64_t{1} << 26)) {
        throw std::length_error("polynomial degree span too large for dense form");
      }
      d.c.assign(static_cast<std::size_t>(span) + 1, 0);
      for (auto const& t : f.terms()) {
        d.c[static_cast<std::size_t>(t.exps[0] - d.lo)] = t.coeff;
      }
      return d;
    }

    LaurentPoly from_dense(Ring const& ring, std::int64_t lo, std::vector<Scalar> const& c) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] != 0) {
          terms.push_back(
              Term{ExponentVector{checked_add(lo, static_cast<std::int64_t>(k))}, c[k]});
        }
      }
      return LaurentPoly(ring, std::move(terms));
    }

    void trim(std::vector<Scalar>& c) {
      while (!c.empty() && c.back() == 0) {
        c.pop_back();
      }
    }

    // Remainder of a modulo b (b nonzero, trimmed).
    std::vector<Scalar> poly_rem(Ring const& ring, std::vector<Scalar> a,
                                 std::vector<Scalar> const& b) {
      trim(a);
      Scalar const lead_inv = ring.inv(b.back());
      while (a.size() >= b.size()) {
        Scalar const      q     = ring.mul(a.back(), lead_inv);
        std::size_t const shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) {
          a[shift + k] = ring.sub(a[shift + k], ring.mul(q, b[k]));
        }
        trim(a);
      }
      return a;
    }

    // Strip x-power and make monic; zero stays empty.
    std::vector<Scalar> normalize_unit(Ring const& ring, std::vector<Scalar> c) {
      trim(c);
      if (c.empty()) {
        return c;
      }
      std::size_t low = 0;
      while (c[low] == 0) {
        ++low;
      }
      c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
      Scalar inv = ring.inv(c.back());
      for (auto& x : c) {
        x = ring.mul(x, inv);
      }
      return c;
    }
  }  // namespace

  LaurentPoly divide_by_linear(LaurentPoly const& f, Scalar c) {
    require_rank_one(f, "divide_by_linear");
    auto const& ring = f.ring();
    c %= ring.p();
    if (c == 0) {
      throw std::invalid_argument("divide_by_linear requires c != 0");
    }
    if (f.is_zero()) {
      return f;
    }
    Dense d = to_dense(f);
    trim(d.c);
    std::size_t const   deg = d.c.size() - 1;
    std::vector<Scalar> q(deg, 0);
    // Synthetic division from the top coefficient.
    Scalar carry = 0;
    for (std::size_t k = deg; k >= 1; --k) {
      carry    = ring.add(d.c[k], ring.mul(c, carry));
      q[k - 1] = carry;
    }
    Scalar rem = ring.add(d.c[0], ring.mul(c, carry));
    if (rem != 0) {
      throw std::domain_error("polynomial is not divisible by (x - c)");
    }
    return from_dense(ring, d.lo, q);
  }

  LaurentPoly geometric_sum(Ring ring, std::int64_t n) {
    if (ring.rank() != 1) {
      throw std::invalid_argument("geometric_sum requires rank 1");
    }
    if (n < 1) {
      throw std::invalid_argument("geometric_sum requires n >= 1");
    }
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
      terms.push_back(Term{ExponentVector{k}, 1});
    }
    return LaurentPoly(ring, std::move(terms));
  }

  LaurentPoly substitute_monomials(LaurentPoly const& f, IntMatrix const& images) {
    auto const& ring = f.ring();
    if (images.rows() != ring.rank() || images.cols() != ring.rank()) {
      throw ContextMismatch("substitution matrix must be rank x rank");
    }
    std::vector<Term> terms;
    terms.reserve(f.size());
    for (auto const& t : f.terms()) {
      terms.push_back(Term{ExponentVector(images.left_apply(t.exps.values())), t.coeff});
    }
    return LaurentPoly(ring, std::move(terms));
  }

  LaurentPoly reduce_exponents(LaurentPoly const& f, std::int64_t v) {
    if (v < 1) {
      throw std::invalid_argument("exponent modulus must be positive");
    }
    std::vector<Term> terms;
    terms.reserve(f.size());
    for (auto const& t : f.terms()) {
      ExponentVector e(t.exps.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = floor_mod(t.exps[i], v);
      }
      terms.push_back(Term{std::move(e), t.coeff});
    }
    return LaurentPoly(f.ring(), std::move(terms));
  }

  LaurentPoly univariate_gcd(LaurentPoly const& a, LaurentPoly const& b) {
    require_rank_one(a, "univariate_gcd");
    require_rank_one(b, "univariate_gcd");
    auto const& ring = a.ring();
    auto        u    = normalize_unit(ring, to_dense(a).c);
    auto        v    = normalize_unit(ring, to_dense(b).c);
    while (!v.empty()) {
      auto r = poly_rem(ring, u, v);
      u      = std::move(v);
      v      = normalize_unit(ring, std::move(r));
    }
    return from_dense(ring, 0, normalize_unit(ring, std::move(u)));
  }

  bool univariate_divides(LaurentPoly const& b, LaurentPoly const& a) {
    require_rank_one(a, "univariate_divides");
    require_rank_one(b, "univariate_divides");
    if (b.is_zero()) {
      return a.is_zero();
    }
    auto const& ring = a.ring();
    auto        bn   = normalize_unit(ring, to_dense(b).c);
    auto        r    = poly_rem(ring, to_dense(a).c, bn);
    return r.empty();
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form
  ////////////////////////////////////////////////////////////////////////

  std::string monomial_string(ExponentVector const& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) {
        continue;
      }
      if (!out.empty()) {
        out += '*';
      }
      out += 'x' + std::to_string(i + 1);
      if (e[i] != 1) {
        out += '^' + std::to_string(e[i]);
      }
    }
    return out.empty() ? "1" : out;
  }

  std::string to_string(LaurentPoly const& f) {
    if (f.is_zero()) {
      return "0";
    }
    std::string out;
    for (auto const& t : f.terms()) {
      if (!out.empty()) {
        out += " + ";
      }
      if (t.exps.is_zero()) {
        out += std::to_string(t.coeff);
      } else if (t.coeff == 1) {
        out += monomial_string(t.exps);
      } else {
        out += std::to_string(t.coeff) + "*" + monomial_string(t.exps);
      }
    }
    return out;
  }

  namespace {
    class PolyParser {
     public:
      PolyParser(Ring ring, std::string_view s) : ring_(ring), s_(s) {}

      LaurentPoly parse() {
        auto f = expr();
        skip();
        if (pos_ != s_.size()) {
          throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        }
        return f;
      }

     private:
      void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
          ++pos_;
        }
      }

      bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
          ++pos_;
          return true;
        }
        return false;
      }

      LaurentPoly expr() {
        skip();
        bool negate = false;
        if (accept('-')) {
          negate = true;
        } else {
          accept('+');
        }
        LaurentPoly acc = term();
        if (negate) {
          acc = -acc;
        }
        while (true) {
          if (accept('+')) {
            acc += term();
          } else if (accept('-')) {
            acc -= term();
          } else {
            return acc;
          }
        }
      }

      LaurentPoly term() {
        LaurentPoly acc = factor();
        while (accept('*')) {
          acc *= factor();
        }
        return acc;
      }

      std::int64_t integer(bool allow_sign) {
        skip();
        bool neg = false;
        if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
          neg = s_[pos_] == '-';
          ++pos_;
        }
        std::size_t const start = pos_;
        std::int64_t      v     = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          v = checked_add(checked_mul(v, 10), s_[pos_] - '0');
          ++pos_;
        }
        if (pos_ == start) {
          throw ParseError("expected integer", start);
        }
        return neg ? -v : v;
      }

      LaurentPoly factor() {
        skip();
        if (pos_ >= s_.size()) {
          throw ParseError("unexpected end of input", pos_);
        }
        char const c = s_[pos_];
        if (c == '(') {
          ++pos_;
          auto inner = expr();
          if (!accept(')')) {
            throw ParseError("expected ')'", pos_);
          }
          if (accept('^')) {
            std::size_t const at = pos_;
            auto              k  = integer(false);
            if (k > 64) {
              throw ParseError("parenthesized power too large", at);
            }
            auto r = LaurentPoly::one(ring_);
            for (std::int64_t i = 0; i < k; ++i) {
              r *= inner;
            }
            return r;
          }
          return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
          // Reduce digit by digit so long literals never overflow.
          std::int64_t v = 0;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = (v * 10 + (s_[pos_] - '0')) % ring_.p();
            ++pos_;
          }
          return LaurentPoly::constant(ring_, v);
        }
        if (c == 'x') {
          std::size_t const at = pos_++;
          std::size_t       index;
          if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            auto k = integer(false);
            if (k < 1 || static_cast<std::size_t>(k) > ring_.rank()) {
              throw ParseError("variable index out of range", at);
            }
            index = static_cast<std::size_t>(k - 1);
          } else if (ring_.rank() == 1) {
            index = 0;
          } else {
            throw ParseError("bare 'x' needs an index when rank > 1", at);
          }
          std::int64_t e = 1;
          if (accept('^')) {
            e = integer(true);
          }
          ExponentVector v(ring_.rank());
          v[index] = e;
          return LaurentPoly::monomial(ring_, std::move(v));
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
      }

      Ring             ring_;
      std::string_view s_;
      std::size_t      pos_ = 0;
    };
  }  // namespace

  LaurentPoly parse_poly(Ring ring, std::string_view text) {
    return PolyParser(ring, text).parse();
  }

}  // namespace wreathrep
