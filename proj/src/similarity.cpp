#include "wreathrep/similarity.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "wreathrep/checked.hpp"

namespace wreathrep {

  namespace {

    std::uint64_t checked_pow_u64(std::uint64_t base, std::uint64_t exponent) {
      std::uint64_t r = 1;
      for (std::uint64_t i = 0; i < exponent; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) {
          throw std::overflow_error("index does not fit in 64 bits");
        }
      }
      return r;
    }

    // Number of exponent positions [0, v)^d.
    std::uint64_t box_size(std::int64_t v, std::size_t d) {
      return checked_pow_u64(static_cast<std::uint64_t>(v), d);
    }

    std::uint64_t box_position(ExponentVector const& e, std::int64_t v) {
      std::uint64_t pos = 0;
      for (auto x : e) {
        pos = pos * static_cast<std::uint64_t>(v) + static_cast<std::uint64_t>(x);
      }
      return pos;
    }

    ExponentVector box_exponent(std::uint64_t pos, std::int64_t v, std::size_t d) {
      ExponentVector e(d);
      for (std::size_t i = d; i-- > 0;) {
        e[i] = static_cast<std::int64_t>(pos % static_cast<std::uint64_t>(v));
        pos /= static_cast<std::uint64_t>(v);
      }
      return e;
    }

    void require_ring(Ring const& ring, LaurentPoly const& f, char const* what) {
      if (f.ring() != ring) {
        throw ContextMismatch(std::string(what) + ": polynomial from a different (p, d) context");
      }
    }

    ExponentVector row_vector(IntMatrix const& m, std::size_t r) {
      return ExponentVector(m.row(r));
    }

    ExponentVector times(ExponentVector const& e, IntMatrix const& m) {
      return ExponentVector(m.left_apply(e.values()));
    }

    // alpha of the untwisted closed forms on a single exponent vector.
    ExponentVector base_alpha(VirtualEndo::MuSpec const& mu, std::uint32_t p,
                              ExponentVector const& y) {
      if (auto const* dp = std::get_if<DegreeP>(&mu)) {
        return ExponentVector{checked_mul(y[0], dp->n)};
      }
      auto const     d = y.size();
      ExponentVector r(d);
      if (floor_mod(y[0], p) != 0) {
        throw std::domain_error("alpha: exponent outside <x1^p, x2, ..., xd>");
      }
      r[1] = checked_add(r[1], y[0] / static_cast<std::int64_t>(p));
      for (std::size_t j = 1; j + 1 < d; ++j) {
        r[j + 1] = checked_add(r[j + 1], y[j]);
      }
      r[0] = checked_add(r[0], y[d - 1]);
      return r;
    }

    LaurentPoly base_alpha_poly(VirtualEndo::MuSpec const& mu, LaurentPoly const& w) {
      std::vector<Term> out;
      out.reserve(w.size());
      for (auto const& t : w.terms()) {
        out.push_back({base_alpha(mu, w.p(), t.exps), t.coeff});
      }
      return LaurentPoly(w.ring(), std::move(out));
    }

    LaurentPoly mu_degree_p(DegreeP const& dp, LaurentPoly const& f) {
      auto r  = divide_by_linear(f, dp.c);
      auto rn = substitute_monomials(r, IntMatrix{{dp.n}});
      return rn * dp.u;
    }

    LaurentPoly mu_augmentation(LaurentPoly const& f) {
      auto const         p = static_cast<std::int64_t>(f.p());
      auto const         d = f.rank();
      std::vector<Term>  out;
      for (auto const& t : f.terms()) {
        auto const u0 = floor_mod(t.exps[0], p);
        if (u0 == 0) {
          continue;
        }
        auto const     u1 = floor_div(t.exps[0], p);
        ExponentVector r(d);
        r[1] = u1;
        for (std::size_t j = 1; j + 1 < d; ++j) {
          r[j + 1] = checked_add(r[j + 1], t.exps[j]);
        }
        r[0] = checked_add(r[0], t.exps[d - 1]);
        out.push_back({std::move(r), f.ring().mul(t.coeff, static_cast<Scalar>(u0))});
      }
      return LaurentPoly(f.ring(), std::move(out));
    }

    LaurentPoly untwist(VirtualEndo const& endo, LaurentPoly const& f) {
      if (!endo.is_twisted()) {
        return f;
      }
      return substitute_monomials(f, endo.twist().unimodular_inverse());
    }

    LaurentPoly retwist(VirtualEndo const& endo, LaurentPoly const& f) {
      if (!endo.is_twisted()) {
        return f;
      }
      return substitute_monomials(f, endo.twist());
    }

    void require_unimodular(IntMatrix const& m, char const* what) {
      if (!m.is_square()) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square");
      }
      auto det = m.determinant();
      if (det != 1 && det != -1) {
        throw std::invalid_argument(std::string(what) + ": matrix is not unimodular (det = "
                                    + std::to_string(det) + ")");
      }
    }

    // Shift so the last term sits at exponent 0 and scale it to coefficient 1.
    LaurentPoly normalize_associate(LaurentPoly const& f) {
      if (f.is_zero()) {
        return f;
      }
      auto const& last  = f.terms().back();
      auto        inv   = f.ring().inv(last.coeff);
      return f.shifted(-last.exps).scaled(inv);
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // IdealSpec
  ////////////////////////////////////////////////////////////////////////

  bool IdealSpec::is_augmentation() const noexcept {
    auto const* ek = std::get_if<EvaluationKernel>(&kind_);
    return ek != nullptr
           && std::all_of(ek->point.begin(), ek->point.end(), [](Scalar c) { return c == 1; });
  }

  void IdealSpec::validate(Ring const& ring) const {
    if (auto const* ek = std::get_if<EvaluationKernel>(&kind_)) {
      if (ek->point.size() != ring.rank()) {
        throw std::invalid_argument("evaluation ideal: point has " + std::to_string(ek->point.size())
                                    + " coordinates, rank is " + std::to_string(ring.rank()));
      }
      for (auto c : ek->point) {
        if (c == 0 || c >= ring.p()) {
          throw std::invalid_argument("evaluation ideal: coordinates must lie in [1, p-1]");
        }
      }
    } else {
      auto v = std::get<ExponentReduction>(kind_).v;
      if (v < 1) {
        throw std::invalid_argument("exponent-reduction ideal: v must be positive");
      }
    }
  }

  LaurentPoly IdealSpec::residue(LaurentPoly const& f) const {
    if (auto const* ek = std::get_if<EvaluationKernel>(&kind_)) {
      return LaurentPoly::constant(f.ring(), evaluate(f, std::span<Scalar const>(ek->point)));
    }
    return reduce_exponents(f, std::get<ExponentReduction>(kind_).v);
  }

  std::uint64_t IdealSpec::residue_index(LaurentPoly const& f) const {
    if (auto const* ek = std::get_if<EvaluationKernel>(&kind_)) {
      return evaluate(f, std::span<Scalar const>(ek->point));
    }
    auto const    v     = std::get<ExponentReduction>(kind_).v;
    auto const    r     = reduce_exponents(f, v);
    auto const    total = box_size(v, f.rank());
    std::uint64_t idx   = 0;
    // Position k of the box carries digit weight p^k.
    std::vector<Scalar> digits(total, 0);
    for (auto const& t : r.terms()) {
      digits[box_position(t.exps, v)] = t.coeff;
    }
    for (std::uint64_t k = total; k-- > 0;) {
      idx = idx * f.p() + digits[k];
    }
    return idx;
  }

  std::uint64_t IdealSpec::index(Ring const& ring) const {
    if (is_evaluation()) {
      return ring.p();
    }
    auto const v = std::get<ExponentReduction>(kind_).v;
    return checked_pow_u64(ring.p(), box_size(v, ring.rank()));
  }

  std::vector<LaurentPoly> IdealSpec::transversal(Ring const& ring, std::uint64_t bound) const {
    std::uint64_t n = 0;
    try {
      n = index(ring);
    } catch (std::overflow_error const&) {
      throw std::length_error("transversal of A0 in A exceeds bound");
    }
    if (n > bound) {
      throw std::length_error("transversal of A0 in A has " + std::to_string(n)
                              + " elements, bound is " + std::to_string(bound));
    }
    std::vector<LaurentPoly> out;
    out.reserve(n);
    if (is_evaluation()) {
      for (std::uint64_t c = 0; c < n; ++c) {
        out.push_back(LaurentPoly::constant(ring, static_cast<std::int64_t>(c)));
      }
      return out;
    }
    auto const v     = std::get<ExponentReduction>(kind_).v;
    auto const total = box_size(v, ring.rank());
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      std::vector<Term> terms;
      auto              rest = idx;
      for (std::uint64_t k = 0; k < total; ++k) {
        auto digit = static_cast<Scalar>(rest % ring.p());
        rest /= ring.p();
        if (digit != 0) {
          terms.push_back({box_exponent(k, v, ring.rank()), digit});
        }
      }
      out.emplace_back(ring, std::move(terms));
    }
    return out;
  }

  IdealSpec IdealSpec::transported(Ring const& ring, IntMatrix const& gamma) const {
    auto const* ek = std::get_if<EvaluationKernel>(&kind_);
    if (ek == nullptr) {
      return *this;
    }
    // gamma(f) vanishes at c' iff f vanishes at c, where
    // c'_j = prod_i c_i^{(gamma^-1)_{ji}}.
    auto const          inv = gamma.unimodular_inverse();
    auto const          d   = ek->point.size();
    std::vector<Scalar> out(d, 1);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        out[j] = ring.mul(out[j], ring.pow(ek->point[i], inv(j, i)));
      }
    }
    return evaluation(std::move(out));
  }

  std::string IdealSpec::describe() const {
    std::ostringstream os;
    if (auto const* ek = std::get_if<EvaluationKernel>(&kind_)) {
      if (is_augmentation()) {
        os << "augmentation ideal";
      } else {
        os << "kernel of evaluation at (";
        for (std::size_t i = 0; i < ek->point.size(); ++i) {
          os << (i ? ", " : "") << ek->point[i];
        }
        os << ")";
      }
    } else {
      os << "ideal generated by x_i^" << std::get<ExponentReduction>(kind_).v << " - 1";
    }
    return os.str();
  }

  bool ideal_contains(IdealSpec const& spec, LaurentPoly const& f) {
    if (f.is_zero()) {
      return true;
    }
    return spec.residue(f).is_zero();
  }

  ////////////////////////////////////////////////////////////////////////
  // VirtualEndo
  ////////////////////////////////////////////////////////////////////////

  VirtualEndo::VirtualEndo(IntMatrix alpha, MuSpec mu, IntMatrix twist)
      : alpha_(std::move(alpha)), mu_(std::move(mu)), twist_(std::move(twist)) {
    if (!alpha_.is_square() || alpha_.rows() == 0) {
      throw std::invalid_argument("alpha matrix must be square and nonempty");
    }
    if (alpha_.determinant() == 0) {
      throw std::invalid_argument("alpha matrix is singular: alpha must be injective");
    }
    require_unimodular(twist_, "twist");
    if (twist_.rows() != alpha_.rows()) {
      throw std::invalid_argument("twist and alpha sizes differ");
    }
  }

  VirtualEndo::VirtualEndo(IntMatrix alpha, MuSpec mu)
      : VirtualEndo(alpha, std::move(mu), IntMatrix::identity(alpha.rows())) {}

  ////////////////////////////////////////////////////////////////////////
  // SimilarityPair
  ////////////////////////////////////////////////////////////////////////

  SimilarityPair::SimilarityPair(Ring ring, IdealSpec a0, Lattice y,
                                 std::vector<LaurentPoly> deformation, VirtualEndo endo)
      : ring_(ring),
        a0_(std::move(a0)),
        y_(std::move(y)),
        deformation_(std::move(deformation)),
        endo_(std::move(endo)) {
    auto const d = ring_.rank();
    if (y_.rank() != d || y_.basis().cols() != d) {
      throw std::invalid_argument("lattice rank differs from the rank of X");
    }
    if (endo_.alpha_matrix().rows() != d) {
      throw std::invalid_argument("alpha matrix size differs from the rank of X");
    }
    a0_.validate(ring_);

    if (deformation_.empty()) {
      deformation_.assign(d, LaurentPoly::zero(ring_));
    }
    if (deformation_.size() != d) {
      throw std::invalid_argument("deformation needs one value per lattice basis element");
    }
    for (auto const& v : deformation_) {
      require_ring(ring_, v, "deformation");
      if (!v.is_zero() && ideal_contains(a0_, v)) {
        throw std::invalid_argument("deformation value " + to_string(v)
                                    + " is a nonzero element of A0");
      }
    }

    auto const& gamma     = endo_.twist();
    auto const  gamma_inv = gamma.unimodular_inverse();
    auto const& mu        = endo_.mu_spec();

    if (auto const* dp = std::get_if<DegreeP>(&mu)) {
      if (d != 1) {
        throw std::invalid_argument("degree-p endomorphism requires rank 1");
      }
      if (dp->n == 0) {
        throw std::invalid_argument("degree-p endomorphism: n must be nonzero");
      }
      require_ring(ring_, dp->u, "degree-p endomorphism");
      if (dp->u.is_zero()) {
        throw std::invalid_argument("degree-p endomorphism: u must be nonzero");
      }
      if (dp->c == 0 || dp->c >= ring_.p()) {
        throw std::invalid_argument("degree-p endomorphism: c must lie in [1, p-1]");
      }
      if (a0_ != IdealSpec::evaluation({dp->c}).transported(ring_, gamma)) {
        throw std::invalid_argument("degree-p endomorphism: A0 must be <x - c>");
      }
    } else {
      if (d < 2) {
        throw std::invalid_argument("augmentation endomorphism requires rank >= 2");
      }
      if (!a0_.is_augmentation()) {
        throw std::invalid_argument("augmentation endomorphism: A0 must be the augmentation ideal");
      }
    }

    for (std::size_t i = 0; i < d; ++i) {
      auto const b = row_vector(y_.basis(), i);
      ExponentVector expected;
      try {
        expected = times(base_alpha(mu, ring_.p(), times(b, gamma_inv)), gamma);
      } catch (std::domain_error const&) {
        throw std::invalid_argument("lattice basis element " + monomial_string(b)
                                    + " lies outside the domain of alpha");
      }
      if (expected != row_vector(endo_.alpha_matrix(), i)) {
        throw std::invalid_argument("alpha matrix row " + std::to_string(i + 1)
                                    + " does not match the endomorphism kind");
      }
    }

    // A0 <v_i y_i> must be a subgroup with A0 as its A-part, and f must kill
    // the commutators of the generators.
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        auto c = commutator(deformed_generator(i), deformed_generator(j)).a_part();
        if (!ideal_contains(a0_, c)) {
          throw std::invalid_argument("deformation is inconsistent: [v_i y_i, v_j y_j] not in A0");
        }
        if (!mu_apply(*this, c).is_zero()) {
          throw std::invalid_argument(
              "deformation is inconsistent: mu does not vanish on [v_i y_i, v_j y_j]");
        }
      }
    }
  }

  bool SimilarityPair::has_deformation() const noexcept {
    return std::any_of(deformation_.begin(), deformation_.end(),
                       [](LaurentPoly const& v) { return !v.is_zero(); });
  }

  std::uint64_t SimilarityPair::index() const {
    std::uint64_t r;
    if (__builtin_mul_overflow(a0_.index(ring_), static_cast<std::uint64_t>(y_.index()), &r)) {
      throw std::overflow_error("index does not fit in 64 bits");
    }
    return r;
  }

  ExponentVector SimilarityPair::alpha(ExponentVector const& y) const {
    auto coords = y_.coordinates(y);
    if (!coords) {
      throw std::domain_error("alpha: " + monomial_string(y) + " is not in Y");
    }
    return ExponentVector(endo_.alpha_matrix().left_apply(*coords));
  }

  LaurentPoly SimilarityPair::alpha(LaurentPoly const& w) const {
    require_ring(ring_, w, "alpha");
    std::vector<Term> out;
    out.reserve(w.size());
    for (auto const& t : w.terms()) {
      out.push_back({alpha(t.exps), t.coeff});
    }
    return LaurentPoly(ring_, std::move(out));
  }

  LaurentPoly SimilarityPair::deformation_part(ExponentVector const& y) const {
    auto coords = y_.coordinates(y);
    if (!coords) {
      throw std::domain_error("deformation_part: " + monomial_string(y) + " is not in Y");
    }
    if (!has_deformation()) {
      return LaurentPoly::zero(ring_);
    }
    auto g = WreathElement::identity(ring_);
    for (std::size_t i = 0; i < coords->size(); ++i) {
      if ((*coords)[i] != 0) {
        g *= deformed_generator(i).pow((*coords)[i]);
      }
    }
    return g.a_part();
  }

  WreathElement SimilarityPair::deformed_generator(std::size_t i) const {
    return WreathElement(deformation_.at(i), row_vector(y_.basis(), i));
  }

  ////////////////////////////////////////////////////////////////////////
  // mu
  ////////////////////////////////////////////////////////////////////////

  LaurentPoly mu_apply(SimilarityPair const& pair, LaurentPoly const& f) {
    require_ring(pair.ring(), f, "mu");
    if (!ideal_contains(pair.a0(), f)) {
      throw std::domain_error("mu: " + to_string(f) + " is outside A0");
    }
    if (f.is_zero()) {
      return f;
    }
    auto const& endo = pair.endo();
    auto const  f0   = untwist(endo, f);
    LaurentPoly r    = std::visit(
        [&](auto const& spec) -> LaurentPoly {
          using T = std::decay_t<decltype(spec)>;
          if constexpr (std::is_same_v<T, DegreeP>) {
            return mu_degree_p(spec, f0);
          } else {
            return mu_augmentation(f0);
          }
        },
        endo.mu_spec());
    return retwist(endo, r);
  }

  AugmentationDecomposition decompose_augmentation(Ring const& ring, LaurentPoly const& nu) {
    require_ring(ring, nu, "decompose_augmentation");
    if (ring.rank() < 2) {
      throw std::invalid_argument("decompose_augmentation: rank must be at least 2");
    }
    if (nu.augmentation() != 0) {
      throw std::domain_error("decompose_augmentation: element is outside the augmentation ideal");
    }
    auto const p = static_cast<std::int64_t>(ring.p());
    auto const d = ring.rank();

    // nu = sum over (i, z) of P_{i,z}(x1^p) x1^i z.
    std::map<std::pair<std::int64_t, ExponentVector>, std::vector<Term>> parts;
    for (auto const& t : nu.terms()) {
      auto const     i = floor_mod(t.exps[0], p);
      ExponentVector z = t.exps;
      z[0]             = 0;
      ExponentVector head(d);
      head[0] = t.exps[0] - i;
      parts[{i, z}].push_back({std::move(head), t.coeff});
    }

    AugmentationDecomposition out{LaurentPoly::zero(ring), {}, {}, {}};
    auto add_to = [&](auto& map, auto const& key, LaurentPoly const& v) {
      auto it = map.find(key);
      if (it == map.end()) {
        map.emplace(key, v);
      } else {
        it->second += v;
      }
    };
    // x1^i z = (x1^i - 1)(z - 1) + (x1^i - 1) + (z - 1) + 1.
    for (auto& [key, terms] : parts) {
      auto const& [i, z] = key;
      LaurentPoly P(ring, std::move(terms));
      out.b0 += P;
      if (i != 0) {
        add_to(out.b, i, P);
      }
      if (!z.is_zero()) {
        add_to(out.a, z, P);
      }
      if (i != 0 && !z.is_zero()) {
        add_to(out.bz, key, P);
      }
    }
    auto drop_zero = [](auto& map) {
      std::erase_if(map, [](auto const& kv) { return kv.second.is_zero(); });
    };
    drop_zero(out.b);
    drop_zero(out.a);
    drop_zero(out.bz);
    return out;
  }

  LaurentPoly AugmentationDecomposition::reassemble(Ring const& ring) const {
    auto const d      = ring.rank();
    auto       one    = LaurentPoly::one(ring);
    auto       x1pow  = [&](std::int64_t i) {
      ExponentVector e(d);
      e[0] = i;
      return LaurentPoly::monomial(ring, e) - one;
    };
    auto zmono = [&](ExponentVector const& z) { return LaurentPoly::monomial(ring, z) - one; };
    auto sum   = b0;
    for (auto const& [i, v] : b) {
      sum += v * x1pow(i);
    }
    for (auto const& [z, v] : a) {
      sum += v * zmono(z);
    }
    for (auto const& [key, v] : bz) {
      sum += v * zmono(key.second) * x1pow(key.first);
    }
    return sum;
  }

  LaurentPoly mu_apply_via_decomposition(SimilarityPair const& pair, LaurentPoly const& f) {
    auto const& endo = pair.endo();
    if (!std::holds_alternative<AugmentationClosedForm>(endo.mu_spec())) {
      throw std::invalid_argument("mu_apply_via_decomposition needs the augmentation kind");
    }
    require_ring(pair.ring(), f, "mu");
    if (!ideal_contains(pair.a0(), f)) {
      throw std::domain_error("mu: " + to_string(f) + " is outside A0");
    }
    auto const& ring = pair.ring();
    auto const  dec  = decompose_augmentation(ring, untwist(endo, f));
    auto const& mu   = endo.mu_spec();
    auto        one  = LaurentPoly::one(ring);

    // mu kills b0 and the a_z (z - 1), mu(x1^i - 1) = i, and
    // mu(w nu) = w^alpha mu(nu) for w in k[Y].
    auto r = LaurentPoly::zero(ring);
    for (auto const& [i, v] : dec.b) {
      r += base_alpha_poly(mu, v).scaled(i);
    }
    for (auto const& [key, v] : dec.bz) {
      auto zalpha = LaurentPoly::monomial(ring, base_alpha(mu, ring.p(), key.second));
      r += (base_alpha_poly(mu, v) * (zalpha - one)).scaled(key.first);
    }
    return retwist(endo, r);
  }

  ////////////////////////////////////////////////////////////////////////
  // Randomized checks
  ////////////////////////////////////////////////////////////////////////

  LaurentPoly random_poly(Ring const& ring, std::mt19937_64& rng, std::size_t max_terms,
                          std::int64_t max_exp) {
    std::uniform_int_distribution<std::size_t>  nterms(0, max_terms);
    std::uniform_int_distribution<std::int64_t> expo(-max_exp, max_exp);
    std::uniform_int_distribution<std::uint32_t> coeff(1, ring.p() - 1);
    std::vector<Term>                           terms;
    auto                                        n = nterms(rng);
    for (std::size_t k = 0; k < n; ++k) {
      ExponentVector e(ring.rank());
      for (std::size_t i = 0; i < ring.rank(); ++i) {
        e[i] = expo(rng);
      }
      terms.push_back({std::move(e), coeff(rng)});
    }
    return LaurentPoly(ring, std::move(terms));
  }

  LaurentPoly random_ideal_element(Ring const& ring, IdealSpec const& a0, std::mt19937_64& rng) {
    auto g = random_poly(ring, rng);
    return g - a0.residue(g);
  }

  LaurentPoly random_lattice_poly(Ring const& ring, Lattice const& y, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t>   nterms(0, 4);
    std::uniform_int_distribution<std::int64_t>  coord(-2, 2);
    std::uniform_int_distribution<std::uint32_t> coeff(1, ring.p() - 1);
    std::vector<Term>                            terms;
    auto                                         n = nterms(rng);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::int64_t> c(y.rank());
      for (auto& x : c) {
        x = coord(rng);
      }
      terms.push_back({y.combine(c), coeff(rng)});
    }
    return LaurentPoly(ring, std::move(terms));
  }

  SkewReport check_skew_condition(SimilarityPair const& pair, std::size_t trials,
                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SkewReport      report;
    report.trials = trials;
    for (std::size_t k = 0; k < trials; ++k) {
      auto w   = random_lattice_poly(pair.ring(), pair.y(), rng);
      auto nu  = random_ideal_element(pair.ring(), pair.a0(), rng);
      auto lhs = mu_apply(pair, w * nu);
      auto rhs = pair.alpha(w) * mu_apply(pair, nu);
      if (lhs != rhs) {
        report.failures.push_back({std::move(w), std::move(nu), std::move(lhs), std::move(rhs)});
      }
    }
    return report;
  }

  SimilarityPair replace_pair(SimilarityPair const& pair) {
    return SimilarityPair(pair.ring(), pair.a0(), pair.y(), {}, pair.endo());
  }

  SimilarityPair twist_pair(SimilarityPair const& pair, IntMatrix const& gamma) {
    require_unimodular(gamma, "twist_pair");
    if (gamma.rows() != pair.ring().rank()) {
      throw std::invalid_argument("twist_pair: matrix size differs from the rank of X");
    }
    std::vector<LaurentPoly> deformation;
    deformation.reserve(pair.deformation().size());
    for (auto const& v : pair.deformation()) {
      deformation.push_back(substitute_monomials(v, gamma));
    }
    auto const& endo = pair.endo();
    VirtualEndo twisted(endo.alpha_matrix() * gamma, endo.mu_spec(), endo.twist() * gamma);
    return SimilarityPair(pair.ring(), pair.a0().transported(pair.ring(), gamma),
                          Lattice(pair.y().basis() * gamma), std::move(deformation),
                          std::move(twisted));
  }

  ////////////////////////////////////////////////////////////////////////
  // Simplicity of the degree-p family
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(Simplicity s) {
    switch (s) {
      case Simplicity::simple:
        return "Simple";
      case Simplicity::not_simple:
        return "NotSimple";
      case Simplicity::inconclusive:
        return "Inconclusive";
    }
    return "?";
  }

  SimplicityVerdict check_simplicity_degree_p(Ring const& ring, std::int64_t n,
                                              LaurentPoly const& u, Scalar c) {
    if (ring.rank() != 1) {
      throw std::invalid_argument("check_simplicity_degree_p: rank must be 1");
    }
    require_ring(ring, u, "check_simplicity_degree_p");
    if (u.is_zero()) {
      throw std::invalid_argument("check_simplicity_degree_p: u must be nonzero");
    }
    if (n == 0) {
      throw std::invalid_argument("check_simplicity_degree_p: n must be nonzero");
    }
    if (c == 0 || c >= ring.p()) {
      throw std::invalid_argument("check_simplicity_degree_p: c must lie in [1, p-1]");
    }
    auto const x_minus_c = parse_poly(ring, "x") - LaurentPoly::constant(ring, c);
    auto const cstr      = std::to_string(c);

    // u must not vanish on the orbit c, c^n, c^{n^2}, ... in GF(p)^*.
    std::set<Scalar> seen;
    Scalar           t = c;
    for (std::size_t i = 0; seen.insert(t).second; ++i, t = ring.pow(t, n)) {
      if (evaluate(u, {t}) != 0) {
        continue;
      }
      SimplicityVerdict v{Simplicity::not_simple, {}, {}, {}};
      if (i == 0) {
        v.reason  = "(x - " + cstr + ") divides u, so mu maps M into M";
        v.witness = "M";
        v.witness_generator = x_minus_c;
        return v;
      }
      v.reason  = "u vanishes at c^(n^" + std::to_string(i) + ")";
      v.witness = "M";
      for (std::size_t k = 0; k < i; ++k) {
        v.witness += k == 0 ? " u(x)" : " u(x^(n^" + std::to_string(k) + "))";
      }
      try {
        auto         gen   = x_minus_c;
        std::int64_t power = 1;
        for (std::size_t k = 0; k < i; ++k) {
          gen *= substitute_monomials(u, IntMatrix{{power}});
          power = checked_mul(power, n);
        }
        v.witness_generator = gen;
      } catch (std::overflow_error const&) {
        // Name only.
      }
      return v;
    }

    // n = p^s n' with p not dividing n'.
    std::int64_t s     = 0;
    std::int64_t nprim = n;
    auto const   p     = static_cast<std::int64_t>(ring.p());
    while (nprim % p == 0) {
      nprim /= p;
      ++s;
    }
    if (s != 0 && floor_mod(nprim - 1, ring.order(c)) == 0) {
      SimplicityVerdict v{Simplicity::not_simple, {}, {}, {}};
      v.reason  = "p divides n and the order of c divides n' - 1";
      v.witness = c == 1 ? "I(x-1)^2" : "M(x-" + cstr + ")^2";
      v.witness_generator = x_minus_c * x_minus_c * x_minus_c;
      return v;
    }

    // Each application of mu lowers the (x - c)-adic valuation by exactly one.
    if (ring.pow(c, n) == c && s == 0) {
      return {Simplicity::simple, "c^n = c, p does not divide n and u(c) != 0", {}, {}};
    }
    return {Simplicity::inconclusive, "necessary conditions hold; no sufficient criterion applies",
            {}, {}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Deformations
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::vector<LaurentPoly>> enumerate_deformations(Ring const& ring,
                                                               IdealSpec const& a0,
                                                               Lattice const& y,
                                                               std::uint64_t transversal_bound) {
    a0.validate(ring);
    auto const d = ring.rank();
    if (y.rank() != d) {
      throw std::invalid_argument("enumerate_deformations: lattice rank differs from rank of X");
    }
    auto const S = a0.transversal(ring, transversal_bound);
    auto const m = S.size();

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (__builtin_mul_overflow(total, m, &total) || total > 50'000'000) {
        throw std::length_error("enumerate_deformations: too many candidate assignments");
      }
    }

    std::vector<ExponentVector> basis;
    for (std::size_t i = 0; i < d; ++i) {
      basis.push_back(row_vector(y.basis(), i));
    }
    // ok[i][j][si * m + sj]: [y_i, w_j] in [y_j, w_i] A0 with w = v^y.
    std::vector<std::vector<std::vector<char>>> ok(d, std::vector<std::vector<char>>(d));
    for (std::size_t i = 0; i < d; ++i) {
      auto yi = WreathElement::from_x_part(ring, basis[i]);
      for (std::size_t j = i + 1; j < d; ++j) {
        auto yj = WreathElement::from_x_part(ring, basis[j]);
        ok[i][j].assign(m * m, 0);
        for (std::size_t si = 0; si < m; ++si) {
          auto wi = WreathElement::from_a_part(S[si]).conjugated_by(yi);
          auto lhs_j = commutator(yj, wi).a_part();
          for (std::size_t sj = 0; sj < m; ++sj) {
            auto wj  = WreathElement::from_a_part(S[sj]).conjugated_by(yj);
            auto lhs = commutator(yi, wj).a_part();
            ok[i][j][si * m + sj] = ideal_contains(a0, lhs - lhs_j) ? 1 : 0;
          }
        }
      }
    }

    std::vector<std::vector<LaurentPoly>> out;
    std::vector<std::size_t>              choice(d, 0);
    // Lexicographic depth-first search.
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == d) {
        std::vector<LaurentPoly> v;
        v.reserve(d);
        for (auto s : choice) {
          v.push_back(S[s]);
        }
        out.push_back(std::move(v));
        return;
      }
      for (std::size_t s = 0; s < m; ++s) {
        bool good = true;
        for (std::size_t i = 0; i < k && good; ++i) {
          good = ok[i][k][choice[i] * m + s] != 0;
        }
        if (good) {
          choice[k] = s;
          self(self, k + 1);
        }
      }
    };
    rec(rec, 0);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Invariant ideal search
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::optional<IdealWitness> principal_closure(SimilarityPair const& pair,
                                                  LaurentPoly const& seed, std::size_t bound) {
      auto const T = pair.y().transversal();
      auto       g = univariate_gcd(seed, seed);
      for (std::size_t it = 0; it < bound; ++it) {
        if (!ideal_contains(pair.a0(), g)) {
          return std::nullopt;
        }
        auto next = g;
        for (auto const& t : T) {
          next = univariate_gcd(next, mu_apply(pair, g.shifted(t)));
        }
        if (next == g) {
          return IdealWitness{seed, {g}};
        }
        g = std::move(next);
      }
      return std::nullopt;
    }

    std::optional<IdealWitness> orbit_closure(SimilarityPair const& pair, LaurentPoly const& seed,
                                              std::size_t bound) {
      auto const                      T = pair.y().transversal();
      std::unordered_set<LaurentPoly> seen;
      std::vector<LaurentPoly>        order;
      std::deque<LaurentPoly>         queue;
      auto                            start = normalize_associate(seed);
      seen.insert(start);
      order.push_back(start);
      queue.push_back(start);
      while (!queue.empty()) {
        auto g = std::move(queue.front());
        queue.pop_front();
        if (!ideal_contains(pair.a0(), g)) {
          return std::nullopt;
        }
        for (auto const& t : T) {
          auto h = mu_apply(pair, g.shifted(t));
          if (h.is_zero()) {
            continue;
          }
          h = normalize_associate(h);
          if (seen.insert(h).second) {
            if (seen.size() > bound) {
              return std::nullopt;
            }
            order.push_back(h);
            queue.push_back(std::move(h));
          }
        }
      }
      return IdealWitness{seed, std::move(order)};
    }

  }  // namespace

  std::optional<IdealWitness> invariant_ideal_witness(SimilarityPair const& pair,
                                                      std::vector<LaurentPoly> const& seeds,
                                                      std::size_t iteration_bound) {
    for (auto const& seed : seeds) {
      require_ring(pair.ring(), seed, "invariant_ideal_witness");
      if (seed.is_zero()) {
        continue;
      }
      auto w = pair.ring().rank() == 1 ? principal_closure(pair, seed, iteration_bound)
                                       : orbit_closure(pair, seed, iteration_bound);
      if (w) {
        return w;
      }
    }
    return std::nullopt;
  }

}  // namespace wreathrep
