#include "wreathrep/tree.hpp"

#include <sstream>
#include <stdexcept>

namespace wreathrep {

  ////////////////////////////////////////////////////////////////////////
  // RepContext
  ////////////////////////////////////////////////////////////////////////

  RepContext::RepContext(SimilarityPair pair, std::uint64_t max_degree) : pair_(std::move(pair)) {
    std::uint64_t m = 0;
    try {
      m = pair_.index();
    } catch (std::overflow_error const&) {
      throw std::length_error("representation degree does not fit in 64 bits");
    }
    if (m > max_degree) {
      throw std::length_error("representation degree " + std::to_string(m) + " exceeds bound "
                              + std::to_string(max_degree));
    }
    x_reps_ = pair_.y().transversal();
    for (std::size_t k = 0; k < x_reps_.size(); ++k) {
      if (pair_.y().reduce(x_reps_[k]) != x_reps_[k]) {
        throw std::logic_error("lattice transversal is not made of reduced residues");
      }
      x_index_.emplace(x_reps_[k], k);
    }
    auto const a_reps = pair_.a0().transversal(ring(), max_degree);
    a_count_          = a_reps.size();
    transversal_.reserve(m);
    for (auto const& t : x_reps_) {
      for (auto const& s : a_reps) {
        // x^t a^s
        transversal_.emplace_back(s.shifted(-t), t);
      }
    }
    if (transversal_.size() != m || !transversal_.front().is_identity()) {
      throw std::logic_error("transversal construction is inconsistent with the index");
    }
  }

  std::optional<std::uint32_t> RepContext::letter_of(WreathElement const& g) const {
    auto r = resolve(g);
    if (transversal_[r.letter] == g) {
      return r.letter;
    }
    return std::nullopt;
  }

  bool RepContext::in_subgroup(WreathElement const& g) const {
    auto const& y = g.x_part();
    if (!pair_.y().contains(y)) {
      return false;
    }
    return ideal_contains(pair_.a0(), g.a_part() - pair_.deformation_part(y));
  }

  CosetResolution RepContext::resolve(WreathElement const& g) const {
    auto const& V  = g.x_part();
    auto const  t  = pair_.y().reduce(V);
    auto const  it = x_index_.find(t);
    if (it == x_index_.end()) {
      throw std::logic_error("coset resolution: residue " + monomial_string(t)
                             + " missing from transversal");
    }
    auto const y = V - t;
    // g t'^{-1} = (F - s X^{-V}, y) lies in H iff s = (F - D(y)) X^V mod A0.
    auto const target = (g.a_part() - pair_.deformation_part(y)).shifted(V);
    auto const s_idx  = pair_.a0().residue_index(target);
    auto const letter = static_cast<std::uint32_t>(it->second * a_count_ + s_idx);
    return {letter, g * transversal_[letter].inverse()};
  }

  CosetResolution RepContext::resolve_by_scan(WreathElement const& g) const {
    for (std::uint32_t k = 0; k < transversal_.size(); ++k) {
      auto c = g * transversal_[k].inverse();
      if (in_subgroup(c)) {
        return {k, std::move(c)};
      }
    }
    throw std::logic_error("coset resolution: no transversal element matches");
  }

  WreathElement RepContext::image(WreathElement const& h) const {
    auto const& y = h.x_part();
    if (!pair_.y().contains(y)) {
      throw std::domain_error("f: element " + element_name(h) + " is not in H");
    }
    auto a0 = h.a_part() - pair_.deformation_part(y);
    if (!ideal_contains(pair_.a0(), a0)) {
      throw std::domain_error("f: element " + element_name(h) + " is not in H");
    }
    return WreathElement(mu_apply(pair_, a0), pair_.alpha(y));
  }

  ////////////////////////////////////////////////////////////////////////
  // Recursion
  ////////////////////////////////////////////////////////////////////////

  Permutation coset_action(RepContext const& ctx, WreathElement const& g) {
    auto const&                m = ctx.degree();
    std::vector<std::uint32_t> images(m);
    for (std::size_t i = 0; i < m; ++i) {
      images[i] = ctx.resolve(ctx.transversal()[i] * g).letter;
    }
    return Permutation(std::move(images));
  }

  Decomposition decompose(RepContext const& ctx, WreathElement const& g) {
    auto const&                m = ctx.degree();
    std::vector<std::uint32_t> images(m);
    std::vector<WreathElement> children;
    children.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto r    = ctx.resolve(ctx.transversal()[i] * g);
      images[i] = r.letter;
      children.push_back(ctx.image(r.cofactor));
    }
    return {std::move(children), Permutation(std::move(images))};
  }

  Decomposition compose(Decomposition const& g, Decomposition const& h) {
    if (g.children.size() != h.children.size()) {
      throw std::invalid_argument("compose: degrees differ");
    }
    std::vector<WreathElement> children;
    children.reserve(g.children.size());
    for (std::uint32_t i = 0; i < g.children.size(); ++i) {
      children.push_back(g.children[i] * h.children[g.perm(i)]);
    }
    return {std::move(children), g.perm * h.perm};
  }

  Vertex parse_vertex(std::string_view text, std::size_t degree) {
    Vertex v;
    if (degree <= 10) {
      for (std::size_t k = 0; k < text.size(); ++k) {
        char ch = text[k];
        if (ch < '0' || ch > '9' || static_cast<std::size_t>(ch - '0') >= degree) {
          throw ParseError(std::string("vertex letter '") + ch + "' is not in [0, "
                               + std::to_string(degree) + ")",
                           k);
        }
        v.push_back(static_cast<std::uint32_t>(ch - '0'));
      }
      return v;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto end = text.find(',', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      auto          piece = text.substr(pos, end - pos);
      std::uint64_t value = 0;
      if (piece.empty()) {
        throw ParseError("empty vertex letter", pos);
      }
      for (std::size_t k = 0; k < piece.size(); ++k) {
        if (piece[k] < '0' || piece[k] > '9') {
          throw ParseError("vertex letters must be decimal", pos + k);
        }
        value = value * 10 + static_cast<std::uint64_t>(piece[k] - '0');
        if (value >= degree) {
          throw ParseError("vertex letter out of range", pos);
        }
      }
      v.push_back(static_cast<std::uint32_t>(value));
      pos = end + 1;
    }
    return v;
  }

  std::string format_vertex(Vertex const& v, std::size_t degree) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (degree <= 10) {
        out += static_cast<char>('0' + v[k]);
      } else {
        if (k) {
          out += ',';
        }
        out += std::to_string(v[k]);
      }
    }
    return out;
  }

  Vertex act_on_vertex(RepContext const& ctx, WreathElement const& g, Vertex const& v) {
    Vertex out;
    out.reserve(v.size());
    auto current = g;
    for (auto letter : v) {
      if (letter >= ctx.degree()) {
        throw std::out_of_range("vertex letter " + std::to_string(letter) + " out of range");
      }
      auto d = decompose(ctx, current);
      out.push_back(d.perm(letter));
      current = std::move(d.children[letter]);
    }
    return out;
  }

  std::string act_on_vertex(RepContext const& ctx, WreathElement const& g, std::string_view v) {
    return format_vertex(act_on_vertex(ctx, g, parse_vertex(v, ctx.degree())), ctx.degree());
  }

  Portrait portrait(RepContext const& ctx, WreathElement const& g, std::size_t depth) {
    Portrait out;
    out.depth  = depth;
    out.degree = ctx.degree();
    std::unordered_map<WreathElement, Decomposition> memo;
    auto decomposition = [&](WreathElement const& h) -> Decomposition const& {
      auto it = memo.find(h);
      if (it == memo.end()) {
        it = memo.emplace(h, decompose(ctx, h)).first;
      }
      return it->second;
    };
    auto visit = [&](auto&& self, WreathElement const& h, Vertex& prefix) -> void {
      if (prefix.size() >= depth) {
        return;
      }
      auto const& d = decomposition(h);
      out.labels.emplace(prefix, d.perm);
      for (std::uint32_t l = 0; l < d.children.size(); ++l) {
        prefix.push_back(l);
        self(self, d.children[l], prefix);
        prefix.pop_back();
      }
    };
    Vertex root;
    visit(visit, g, root);
    return out;
  }

  std::string to_text(Portrait const& p) {
    std::ostringstream os;
    for (auto const& [v, perm] : p.labels) {
      os << std::string(2 * v.size(), ' ') << (v.empty() ? "root" : format_vertex(v, p.degree))
         << ": " << perm.cycles() << '\n';
    }
    return os.str();
  }

  std::string to_string(Triviality t) {
    switch (t) {
      case Triviality::trivial:
        return "Trivial";
      case Triviality::non_trivial:
        return "NonTrivial";
      case Triviality::unknown:
        return "Unknown";
    }
    return "?";
  }

  ////////////////////////////////////////////////////////////////////////
  // Closed forms
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void compare_generator(RepContext const& ctx, std::string const& name, WreathElement const& g,
                           Decomposition const& expected, ClosedFormReport& report) {
      auto computed = decompose(ctx, g);
      ++report.checked;
      if (computed.perm != expected.perm) {
        report.mismatches.push_back(
            {name, static_cast<std::uint32_t>(ctx.degree()), expected.perm.cycles(),
             computed.perm.cycles()});
      }
      for (std::uint32_t l = 0; l < computed.children.size(); ++l) {
        if (computed.children[l] != expected.children[l]) {
          report.mismatches.push_back(
              {name, l, element_name(expected.children[l]), element_name(computed.children[l])});
        }
      }
    }

    bool is_standard_y(Lattice const& y, std::uint32_t p) {
      auto const d = y.rank();
      auto       b = IntMatrix::identity(d);
      b(0, 0)      = p;
      return y.same_subgroup(Lattice(b));
    }

  }  // namespace

  ClosedFormReport verify_closed_form(RepContext const& ctx) {
    ClosedFormReport report;
    auto const&      pair = ctx.pair();
    auto const&      ring = ctx.ring();
    auto const       p    = ring.p();
    auto const       d    = ring.rank();
    auto const       e    = WreathElement::identity(ring);
    auto const       a    = WreathElement::a(ring);
    if (pair.has_deformation() || pair.endo().is_twisted()) {
      return report;
    }

    if (auto const* dp = std::get_if<DegreeP>(&pair.endo().mu_spec())) {
      if (!pair.y().same_subgroup(Lattice::full(1))) {
        return report;
      }
      report.applicable = true;
      report.family     = "degree-p";
      std::vector<std::uint32_t> shift(p), scale(p);
      for (std::uint32_t i = 0; i < p; ++i) {
        shift[i] = (i + 1) % p;
        scale[i] = ring.mul(i, dp->c);
      }
      compare_generator(ctx, "a", a, {std::vector<WreathElement>(p, e), Permutation(shift)},
                        report);
      // x = (x^n, x^n a^u, ..., x^n a^{(p-1)u}) with i -> ic.
      auto const                 x  = WreathElement::x(ring, 0);
      auto const                 xn = x.pow(dp->n);
      std::vector<WreathElement> children;
      for (std::uint32_t i = 0; i < p; ++i) {
        children.push_back(xn * WreathElement::from_a_part(dp->u.scaled(i)));
      }
      compare_generator(ctx, "x", x, {std::move(children), Permutation(scale)}, report);
      return report;
    }

    if (!is_standard_y(pair.y(), p)) {
      return report;
    }
    report.applicable = true;
    report.family     = "degree-p^2";
    auto const m      = static_cast<std::uint32_t>(p * p);
    auto letter       = [p](std::uint32_t i, std::uint32_t j) { return p * i + j; };

    std::vector<std::uint32_t> a_perm(m), x1_perm(m);
    for (std::uint32_t i = 0; i < p; ++i) {
      for (std::uint32_t j = 0; j < p; ++j) {
        a_perm[letter(i, j)]  = letter(i, (j + 1) % p);
        x1_perm[letter(i, j)] = letter((i + 1) % p, j);
      }
    }
    compare_generator(ctx, "a", a, {std::vector<WreathElement>(m, e), Permutation(a_perm)},
                      report);

    // (x1)_{ij} = (a^j)^{x2^{-1}}, times x2 when i = p - 1.
    auto const                 x2 = WreathElement::x(ring, 1);
    std::vector<WreathElement> x1_children(m, e);
    for (std::uint32_t i = 0; i < p; ++i) {
      for (std::uint32_t j = 0; j < p; ++j) {
        auto c = a.pow(j).conjugated_by(x2.inverse());
        if (i == p - 1) {
          c *= x2;
        }
        x1_children[letter(i, j)] = c;
      }
    }
    compare_generator(ctx, "x1", WreathElement::x(ring, 0),
                      {std::move(x1_children), Permutation(x1_perm)}, report);

    // (x_l)_{ij} = (a^{-ij})^{x2^{-1} x_{l+1}^{-1} (x_{l+1} - 1)} x_{l+1}.
    for (std::size_t l = 1; l < d; ++l) {
      auto const next = (l + 1) % d;
      auto const xn   = LaurentPoly::variable(ring, next);
      auto const w    = parse_poly(ring, "x2^-1")
                     * LaurentPoly::monomial(ring, ExponentVector::unit(d, next).scaled(-1))
                     * (xn - LaurentPoly::one(ring));
      std::vector<WreathElement> children(m, e);
      for (std::uint32_t i = 0; i < p; ++i) {
        for (std::uint32_t j = 0; j < p; ++j) {
          auto coeff = -static_cast<std::int64_t>(i) * static_cast<std::int64_t>(j);
          children[letter(i, j)]
              = WreathElement::from_a_part(w.scaled(coeff)) * WreathElement::x(ring, next);
        }
      }
      compare_generator(ctx, "x" + std::to_string(l + 1), WreathElement::x(ring, l),
                        {std::move(children), Permutation::identity(m)}, report);
    }
    return report;
  }

}  // namespace wreathrep
