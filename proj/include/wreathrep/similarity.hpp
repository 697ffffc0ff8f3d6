#pragma once

// Similarity pairs (H, f) for G_{p,d} in module form.
//
// H = A0 <v_i y_i> where A0 is an ideal of A = GF(p)[X], y_i a basis of a
// finite-index lattice Y <= X and v_i the deformation values. The virtual
// endomorphism is the pair (mu, alpha): mu on A0, alpha on Y, with
// f(a0 * prod (v_i y_i)^{n_i}) = a0^mu * alpha(sum n_i y_i).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "wreathrep/int_matrix.hpp"
#include "wreathrep/laurent.hpp"
#include "wreathrep/lattice.hpp"
#include "wreathrep/wreath.hpp"

namespace wreathrep {

  ////////////////////////////////////////////////////////////////////////
  // Ideals of A
  ////////////////////////////////////////////////////////////////////////

  // Kernel of evaluation at a point of (GF(p)^*)^d; the augmentation ideal
  // is the point (1, ..., 1).
  struct EvaluationKernel {
    std::vector<Scalar> point;
    bool operator==(EvaluationKernel const&) const = default;
  };

  // The ideal generated by x_i^v - 1 for all i.
  struct ExponentReduction {
    std::int64_t v = 1;
    bool operator==(ExponentReduction const&) const = default;
  };

  class IdealSpec {
   public:
    using Kind = std::variant<EvaluationKernel, ExponentReduction>;

    explicit IdealSpec(Kind kind) : kind_(std::move(kind)) {}
    static IdealSpec evaluation(std::vector<Scalar> point) {
      return IdealSpec(EvaluationKernel{std::move(point)});
    }
    static IdealSpec augmentation(std::size_t rank) {
      return evaluation(std::vector<Scalar>(rank, 1));
    }
    static IdealSpec exponent_reduction(std::int64_t v) {
      return IdealSpec(ExponentReduction{v});
    }

    Kind const& kind() const noexcept { return kind_; }
    bool        is_evaluation() const noexcept {
      return std::holds_alternative<EvaluationKernel>(kind_);
    }
    bool is_augmentation() const noexcept;

    void validate(Ring const& ring) const;

    // Canonical representative of f + A0 (element of the transversal).
    LaurentPoly residue(LaurentPoly const& f) const;
    // Position of residue(f) in transversal().
    std::uint64_t residue_index(LaurentPoly const& f) const;
    // [A : A0]; throws std::overflow_error if it does not fit.
    std::uint64_t index(Ring const& ring) const;
    // Transversal of A0 in A, zero first; throws std::length_error past bound.
    std::vector<LaurentPoly> transversal(Ring const& ring, std::uint64_t bound) const;

    // The image of this ideal under the automorphism e -> e * gamma of X.
    IdealSpec transported(Ring const& ring, IntMatrix const& gamma) const;

    std::string describe() const;

    bool operator==(IdealSpec const&) const = default;

   private:
    Kind kind_;
  };

  bool ideal_contains(IdealSpec const& spec, LaurentPoly const& f);

  ////////////////////////////////////////////////////////////////////////
  // Virtual endomorphisms
  ////////////////////////////////////////////////////////////////////////

  // Rank 1, A0 = <x - c>: mu(r(x)(x - c)) = r(x^n) u(x), alpha: x -> x^n.
  struct DegreeP {
    std::int64_t n;
    LaurentPoly  u;
    Scalar       c;
    bool operator==(DegreeP const&) const = default;
  };

  // Rank d >= 2, A0 = augmentation ideal, Y = <x1^p, x2, ..., xd>,
  // alpha: x1^p -> x2, x_j -> x_{j+1}, x_d -> x1, and
  // mu(X^e - 1) = u0 x2^{u1} z^alpha where e_1 = u0 + u1 p and z is the
  // x2..xd part of X^e.
  struct AugmentationClosedForm {
    bool operator==(AugmentationClosedForm const&) const = default;
  };

  class VirtualEndo {
   public:
    using MuSpec = std::variant<DegreeP, AugmentationClosedForm>;

    // alpha: rows are the images of the lattice basis rows. twist is the
    // automorphism of X the closed-form mu has been transported through.
    VirtualEndo(IntMatrix alpha, MuSpec mu, IntMatrix twist);
    VirtualEndo(IntMatrix alpha, MuSpec mu);

    IntMatrix const& alpha_matrix() const noexcept { return alpha_; }
    MuSpec const&    mu_spec() const noexcept { return mu_; }
    IntMatrix const& twist() const noexcept { return twist_; }
    bool             is_twisted() const { return twist_ != IntMatrix::identity(twist_.rows()); }

    bool operator==(VirtualEndo const&) const = default;

   private:
    IntMatrix alpha_;
    MuSpec    mu_;
    IntMatrix twist_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Similarity pairs
  ////////////////////////////////////////////////////////////////////////

  class SimilarityPair {
   public:
    // Validates every invariant; throws std::invalid_argument.
    SimilarityPair(Ring ring, IdealSpec a0, Lattice y, std::vector<LaurentPoly> deformation,
                   VirtualEndo endo);

    Ring const&                     ring() const noexcept { return ring_; }
    IdealSpec const&                a0() const noexcept { return a0_; }
    Lattice const&                  y() const noexcept { return y_; }
    std::vector<LaurentPoly> const& deformation() const noexcept { return deformation_; }
    VirtualEndo const&              endo() const noexcept { return endo_; }

    bool          has_deformation() const noexcept;
    std::uint64_t index() const;  // [A:A0] * [X:Y]

    // alpha on Y; throws std::domain_error outside Y.
    ExponentVector alpha(ExponentVector const& y) const;
    // Ring homomorphism alpha: k[Y] -> k[X].
    LaurentPoly alpha(LaurentPoly const& w) const;
    // A-part of prod_i (v_i y_i)^{n_i} (fixed order i = 1..d) for y = sum n_i y_i.
    LaurentPoly deformation_part(ExponentVector const& y) const;
    // The generator v_i y_i of H.
    WreathElement deformed_generator(std::size_t i) const;

    bool operator==(SimilarityPair const&) const = default;

   private:
    Ring                     ring_;
    IdealSpec                a0_;
    Lattice                  y_;
    std::vector<LaurentPoly> deformation_;
    VirtualEndo              endo_;
  };

  // mu on A0; throws std::domain_error when f is outside the ideal.
  LaurentPoly mu_apply(SimilarityPair const& pair, LaurentPoly const& f);

  // The unique decomposition of an element of the augmentation ideal
  //   nu = b0 + sum_i b_i (x1^i - 1) + sum_z a_z (z - 1)
  //        + sum_{i,z} b_{i,z} (z - 1)(x1^i - 1)
  // with b0 in the augmentation ideal of k<x1^p> and every other
  // coefficient in k<x1^p>; z ranges over nonzero x2..xd monomials.
  struct AugmentationDecomposition {
    LaurentPoly                                          b0;
    std::map<std::int64_t, LaurentPoly>                  b;    // i in [1, p)
    std::map<ExponentVector, LaurentPoly>                a;    // z != 0
    std::map<std::pair<std::int64_t, ExponentVector>, LaurentPoly> bz;

    LaurentPoly reassemble(Ring const& ring) const;
  };

  AugmentationDecomposition decompose_augmentation(Ring const& ring, LaurentPoly const& nu);

  // Independent route to mu for the augmentation family: explicit
  // decomposition, then mu(x1^i - 1) = i, mu(B') = 0 and the skew rule.
  LaurentPoly mu_apply_via_decomposition(SimilarityPair const& pair, LaurentPoly const& f);

  struct SkewFailure {
    LaurentPoly w;
    LaurentPoly nu;
    LaurentPoly lhs;
    LaurentPoly rhs;
  };

  struct SkewReport {
    std::size_t              trials = 0;
    std::vector<SkewFailure> failures;
    bool                     passed() const noexcept { return failures.empty(); }
  };

  // Random elements used by the randomized checkers.
  LaurentPoly random_poly(Ring const& ring, std::mt19937_64& rng, std::size_t max_terms = 6,
                          std::int64_t max_exp = 4);
  LaurentPoly random_ideal_element(Ring const& ring, IdealSpec const& a0, std::mt19937_64& rng);
  LaurentPoly random_lattice_poly(Ring const& ring, Lattice const& y, std::mt19937_64& rng);

  // (w . nu)^mu == w^alpha nu^mu for random w in k[Y], nu in A0.
  SkewReport check_skew_condition(SimilarityPair const& pair, std::size_t trials,
                                  std::uint64_t seed);

  // (H, f) -> (A0 Y, f|A0 together with alpha).
  SimilarityPair replace_pair(SimilarityPair const& pair);
  // Transport through the automorphism e -> e * gamma of X.
  SimilarityPair twist_pair(SimilarityPair const& pair, IntMatrix const& gamma);

  ////////////////////////////////////////////////////////////////////////
  // Simplicity
  ////////////////////////////////////////////////////////////////////////

  enum class Simplicity { simple, not_simple, inconclusive };

  struct SimplicityVerdict {
    Simplicity                 verdict;
    std::string                reason;
    std::string                witness;            // name of a mu-invariant ideal
    std::optional<LaurentPoly> witness_generator;  // principal generator
  };

  // Degree-p family (rank 1, A0 = <x - c>).
  SimplicityVerdict check_simplicity_degree_p(Ring const& ring, std::int64_t n,
                                              LaurentPoly const& u, Scalar c);

  std::string to_string(Simplicity s);

  // Assignments (v_1, ..., v_d) from the transversal of A0 in A with
  // [y_i, w_j] in [y_j, w_i] A0 where w_i = v_i^{y_i}. Zero deformation first.
  std::vector<std::vector<LaurentPoly>> enumerate_deformations(Ring const& ring,
                                                               IdealSpec const& a0,
                                                               Lattice const& y,
                                                               std::uint64_t transversal_bound
                                                               = 4096);

  struct IdealWitness {
    LaurentPoly              seed;
    std::vector<LaurentPoly> generators;  // ideal generators, all in A0
  };

  // Bounded search for a nonzero mu-invariant ideal inside A0 containing one
  // of the seeds.
  std::optional<IdealWitness> invariant_ideal_witness(SimilarityPair const& pair,
                                                      std::vector<LaurentPoly> const& seeds,
                                                      std::size_t iteration_bound = 10000);

}  // namespace wreathrep
