#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wreathrep/int_matrix.hpp"
#include "wreathrep/laurent.hpp"

namespace wreathrep {

  // Finite-index sublattice Y of Z^d, given by a nonsingular basis (rows).
  class Lattice {
   public:
    explicit Lattice(IntMatrix basis);

    static Lattice full(std::size_t rank);

    IntMatrix const& basis() const noexcept { return basis_; }
    // Upper-triangular Hermite normal form with positive pivots.
    IntMatrix const& hermite() const noexcept { return hnf_; }
    std::size_t      rank() const noexcept { return basis_.rows(); }
    std::int64_t     index() const noexcept { return index_; }

    bool contains(ExponentVector const& v) const;
    // Integer coordinates of v with respect to basis(); nullopt if v is not in Y.
    std::optional<std::vector<std::int64_t>> coordinates(ExponentVector const& v) const;
    ExponentVector combine(std::vector<std::int64_t> const& coords) const;
    // Canonical coset representative: r with v - r in Y and 0 <= r_i < pivot_i.
    ExponentVector reduce(ExponentVector const& v) const;
    // Exactly index() representatives, graded-lexicographic, zero first.
    std::vector<ExponentVector> transversal() const;

    // Same subgroup of Z^d (possibly different bases).
    bool same_subgroup(Lattice const& o) const { return hnf_ == o.hnf_; }
    // Same basis, not merely the same subgroup.
    bool operator==(Lattice const& o) const { return basis_ == o.basis_; }

   private:
    IntMatrix    basis_;
    IntMatrix    hnf_;
    IntMatrix    adjugate_;
    std::int64_t det_;
    std::int64_t index_;
  };

  bool lattice_membership(Lattice const& y, ExponentVector const& v);
  std::vector<ExponentVector> lattice_transversal(Lattice const& y);

}  // namespace wreathrep
