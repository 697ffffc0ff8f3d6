#pragma once

// Named similarity pairs and the JSON pair format.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "wreathrep/similarity.hpp"

namespace wreathrep {

  // Rank 1, A0 = <x - c>, Y = X, alpha: x -> x^n, mu(r (x - c)) = r(x^n) u.
  // No simplicity requirement; used directly for sabotaged pairs.
  SimilarityPair degree_p_pair(std::uint32_t p, std::int64_t n, LaurentPoly const& u, Scalar c);

  // Requires gcd(p, n) = 1 and u(c) != 0.
  SimilarityPair theorem2_pair(std::uint32_t p, std::int64_t n, LaurentPoly const& u,
                               Scalar c = 1);
  // n = 1, u = 1, c = j with 1 <= j <= p - 1.
  SimilarityPair theorem3_pair(std::uint32_t p, std::uint32_t j);
  // G_{2,1}, xi = (xi, xi a).
  SimilarityPair classical_lamplighter();
  // d >= 2: A0 = augmentation ideal, Y = <x1^p, x2, ..., xd>, degree p^2.
  SimilarityPair theorem4_pair(std::uint32_t p, std::size_t d);

  // Schema: p, d, ideal, lattice, alpha, mu, optional deformation and twist.
  // Throws std::invalid_argument with the offending field.
  SimilarityPair pair_from_json(nlohmann::json const& j);
  nlohmann::json pair_to_json(SimilarityPair const& pair);

}  // namespace wreathrep
