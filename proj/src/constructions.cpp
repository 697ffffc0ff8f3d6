#include "wreathrep/constructions.hpp"

#include <numeric>
#include <stdexcept>

namespace wreathrep {

  SimilarityPair degree_p_pair(std::uint32_t p, std::int64_t n, LaurentPoly const& u, Scalar c) {
    Ring ring(p, 1);
    if (u.ring() != ring) {
      throw std::invalid_argument("u must be a polynomial in one variable over GF(p)");
    }
    return SimilarityPair(ring, IdealSpec::evaluation({c}), Lattice::full(1), {},
                          VirtualEndo(IntMatrix{{n}}, DegreeP{n, u, c}));
  }

  SimilarityPair theorem2_pair(std::uint32_t p, std::int64_t n, LaurentPoly const& u, Scalar c) {
    Ring ring(p, 1);
    if (n == 0 || n % static_cast<std::int64_t>(p) == 0) {
      throw std::invalid_argument("theorem2 requires gcd(p, n) = 1 (got p = " + std::to_string(p)
                                  + ", n = " + std::to_string(n) + ")");
    }
    if (u.ring() != ring) {
      throw std::invalid_argument("u must be a polynomial in one variable over GF(p)");
    }
    if (c == 0 || c >= p) {
      throw std::invalid_argument("theorem2 requires 1 <= c <= p - 1");
    }
    if (evaluate(u, {c}) == 0) {
      throw std::invalid_argument("theorem2 requires u(" + std::to_string(c) + ") != 0 (u = "
                                  + to_string(u) + ")");
    }
    return degree_p_pair(p, n, u, c);
  }

  SimilarityPair theorem3_pair(std::uint32_t p, std::uint32_t j) {
    if (!is_prime(p)) {
      throw std::invalid_argument("p must be prime");
    }
    if (j < 1 || j >= p) {
      throw std::invalid_argument("theorem3 requires 1 <= j <= p - 1 (got j = " + std::to_string(j)
                                  + ")");
    }
    return degree_p_pair(p, 1, LaurentPoly::one(Ring(p, 1)), j);
  }

  SimilarityPair classical_lamplighter() { return theorem3_pair(2, 1); }

  SimilarityPair theorem4_pair(std::uint32_t p, std::size_t d) {
    if (d < 2) {
      throw std::invalid_argument("theorem4 requires d >= 2 (got d = " + std::to_string(d) + ")");
    }
    Ring      ring(p, d);
    IntMatrix basis = IntMatrix::identity(d);
    basis(0, 0)     = p;
    // x1^p -> x2, x_j -> x_{j+1}, x_d -> x1.
    IntMatrix alpha(d, d);
    alpha(0, 1) = 1;
    for (std::size_t j = 1; j + 1 < d; ++j) {
      alpha(j, j + 1) = 1;
    }
    alpha(d - 1, 0) = 1;
    return SimilarityPair(ring, IdealSpec::augmentation(d), Lattice(basis), {},
                          VirtualEndo(alpha, AugmentationClosedForm{}));
  }

  namespace {

    IntMatrix matrix_field(nlohmann::json const& j, char const* key, std::size_t d) {
      if (!j.contains(key)) {
        throw std::invalid_argument(std::string("pair: missing field '") + key + "'");
      }
      std::vector<std::vector<std::int64_t>> rows;
      try {
        rows = j.at(key).get<std::vector<std::vector<std::int64_t>>>();
      } catch (nlohmann::json::exception const&) {
        throw std::invalid_argument(std::string("pair: field '") + key
                                    + "' must be a matrix of integers");
      }
      if (rows.size() != d) {
        throw std::invalid_argument(std::string("pair: field '") + key + "' needs " + std::to_string(d)
                                    + " rows");
      }
      for (auto const& r : rows) {
        if (r.size() != d) {
          throw std::invalid_argument(std::string("pair: field '") + key + "' needs "
                                      + std::to_string(d) + " columns");
        }
      }
      return IntMatrix::from_rows(rows);
    }

    nlohmann::json matrix_json(IntMatrix const& m) { return m.to_rows(); }

  }  // namespace

  SimilarityPair pair_from_json(nlohmann::json const& j) {
    try {
      auto const p = j.at("p").get<std::uint32_t>();
      auto const d = j.at("d").get<std::size_t>();
      Ring       ring(p, d);

      auto const& ideal = j.at("ideal");
      auto const  kind  = ideal.at("kind").get<std::string>();
      std::optional<IdealSpec> a0;
      if (kind == "eval") {
        a0 = IdealSpec::evaluation(ideal.at("point").get<std::vector<Scalar>>());
      } else if (kind == "expred") {
        a0 = IdealSpec::exponent_reduction(ideal.at("v").get<std::int64_t>());
      } else {
        throw std::invalid_argument("pair: unknown ideal kind '" + kind + "'");
      }

      auto lattice = matrix_field(j, "lattice", d);
      auto alpha   = matrix_field(j, "alpha", d);
      auto twist   = j.contains("twist") ? matrix_field(j, "twist", d) : IntMatrix::identity(d);

      auto const& mu      = j.at("mu");
      auto const  mu_kind = mu.at("kind").get<std::string>();
      std::optional<VirtualEndo::MuSpec> spec;
      if (mu_kind == "degree_p") {
        Ring r1(p, 1);
        spec = DegreeP{mu.at("n").get<std::int64_t>(),
                       parse_poly(r1, mu.at("u").get<std::string>()), mu.at("c").get<Scalar>()};
      } else if (mu_kind == "augmentation") {
        spec = AugmentationClosedForm{};
      } else {
        throw std::invalid_argument("pair: unknown mu kind '" + mu_kind + "'");
      }

      std::vector<LaurentPoly> deformation;
      if (j.contains("deformation")) {
        for (auto const& s : j.at("deformation")) {
          deformation.push_back(parse_poly(ring, s.get<std::string>()));
        }
      }
      return SimilarityPair(ring, std::move(*a0), Lattice(lattice), std::move(deformation),
                            VirtualEndo(alpha, std::move(*spec), twist));
    } catch (nlohmann::json::exception const& e) {
      throw std::invalid_argument(std::string("pair: ") + e.what());
    }
  }

  nlohmann::json pair_to_json(SimilarityPair const& pair) {
    nlohmann::json j;
    j["p"] = pair.ring().p();
    j["d"] = pair.ring().rank();
    if (auto const* ek = std::get_if<EvaluationKernel>(&pair.a0().kind())) {
      j["ideal"] = {{"kind", "eval"}, {"point", ek->point}};
    } else {
      j["ideal"] = {{"kind", "expred"}, {"v", std::get<ExponentReduction>(pair.a0().kind()).v}};
    }
    j["lattice"] = matrix_json(pair.y().basis());
    j["alpha"]   = matrix_json(pair.endo().alpha_matrix());
    if (auto const* dp = std::get_if<DegreeP>(&pair.endo().mu_spec())) {
      j["mu"] = {{"kind", "degree_p"}, {"n", dp->n}, {"u", to_string(dp->u)}, {"c", dp->c}};
    } else {
      j["mu"] = {{"kind", "augmentation"}};
    }
    if (pair.has_deformation()) {
      auto& arr = j["deformation"] = nlohmann::json::array();
      for (auto const& v : pair.deformation()) {
        arr.push_back(to_string(v));
      }
    }
    if (pair.endo().is_twisted()) {
      j["twist"] = matrix_json(pair.endo().twist());
    }
    return j;
  }

}  // namespace wreathrep
