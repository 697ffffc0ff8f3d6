#include "wreathrep/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "wreathrep/checked.hpp"

namespace wreathrep {

  namespace {
    void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        m(dst, c) = checked_sub(m(dst, c), checked_mul(k, m(src, c)));
      }
    }

    void row_swap(IntMatrix& m, std::size_t a, std::size_t b) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        std::swap(m(a, c), m(b, c));
      }
    }

    IntMatrix hermite_normal_form(IntMatrix m) {
      std::size_t const n = m.rows();
      for (std::size_t col = 0; col < n; ++col) {
        // Euclid on the column among rows col..n-1.
        while (true) {
          std::size_t pivot = n;
          for (std::size_t r = col; r < n; ++r) {
            if (m(r, col) != 0
                && (pivot == n
                    || std::abs(m(r, col)) < std::abs(m(pivot, col)))) {
              pivot = r;
            }
          }
          if (pivot == n) {
            throw std::invalid_argument("lattice basis is singular");
          }
          row_swap(m, col, pivot);
          bool done = true;
          for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col) != 0) {
              row_axpy(m, r, col, m(r, col) / m(col, col));
              done = done && m(r, col) == 0;
            }
          }
          if (done) {
            break;
          }
        }
        if (m(col, col) < 0) {
          for (std::size_t c = 0; c < n; ++c) {
            m(col, c) = checked_neg(m(col, c));
          }
        }
        for (std::size_t r = 0; r < col; ++r) {
          row_axpy(m, r, col, floor_div(m(r, col), m(col, col)));
        }
      }
      return m;
    }
  }  // namespace

  Lattice::Lattice(IntMatrix basis) : basis_(std::move(basis)) {
    if (!basis_.is_square() || basis_.rows() == 0) {
      throw std::invalid_argument("lattice basis must be a nonempty square matrix");
    }
    det_ = basis_.determinant();
    if (det_ == 0) {
      throw std::invalid_argument("lattice basis is singular (infinite index)");
    }
    index_    = det_ < 0 ? -det_ : det_;
    hnf_      = hermite_normal_form(basis_);
    adjugate_ = basis_.adjugate();
  }

  Lattice Lattice::full(std::size_t rank) {
    return Lattice(IntMatrix::identity(rank));
  }

  std::optional<std::vector<std::int64_t>> Lattice::coordinates(ExponentVector const& v) const {
    if (v.size() != rank()) {
      throw ContextMismatch("vector rank differs from lattice rank");
    }
    // v = c * B  <=>  c = v * adj(B) / det(B).
    auto scaled = adjugate_.left_apply(v.values());
    for (auto& x : scaled) {
      if (x % det_ != 0) {
        return std::nullopt;
      }
      x /= det_;
    }
    return scaled;
  }

  bool Lattice::contains(ExponentVector const& v) const {
    return coordinates(v).has_value();
  }

  ExponentVector Lattice::combine(std::vector<std::int64_t> const& coords) const {
    return ExponentVector(basis_.left_apply(coords));
  }

  ExponentVector Lattice::reduce(ExponentVector const& v) const {
    if (v.size() != rank()) {
      throw ContextMismatch("vector rank differs from lattice rank");
    }
    std::vector<std::int64_t> r = v.values();
    for (std::size_t i = 0; i < rank(); ++i) {
      auto const q = floor_div(r[i], hnf_(i, i));
      if (q != 0) {
        for (std::size_t c = i; c < rank(); ++c) {
          r[c] = checked_sub(r[c], checked_mul(q, hnf_(i, c)));
        }
      }
    }
    return ExponentVector(std::move(r));
  }

  std::vector<ExponentVector> Lattice::transversal() const {
    std::vector<ExponentVector> out;
    out.reserve(static_cast<std::size_t>(index_));
    std::vector<std::int64_t> digit(rank(), 0);
    while (true) {
      out.emplace_back(digit);
      std::size_t i = 0;
      for (; i < rank(); ++i) {
        if (++digit[i] < hnf_(i, i)) {
          break;
        }
        digit[i] = 0;
      }
      if (i == rank()) {
        break;
      }
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
      auto const sa = std::accumulate(a.begin(), a.end(), std::int64_t{0});
      auto const sb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
      return sa != sb ? sa < sb : a < b;
    });
    return out;
  }

  bool lattice_membership(Lattice const& y, ExponentVector const& v) {
    return y.contains(v);
  }

  std::vector<ExponentVector> lattice_transversal(Lattice const& y) {
    return y.transversal();
  }

}  // namespace wreathrep
