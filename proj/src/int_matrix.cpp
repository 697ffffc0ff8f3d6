#include "wreathrep/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "wreathrep/checked.hpp"

namespace wreathrep {

  IntMatrix::IntMatrix(
      std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (auto const& r : rows) {
      if (r.size() != cols_) {
        throw std::invalid_argument("ragged matrix literal");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  IntMatrix IntMatrix::from_rows(std::vector<std::vector<std::int64_t>> const& rows) {
    IntMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    for (auto const& r : rows) {
      if (r.size() != m.cols_) {
        throw std::invalid_argument("ragged matrix rows");
      }
      m.data_.insert(m.data_.end(), r.begin(), r.end());
    }
    return m;
  }

  std::vector<std::int64_t> IntMatrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      out.push_back(row(r));
    }
    return out;
  }

  IntMatrix IntMatrix::operator*(IntMatrix const& rhs) const {
    if (cols_ != rhs.rows_) {
      throw std::invalid_argument("matrix dimension mismatch");
    }
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        auto const a = (*this)(i, k);
        if (a == 0) {
          continue;
        }
        for (std::size_t j = 0; j < rhs.cols_; ++j) {
          out(i, j) = checked_add(out(i, j), checked_mul(a, rhs(k, j)));
        }
      }
    }
    return out;
  }

  std::vector<std::int64_t> IntMatrix::left_apply(std::vector<std::int64_t> const& v) const {
    if (v.size() != rows_) {
      throw std::invalid_argument("vector/matrix dimension mismatch");
    }
    std::vector<std::int64_t> out(cols_, 0);
    for (std::size_t k = 0; k < rows_; ++k) {
      if (v[k] == 0) {
        continue;
      }
      for (std::size_t j = 0; j < cols_; ++j) {
        out[j] = checked_add(out[j], checked_mul(v[k], (*this)(k, j)));
      }
    }
    return out;
  }

  std::int64_t IntMatrix::determinant() const {
    if (!is_square()) {
      throw std::invalid_argument("determinant of a non-square matrix");
    }
    std::size_t const n = rows_;
    if (n == 0) {
      return 1;
    }
    // Bareiss elimination; every intermediate is a minor, so exact.
    std::vector<__int128> a(data_.begin(), data_.end());
    auto at = [&](std::size_t r, std::size_t c) -> __int128& { return a[r * n + c]; };
    int      sign = 1;
    __int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (at(k, k) == 0) {
        std::size_t swap = k + 1;
        while (swap < n && at(swap, k) == 0) {
          ++swap;
        }
        if (swap == n) {
          return 0;
        }
        for (std::size_t c = 0; c < n; ++c) {
          std::swap(at(k, c), at(swap, c));
        }
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        }
      }
      prev = at(k, k);
    }
    __int128 det = at(n - 1, n - 1) * sign;
    if (det > INT64_MAX || det < INT64_MIN) {
      throw std::overflow_error("determinant overflow");
    }
    return static_cast<std::int64_t>(det);
  }

  IntMatrix IntMatrix::adjugate() const {
    if (!is_square()) {
      throw std::invalid_argument("adjugate of a non-square matrix");
    }
    std::size_t const n = rows_;
    IntMatrix         adj(n, n);
    if (n == 1) {
      adj(0, 0) = 1;
      return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 0, mr = 0; r < n; ++r) {
          if (r == i) {
            continue;
          }
          for (std::size_t c = 0, mc = 0; c < n; ++c) {
            if (c == j) {
              continue;
            }
            minor(mr, mc++) = (*this)(r, c);
          }
          ++mr;
        }
        auto const cof = minor.determinant();
        adj(j, i)      = ((i + j) % 2 == 0) ? cof : checked_neg(cof);
      }
    }
    return adj;
  }

  IntMatrix IntMatrix::unimodular_inverse() const {
    auto const det = determinant();
    if (det != 1 && det != -1) {
      throw std::invalid_argument("matrix is not unimodular (det = "
                                  + std::to_string(det) + ")");
    }
    auto inv = adjugate();
    if (det == -1) {
      for (auto& x : inv.data_) {
        x = checked_neg(x);
      }
    }
    return inv;
  }

  std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < cols_; ++c) {
        os << (c ? "," : "") << (*this)(r, c);
      }
      os << ']';
    }
    os << ']';
    return os.str();
  }

}  // namespace wreathrep
