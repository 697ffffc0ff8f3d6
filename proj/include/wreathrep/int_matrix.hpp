#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace wreathrep {

  // Dense row-major integer matrix. Rows of a basis matrix are the generators
  // of a lattice; a substitution matrix maps the exponent row vector e to e*M.
  class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::vector<std::vector<std::int64_t>> const& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool        is_square() const noexcept { return rows_ == cols_; }

    std::int64_t& operator()(std::size_t r, std::size_t c) {
      return data_[r * cols_ + c];
    }
    std::int64_t operator()(std::size_t r, std::size_t c) const {
      return data_[r * cols_ + c];
    }

    std::vector<std::int64_t> row(std::size_t r) const;
    std::vector<std::vector<std::int64_t>> to_rows() const;

    bool operator==(IntMatrix const&) const = default;

    IntMatrix operator*(IntMatrix const& rhs) const;
    // Row vector times matrix.
    std::vector<std::int64_t> left_apply(std::vector<std::int64_t> const& v) const;

    // Exact determinant (fraction-free elimination, overflow checked).
    std::int64_t determinant() const;
    // Adjugate: adj(M) * M = det(M) * I.
    IntMatrix adjugate() const;
    // Inverse of a unimodular matrix; throws std::invalid_argument otherwise.
    IntMatrix unimodular_inverse() const;

    std::string to_string() const;

   private:
    std::size_t               rows_ = 0;
    std::size_t               cols_ = 0;
    std::vector<std::int64_t> data_;
  };

}  // namespace wreathrep
