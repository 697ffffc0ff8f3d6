#pragma once

#include <cstdint>
#include <stdexcept>

namespace wreathrep {

  inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
      throw std::overflow_error("integer overflow in addition");
    }
    return r;
  }

  inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) {
      throw std::overflow_error("integer overflow in subtraction");
    }
    return r;
  }

  inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
      throw std::overflow_error("integer overflow in multiplication");
    }
    return r;
  }

  inline std::int64_t checked_neg(std::int64_t a) {
    return checked_sub(0, a);
  }

  // Floor division and the matching non-negative remainder (b > 0).
  inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
      --q;
    }
    return q;
  }

  inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) {
      r += b;
    }
    return r;
  }

}  // namespace wreathrep
