#pragma once

#include <cstdint>
#include <vector>

#include "singmat/errors.hpp"

namespace singmat {

// A field element, always kept reduced into [0, q). q <= 65521 so products
// fit comfortably in 32 bits.
using elem_t = std::uint16_t;
using Vec = std::vector<elem_t>;

bool is_prime(std::uint32_t v);

// Arithmetic context for the prime field F_q. Immutable after construction,
// cheap to copy, safe to share across threads.
class FieldCtx {
 public:
  // q must be prime, 2 <= q <= 65521; throws std::invalid_argument otherwise.
  explicit FieldCtx(std::uint32_t q);

  std::uint32_t order() const { return q_; }

  elem_t add(elem_t a, elem_t b) const {
    std::uint32_t s = std::uint32_t(a) + b;
    return elem_t(s >= q_ ? s - q_ : s);
  }

  elem_t sub(elem_t a, elem_t b) const {
    return elem_t(a >= b ? a - b : a + q_ - b);
  }

  elem_t neg(elem_t a) const { return elem_t(a == 0 ? 0 : q_ - a); }

  elem_t mul(elem_t a, elem_t b) const {
    return elem_t((std::uint32_t(a) * b) % q_);
  }

  // Throws ZeroInverseError for a = 0.
  elem_t inv(elem_t a) const;

  elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }

  // Reduce an arbitrary signed integer into [0, q).
  elem_t reduce(long long v) const {
    long long r = v % static_cast<long long>(q_);
    if (r < 0) r += q_;
    return elem_t(r);
  }

  bool operator==(const FieldCtx&) const = default;

 private:
  std::uint32_t q_;
};

}  // namespace singmat
