#include "singmat/field.hpp"

#include <stdexcept>
#include <string>

namespace singmat {

bool is_prime(std::uint32_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint32_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

FieldCtx::FieldCtx(std::uint32_t q) : q_(q) {
  if (q < 2 || q > 65521 || !is_prime(q)) {
    throw std::invalid_argument("field order must be a prime in [2, 65521], got " +
                                std::to_string(q));
  }
}

elem_t FieldCtx::inv(elem_t a) const {
  if (a == 0) throw ZeroInverseError();
  // Extended Euclid on (a, q).
  long long r0 = a, r1 = static_cast<long long>(q_);
  long long s0 = 1, s1 = 0;
  while (r1 != 0) {
    long long k = r0 / r1;
    long long r2 = r0 - k * r1;
    long long s2 = s0 - k * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  return reduce(s0);
}

}  // namespace singmat
