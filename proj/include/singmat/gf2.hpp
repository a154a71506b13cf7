#pragma once

#include <bit>
#include <cstdint>
#include <span>

#include "singmat/field.hpp"

// Bit-packed kernels for F_2: one machine word holds a row of up to 64
// columns, bit k = column k. Row reduction is XOR with leading-bit pivoting.
namespace singmat::gf2 {

inline std::uint64_t pack_row(std::span<const elem_t> row) {
  std::uint64_t w = 0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    w |= std::uint64_t(row[k] & 1u) << k;
  }
  return w;
}

// Rank of the span of packed rows. Non-destructive; O(rows * rank) XORs.
inline int rank_words(std::span<const std::uint64_t> rows) {
  std::uint64_t pivot[64] = {};
  int rank = 0;
  for (std::uint64_t row : rows) {
    while (row != 0) {
      int b = 63 - std::countl_zero(row);
      if (pivot[b] == 0) {
        pivot[b] = row;
        ++rank;
        break;
      }
      row ^= pivot[b];
    }
  }
  return rank;
}

}  // namespace singmat::gf2
