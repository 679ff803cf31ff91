#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "kummer/lattice/matrix.hpp"

namespace kummer::ns {

inline constexpr int kNumCurves = 16;

/// Parameters of Km(B) for a polarization M with M^2 = k(k+1).
struct KummerContext {
  explicit KummerContext(long k_) : k(k_) {
    if (k < 1) throw std::invalid_argument("k must be a positive integer");
    m_square = Integer(k) * Integer(k + 1);
    d = m_square / 2;
  }

  long k;
  Integer m_square;  // M^2 = k(k+1)
  Integer d;         // k(k+1)/2, so L^2 = 4d

  Integer l_square() const { return 2 * m_square; }
  Integer four_d() const { return 4 * d; }
};

/// Labels 1..16 <-> F_2^4 in lexicographic order: index = 8a + 4b + 2c + d + 1.
inline std::array<int, 4> label_bits(int index) {
  if (index < 1 || index > kNumCurves) throw std::out_of_range("curve index must be in 1..16");
  const int v = index - 1;
  return {(v >> 3) & 1, (v >> 2) & 1, (v >> 1) & 1, v & 1};
}

inline int label_index(int a, int b, int c, int d) { return 8 * a + 4 * b + 2 * c + d + 1; }

/// "0110" -> index
inline int label_index(const std::string& bits) {
  if (bits.size() != 4) throw std::invalid_argument("label must have four bits");
  return label_index(bits[0] - '0', bits[1] - '0', bits[2] - '0', bits[3] - '0');
}

inline std::string label_name(int index) {
  auto b = label_bits(index);
  return "K" + std::to_string(b[0]) + std::to_string(b[1]) + std::to_string(b[2]) + std::to_string(b[3]);
}

inline void check_curve_index(int t) {
  if (t < 1 || t > kNumCurves) throw std::out_of_range("curve index must be in 1..16");
}

}  // namespace kummer::ns
