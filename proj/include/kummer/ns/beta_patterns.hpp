#pragma once

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <string>
#include <vector>

#include "kummer/lattice/matrix.hpp"
#include "kummer/ns/ns_basis.hpp"
#include "kummer/report.hpp"

namespace kummer::ns {

/// Bit 0 flags alpha in 1/2 + Z, bit i flags beta_i in 1/2 + Z.
using ParityPattern = std::uint32_t;
inline constexpr int kPatternBits = kNsRank;

inline NsClass pattern_class(ParityPattern p) {
  NsClass c;
  if (p & 1u) c.alpha = Rational(1, 2);
  for (int i = 1; i <= kNumCurves; ++i)
    if (p >> i & 1u) c.beta_at(i) = Rational(1, 2);
  return c;
}

inline ParityPattern pattern_of(const NsClass& c) {
  ParityPattern p = 0;
  if (!is_integral(c.alpha)) p |= 1u;
  for (int i = 1; i <= kNumCurves; ++i)
    if (!is_integral(c.beta_at(i))) p |= 1u << i;
  return p;
}

inline int half_beta_count(ParityPattern p) { return std::bitset<32>(p >> 1).count(); }

struct PatternScan {
  std::vector<ParityPattern> members;  // ascending
  std::uint64_t scanned = 0;
};

/// All parity patterns whose class lies in NS.
///
/// A class with coefficients in (1/2)Z lies in NS iff its pattern does,
/// since L and the A_i are in NS. The scan walks patterns in Gray-code
/// order keeping den * V^{-1} * (2c) incrementally.
inline PatternScan scan_parity_patterns(const NsBasis& basis, std::uint64_t budget = kDefaultBudget) {
  const std::uint64_t total = std::uint64_t{1} << kPatternBits;
  if (total > budget) throw BudgetExceeded("parity pattern scan", total, budget);

  const RatMatrix& inv = basis.from_la();
  Integer den = 1;
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) den = lcm(den, Integer(inv(i, j).get_den()));
  // x = inv * (p / 2) is integral iff (den * inv) * p = 0 mod 2 den
  const Integer modulus = 2 * den;
  std::vector<IntVector> cols(kPatternBits, IntVector(kNsRank));
  for (int j = 0; j < kPatternBits; ++j)
    for (int i = 0; i < kNsRank; ++i) {
      // pattern bit j sets la-coordinate j to 1/2 (alpha) or -1/2 (A_j); only parity matters
      cols[j][i] = Rational(inv(i, j) * den).get_num();
    }

  PatternScan scan;
  IntVector acc(kNsRank, Integer(0));
  ParityPattern gray = 0;
  for (std::uint64_t n = 0; n < total; ++n) {
    if (n > 0) {
      const int bit = __builtin_ctzll(n);
      const bool on = !(gray >> bit & 1u);
      gray ^= 1u << bit;
      for (int i = 0; i < kNsRank; ++i) {
        if (on)
          acc[i] += cols[bit][i];
        else
          acc[i] -= cols[bit][i];
      }
    }
    ++scan.scanned;
    bool member = true;
    for (int i = 0; i < kNsRank && member; ++i)
      if (!mpz_divisible_p(acc[i].get_mpz_t(), modulus.get_mpz_t())) member = false;
    if (member) scan.members.push_back(gray);
  }
  std::sort(scan.members.begin(), scan.members.end());
  return scan;
}

/// Checks that NS members with half-integral coefficients have at least
/// four half-integral beta's, and at least eight when alpha is integral.
///
/// The coefficient box |alpha|, |beta_i| <= bound reduces to parity
/// patterns; for bound < 1/2 only the integral pattern occurs.
inline VerificationReport verify_beta_patterns(const NsBasis& basis, const Rational& coefficient_bound,
                                               std::uint64_t budget = kDefaultBudget) {
  VerificationReport r;
  r.k = basis.context().k;
  const std::string cite = "half-integral coefficient pattern lemma";
  PatternScan scan = scan_parity_patterns(basis, budget);
  if (coefficient_bound < Rational(1, 2)) {
    scan.members.erase(std::remove_if(scan.members.begin(), scan.members.end(),
                                      [](ParityPattern p) { return p != 0; }),
                       scan.members.end());
  } else {
    r.expect("member_patterns", "64", std::to_string(scan.members.size()), cite);
  }

  int weak = 0, weak_integral_alpha = 0, inconsistent = 0;
  for (ParityPattern p : scan.members) {
    const int h = half_beta_count(p);
    if (p != 0 && h < 4) ++weak;
    if (p != 0 && !(p & 1u) && h < 8) ++weak_integral_alpha;
    if (!basis.contains(pattern_class(p))) ++inconsistent;
  }
  r.expect("exact_membership_agrees", "0", std::to_string(inconsistent), "NS membership by exact solve");
  r.expect("members_with_fewer_than_4_half_betas", "0", std::to_string(weak), cite);
  r.expect("integral_alpha_members_with_fewer_than_8_half_betas", "0", std::to_string(weak_integral_alpha), cite);

  NsClass two_half;
  two_half.beta_at(1) = Rational(1, 2);
  two_half.beta_at(2) = Rational(1, 2);
  r.expect_true("two_half_betas_rejected", !basis.contains(two_half), cite);
  r.expect("patterns_scanned", std::to_string(std::uint64_t{1} << kPatternBits), std::to_string(scan.scanned),
           "parity reduction of the coefficient box");
  return r;
}

}  // namespace kummer::ns
