#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kummer/lattice/gram_lattice.hpp"
#include "kummer/lattice/matrix.hpp"
#include "kummer/ns/context.hpp"
#include "kummer/ns/ns_class.hpp"

namespace kummer::ns {

inline constexpr int kNsRank = 17;

namespace detail {

inline NsClass half_sum(const std::vector<int>& support) {
  NsClass c;
  for (int i : support) c.beta_at(i) = Rational(-1, 2);
  return c;
}

// W_i = {a in F_2^4 : a_i = 0}, i in 1..4
inline std::vector<int> hyperplane_w(int i) {
  std::vector<int> out;
  for (int idx = 1; idx <= kNumCurves; ++idx)
    if (label_bits(idx)[i - 1] == 0) out.push_back(idx);
  return out;
}

inline constexpr std::array<const char*, 11> kCurveBasisLabels = {
    "0000", "1000", "0100", "0010", "0001", "0011", "0101", "1001", "0110", "1010", "1100"};

}  // namespace detail

/// Support of omega: four curves when L^2 = 0 mod 8, six when L^2 = 4 mod 8.
inline std::vector<int> omega_support(const KummerContext& ctx) {
  std::vector<std::string> labels;
  if (mod_floor(ctx.l_square(), Integer(8)) == 0)
    labels = {"0000", "1000", "0100", "1100"};
  else
    labels = {"0001", "0010", "0011", "1000", "0100", "1100"};
  std::vector<int> out;
  for (const auto& l : labels) out.push_back(label_index(l));
  return out;
}

/// v_1..v_16 generating the Kummer lattice K.
inline std::array<NsClass, kNumCurves> kummer_vectors() {
  std::array<NsClass, kNumCurves> v;
  std::vector<int> all;
  for (int i = 1; i <= kNumCurves; ++i) all.push_back(i);
  v[0] = detail::half_sum(all);
  for (int i = 1; i <= 4; ++i) v[i] = detail::half_sum(detail::hyperplane_w(i));
  for (std::size_t j = 0; j < detail::kCurveBasisLabels.size(); ++j)
    v[5 + j] = NsClass::A(label_index(detail::kCurveBasisLabels[j]));
  return v;
}

inline lattice::GramLattice build_kummer_gram(const KummerContext& ctx) {
  auto v = kummer_vectors();
  IntMatrix g(kNumCurves, kNumCurves);
  for (int i = 0; i < kNumCurves; ++i)
    for (int j = 0; j < kNumCurves; ++j) g(i, j) = intersect(v[i], v[j], ctx).get_num();
  return lattice::GramLattice(std::move(g));
}

/// The basis v_1..v_17 of NS(Km(B)), v_17 = (L + omega)/2.
class NsBasis {
 public:
  explicit NsBasis(const KummerContext& ctx) : ctx_(ctx), gram_(IntMatrix::identity(1)) {
    auto kv = kummer_vectors();
    for (int i = 0; i < kNumCurves; ++i) vectors_[i] = kv[i];
    NsClass v17;
    v17.alpha = Rational(1, 2);
    for (int i : omega_support(ctx)) v17.beta_at(i) = Rational(-1, 2);
    vectors_[kNumCurves] = v17;

    to_la_ = RatMatrix(kNsRank, kNsRank);
    for (int j = 0; j < kNsRank; ++j) to_la_.set_col(j, vectors_[j].la_coordinates());
    from_la_ = inverse(to_la_);

    IntMatrix g(kNsRank, kNsRank);
    for (int i = 0; i < kNsRank; ++i)
      for (int j = 0; j < kNsRank; ++j) {
        Rational x = intersect(vectors_[i], vectors_[j], ctx);
        if (!is_integral(x)) throw std::logic_error("NS basis not integral");
        g(i, j) = x.get_num();
      }
    gram_ = lattice::GramLattice(std::move(g));
  }

  const KummerContext& context() const noexcept { return ctx_; }
  const std::array<NsClass, kNsRank>& vectors() const noexcept { return vectors_; }
  const NsClass& v(int i) const { return vectors_.at(i - 1); }
  const lattice::GramLattice& gram() const noexcept { return gram_; }

  /// Columns are the (L, A) coordinates of v_1..v_17.
  const RatMatrix& to_la() const noexcept { return to_la_; }
  const RatMatrix& from_la() const noexcept { return from_la_; }

  /// Rational v-coordinates of any class.
  RatVector v_coordinates(const NsClass& c) const { return from_la_ * c.la_coordinates(); }

  NsClass from_v(const RatVector& x) const { return NsClass::from_la(to_la_ * x); }

  /// Integral v-coordinates when c lies in NS, nullopt otherwise.
  std::optional<IntVector> membership(const NsClass& c) const { return to_integer(v_coordinates(c)); }

  bool contains(const NsClass& c) const { return membership(c).has_value(); }

 private:
  KummerContext ctx_;
  std::array<NsClass, kNsRank> vectors_;
  lattice::GramLattice gram_;
  RatMatrix to_la_;
  RatMatrix from_la_;
};

inline NsBasis build_ns_basis(const KummerContext& ctx) { return NsBasis(ctx); }

inline std::optional<IntVector> ns_membership(const NsBasis& basis, const NsClass& c) { return basis.membership(c); }

inline std::optional<IntVector> ns_membership(const KummerContext& ctx, const NsClass& c) {
  return NsBasis(ctx).membership(c);
}

}  // namespace kummer::ns
