#pragma once

// Recognition of weighted projective and fake weighted projective stacks.

#include "stacky/error.hpp"
#include "stacky/isotropy.hpp"
#include "stacky/stackyfan.hpp"
#include "stacky/zlinalg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace stacky {

enum class WpsKind { WeightedProjective, FakeWeightedProjective, Neither };

constexpr std::string_view kind_name(WpsKind k) {
  switch (k) {
    case WpsKind::WeightedProjective: return "weighted_projective";
    case WpsKind::FakeWeightedProjective: return "fake_weighted_projective";
    case WpsKind::Neither: return "neither";
  }
  return "neither";
}

struct WpsReport {
  WpsKind kind = WpsKind::Neither;
  IntVector weights;               ///< empty for Neither
  FgAbelianGroup component_group;  ///< Lambda = G/G0
  std::string cover_weights_source;
};

inline std::string weights_to_string(const IntVector& w) {
  std::string s = "P(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].get_str();
  return s + ")";
}

/// Positive generator of ker beta, read off ker [B Q] projected to the first
/// n coordinates. Requires rank ker beta = 1.
inline IntVector positive_kernel_generator(const StackyFan& fan) {
  const IntMatrix k = kernel_basis(bq_matrix(fan));
  if (k.cols() != 1)
    throw std::logic_error("positive_kernel_generator: kernel rank " + std::to_string(k.cols()));
  IntVector w(fan.ray_count());
  int sign = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = k(i, 0);
    const int s = sgn(w[i]);
    if (s == 0 || (sign != 0 && s != sign))
      throw Error(ErrorKind::MixedSignKernel, "ker beta generator " + weights_to_string(w));
    sign = s;
  }
  if (sign < 0)
    for (auto& x : w) x = -x;
  return w;
}

inline WpsReport classify_wps(const StackyFan& fan) {
  require_finite_cokernel(fan);
  WpsReport r;
  r.component_group = component_group(fan);
  if (fan.ray_count() != fan.rank() + 1) {
    r.cover_weights_source = "n != d+1: not a simplex";
    return r;
  }
  const FgAbelianGroup dg = dual_group(fan);
  if (dg.free_rank != 1) throw std::logic_error("classify_wps: rank DG != 1 for a simplex");
  if (dg.is_torsion_free()) {
    r.kind = WpsKind::WeightedProjective;
    r.weights = positive_kernel_generator(fan);
    r.cover_weights_source = "ker beta";
  } else {
    r.kind = WpsKind::FakeWeightedProjective;
    r.weights = positive_kernel_generator(universal_cover(fan));
    r.cover_weights_source = "ker beta0 of the universal cover";
  }
  return r;
}

/// gcd(weights) == |Tor(N)| for a weighted projective stack.
inline bool torsion_gcd_check(const StackyFan& fan) {
  const auto r = classify_wps(fan);
  if (r.kind != WpsKind::WeightedProjective)
    throw Error(ErrorKind::NotWps, std::string(kind_name(r.kind)));
  return gcd_of(r.weights) == fan.module().torsion_subgroup().torsion_order();
}

}  // namespace stacky
