#pragma once

// Fans shared by the unit and acceptance tests.

#include "stacky/stacky.hpp"

#include <random>
#include <string>

namespace fixtures {

using namespace stacky;

inline StackyFan p15_10_6() {
  return make_stacky_fan({2, {}}, IntMatrix{{-2, 3, 0}, {-2, 0, 5}}, {{0, 1}, {0, 2}, {1, 2}}, true);
}

/// Z^2 + Z/2; the torsion row is the lift (-1, 1, 1) before normalization.
inline StackyFan p30_20_12() {
  return make_stacky_fan({2, {2}}, IntMatrix{{-2, 3, 0}, {-2, 0, 5}, {-1, 1, 1}},
                         {{0, 1}, {0, 2}, {1, 2}}, true);
}

/// Four rays over Z^2 + Z/2 with a quadrilateral moment polytope.
inline StackyFan quadrilateral() {
  return make_stacky_fan({2, {2}}, IntMatrix{{-2, 0, 3, 0}, {-4, 6, 0, -2}, {1, 1, 1, 1}},
                         {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, true);
}

/// beta = [-s r] over Z.
inline StackyFan segment(long r, long s) {
  return make_stacky_fan({1, {}}, IntMatrix{{-s, r}}, {{0}, {1}}, true);
}

inline std::string data_path(const std::string& name) { return std::string(STACKY_DATA_DIR) + "/" + name; }

/// Same beta, different lift: adds random multiples of q_i to torsion rows.
inline IntMatrix relift(std::mt19937_64& rng, const AmbientModule& n, IntMatrix b) {
  std::uniform_int_distribution<long> k(-3, 3);
  for (std::size_t i = 0; i < n.torsion_rank(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(n.free_rank + i, j) += k(rng) * n.torsion_orders[i];
  return b;
}

/// Rays permuted by perm (new ray j is old ray perm[j]); cones relabelled.
inline StackyFan permuted(const StackyFan& fan, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inverse(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) inverse[perm[j]] = j;
  std::vector<Cone> cones;
  for (const auto& c : fan.max_cones()) {
    Cone d;
    for (auto i : c) d.push_back(inverse[i]);
    cones.push_back(d);
  }
  return make_stacky_fan(fan.module(), fan.lift().select_columns(perm), cones, fan.polytopal());
}

}  // namespace fixtures
