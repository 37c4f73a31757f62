#pragma once

#include "stacky/error.hpp"
#include "stacky/zlinalg.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stacky {

/// Sorted set of ray indices.
using Cone = std::vector<std::size_t>;

inline std::string cone_to_string(const Cone& c) {
  std::string s = "{";
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
  return s + "}";
}

inline Cone normalize_cone(Cone c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

/// N = Z^free_rank (+) Z/q1 (+) ... (+) Z/ql. Elements are vectors in
/// Z^(d+l) whose last l coordinates are read modulo the torsion orders.
struct AmbientModule {
  std::size_t free_rank = 0;
  IntVector torsion_orders;

  std::size_t torsion_rank() const { return torsion_orders.size(); }
  std::size_t lift_dim() const { return free_rank + torsion_orders.size(); }
  bool is_free() const { return torsion_orders.empty(); }

  /// Q : Z^l -> Z^(d+l), basis vector i to q_i e_(d+i).
  IntMatrix resolution() const {
    IntMatrix q(lift_dim(), torsion_rank());
    for (std::size_t i = 0; i < torsion_rank(); ++i) q(free_rank + i, i) = torsion_orders[i];
    return q;
  }

  FgAbelianGroup as_group() const { return FgAbelianGroup::from_cyclic(free_rank, torsion_orders); }
  FgAbelianGroup torsion_subgroup() const { return FgAbelianGroup::from_cyclic(0, torsion_orders); }

  friend bool operator==(const AmbientModule&, const AmbientModule&) = default;
};

/// One checked stacky fan condition.
struct FanCheck {
  std::string condition;
  bool passed = true;
  bool skipped = false;
  ErrorKind kind = ErrorKind::ShapeMismatch;
  std::string detail;
};

class StackyFan;
StackyFan make_stacky_fan(const AmbientModule& n_module, const IntMatrix& b,
                          const std::vector<Cone>& max_cones, bool polytopal);

/// A validated stacky fan (N, Sigma, beta). beta is given by its lift B, a
/// (d+l) x n matrix whose column j lifts beta(e_j); Sigma is simplicial and
/// stored by its maximal cones.
class StackyFan {
 public:
  const AmbientModule& module() const noexcept { return module_; }
  const IntMatrix& lift() const noexcept { return b_; }
  const std::vector<Cone>& max_cones() const noexcept { return max_cones_; }
  bool polytopal() const noexcept { return polytopal_; }
  std::size_t ray_count() const noexcept { return b_.cols(); }
  std::size_t rank() const noexcept { return module_.free_rank; }

 private:
  friend StackyFan make_stacky_fan(const AmbientModule&, const IntMatrix&,
                                   const std::vector<Cone>&, bool);
  StackyFan(AmbientModule m, IntMatrix b, std::vector<Cone> cones, bool polytopal)
      : module_(std::move(m)), b_(std::move(b)), max_cones_(std::move(cones)),
        polytopal_(polytopal) {}

  AmbientModule module_;
  IntMatrix b_;
  std::vector<Cone> max_cones_;
  bool polytopal_ = false;
};

/// Torsion rows of b reduced into [0, q_i).
inline IntMatrix normalize_lift(const AmbientModule& n_module, IntMatrix b) {
  for (std::size_t i = 0; i < n_module.torsion_rank(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto& x = b(n_module.free_rank + i, j);
      x = mod_positive(x, n_module.torsion_orders[i]);
    }
  return b;
}

/// Throws on malformed shapes; these prevent the remaining checks.
inline void check_fan_shape(const AmbientModule& n_module, const IntMatrix& b,
                            const std::vector<Cone>& max_cones) {
  for (const auto& q : n_module.torsion_orders)
    if (q < 2) throw Error(ErrorKind::InvalidTorsionOrder, "torsion order " + q.get_str() + " < 2");
  if (b.rows() != n_module.lift_dim())
    throw Error(ErrorKind::ShapeMismatch, "beta has " + std::to_string(b.rows()) +
                                              " rows, expected " + std::to_string(n_module.lift_dim()));
  for (const auto& c : max_cones)
    for (auto i : c)
      if (i >= b.cols())
        throw Error(ErrorKind::IndexOutOfRange,
                    "ray index " + std::to_string(i) + " in cone " + cone_to_string(c));
}

/// Every stacky fan condition, in a fixed order. Shapes must already be valid
/// and cones normalized.
inline std::vector<FanCheck> check_fan_conditions(const AmbientModule& n_module,
                                                  const IntMatrix& b,
                                                  const std::vector<Cone>& max_cones,
                                                  bool polytopal) {
  const std::size_t d = n_module.free_rank;
  const IntMatrix top = b.row_block(0, d);
  std::vector<FanCheck> out;

  FanCheck nonzero{"nonzero rays", true, false, ErrorKind::ZeroRay, {}};
  for (std::size_t j = 0; j < b.cols() && nonzero.passed; ++j)
    if (top.select_columns({j}).is_zero()) {
      nonzero.passed = false;
      nonzero.detail = "ZeroRay(" + std::to_string(j) + ")";
    }
  out.push_back(nonzero);

  FanCheck span{"rays span", rank(top) == d, false, ErrorKind::RaysDoNotSpan, {}};
  if (!span.passed) span.detail = "rank " + std::to_string(rank(top)) + " < " + std::to_string(d);
  out.push_back(span);

  FanCheck simplicial{"simplicial cones", true, false, ErrorKind::NonSimplicialCone, {}};
  for (const auto& c : max_cones)
    if (rank(top.select_columns(c)) != c.size()) {
      simplicial.passed = false;
      simplicial.detail = "NonSimplicialCone(" + cone_to_string(c) + ")";
      break;
    }
  out.push_back(simplicial);

  FanCheck maximal{"maximal cones", true, false, ErrorKind::NestedMaxCones, {}};
  for (std::size_t x = 0; x < max_cones.size() && maximal.passed; ++x)
    for (std::size_t y = 0; y < max_cones.size(); ++y) {
      if (x == y) continue;
      if (std::includes(max_cones[y].begin(), max_cones[y].end(), max_cones[x].begin(),
                        max_cones[x].end())) {
        maximal.passed = false;
        maximal.detail = cone_to_string(max_cones[x]) + " inside " + cone_to_string(max_cones[y]);
        break;
      }
    }
  out.push_back(maximal);

  FanCheck covered{"rays in fan", true, false, ErrorKind::RayNotInFan, {}};
  std::set<std::size_t> used;
  for (const auto& c : max_cones) used.insert(c.begin(), c.end());
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (!used.count(j)) {
      covered.passed = false;
      covered.detail = "RayNotInFan(" + std::to_string(j) + ")";
      break;
    }
  out.push_back(covered);

  FanCheck finite{"finite cokernel", true, !polytopal, ErrorKind::InfiniteCokernel, {}};
  if (polytopal) {
    auto g = cokernel(hcat(b, n_module.resolution())).group;
    finite.passed = g.is_finite();
    if (!finite.passed) finite.detail = "coker beta = " + g.to_string();
  }
  out.push_back(finite);
  return out;
}

/// Validates and normalizes; throws the first failing condition.
inline StackyFan make_stacky_fan(const AmbientModule& n_module, const IntMatrix& b,
                                 const std::vector<Cone>& max_cones, bool polytopal) {
  check_fan_shape(n_module, b, max_cones);
  std::vector<Cone> cones;
  for (const auto& c : max_cones) cones.push_back(normalize_cone(c));
  IntMatrix lift = normalize_lift(n_module, b);
  for (const auto& check : check_fan_conditions(n_module, lift, cones, polytopal))
    if (!check.passed) throw Error(check.kind, check.detail);
  return StackyFan(n_module, std::move(lift), std::move(cones), polytopal);
}

/// [B Q] : Z^(n+l) -> Z^(d+l).
inline IntMatrix bq_matrix(const StackyFan& fan) {
  return hcat(fan.lift(), fan.module().resolution());
}

/// [B_sigma Q]: the lift restricted to the rays of a cone, plus Q.
inline IntMatrix cone_bq_matrix(const StackyFan& fan, const Cone& cone) {
  return hcat(fan.lift().select_columns(cone), fan.module().resolution());
}

/// DG(beta) = coker([B Q]^T).
inline FgAbelianGroup dual_group(const StackyFan& fan) {
  return cokernel(bq_matrix(fan).transpose()).group;
}

/// G = Hom(DG(beta), T) = T^torus_rank x (finite part).
struct LieGroupDescriptor {
  std::size_t torus_rank = 0;
  FgAbelianGroup finite_part;

  /// "T^2 x Z/2", "T" for a circle, "1" for the trivial group.
  std::string to_string() const {
    if (torus_rank == 0) return finite_part.to_string();
    std::string s = "T";
    if (torus_rank > 1) s += "^" + std::to_string(torus_rank);
    for (const auto& d : finite_part.invariant_factors) s += " x Z/" + d.get_str();
    return s;
  }
  friend bool operator==(const LieGroupDescriptor&, const LieGroupDescriptor&) = default;
};

inline LieGroupDescriptor structure_of_g(const StackyFan& fan) {
  auto dg = dual_group(fan);
  return {dg.free_rank, dg.torsion()};
}

/// Every face of every maximal cone, deduplicated, ascending lexicographic.
inline std::vector<Cone> faces(const StackyFan& fan) {
  std::set<Cone> all;
  for (const auto& c : fan.max_cones()) {
    const std::size_t k = c.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Cone f;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t{1} << i)) f.push_back(c[i]);
      all.insert(f);
    }
  }
  return {all.begin(), all.end()};
}

/// Whether a normalized index set is a face, i.e. lies in some maximal cone.
inline bool is_face(const StackyFan& fan, const Cone& cone) {
  return std::any_of(fan.max_cones().begin(), fan.max_cones().end(), [&](const Cone& m) {
    return std::includes(m.begin(), m.end(), cone.begin(), cone.end());
  });
}

}  // namespace stacky
