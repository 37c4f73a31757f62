#pragma once

// Labelled sheared simplices: the simplex with d facets on the coordinate
// hyperplanes and one facet with inward normal -a, facet labels m0..md.
// Closed-form invariants live here next to the fan they describe, so they can
// be checked against the general [B_sigma Q] pipeline.

#include "stacky/classify.hpp"
#include "stacky/error.hpp"
#include "stacky/isotropy.hpp"
#include "stacky/stackyfan.hpp"
#include "stacky/zlinalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace stacky {

struct ShearedSimplex {
  IntVector a;  ///< (a1..ad), positive, gcd 1
  IntVector m;  ///< (m0..md), positive

  std::size_t dim() const { return a.size(); }
};

inline ShearedSimplex make_sheared(IntVector a, IntVector m) {
  if (a.empty()) throw Error(ErrorKind::ShapeMismatch, "a must have at least one entry");
  if (m.size() != a.size() + 1)
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(a.size() + 1) + " labels");
  for (const auto& x : a)
    if (x < 1) throw Error(ErrorKind::NonPositive, "a entry " + x.get_str());
  for (const auto& x : m)
    if (x < 1) throw Error(ErrorKind::NonPositive, "label " + x.get_str());
  if (gcd_of(a) != 1) throw Error(ErrorKind::NotPrimitive, "gcd(a) = " + gcd_of(a).get_str());
  return {std::move(a), std::move(m)};
}

/// a with a0 = 1 prepended, indexed like the rays.
inline Integer sheared_a(const ShearedSimplex& s, std::size_t i) {
  return i == 0 ? Integer(1) : s.a[i - 1];
}

/// Fan over Z^d: column 0 is -m0 a, column j is mj ej; every d-subset of
/// {0..d} is a maximal cone.
inline StackyFan build(const ShearedSimplex& s) {
  const std::size_t d = s.dim();
  IntMatrix b(d, d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    b(i, 0) = -s.m[0] * s.a[i];
    b(i, i + 1) = s.m[i + 1];
  }
  std::vector<Cone> cones;
  for (std::size_t skip = d + 1; skip-- > 0;) {
    Cone c;
    for (std::size_t i = 0; i <= d; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return make_stacky_fan({d, {}}, b, cones, true);
}

/// [(+) Z/mi] / <(1, a1, ..., ad)>.
inline FgAbelianGroup component_group_closed(const ShearedSimplex& s) {
  const std::size_t d = s.dim();
  IntMatrix rel(d + 1, d + 2);
  for (std::size_t i = 0; i <= d; ++i) {
    rel(i, i) = s.m[i];
    rel(i, d + 1) = sheared_a(s, i);
  }
  return cokernel(rel).group;
}

struct WpsCriterion {
  bool is_wps = false;        ///< pairwise coprime labels and gcd(ai, mi) = 1
  bool gcd_condition = false;  ///< gcd(M/m0, M a1/m1, ..., M ad/md) = 1
  IntVector weights;          ///< (M/m0, M a1/m1, ...) when is_wps
};

inline IntVector sheared_wps_weights(const ShearedSimplex& s) {
  Integer big_m = 1;
  for (const auto& x : s.m) big_m *= x;
  IntVector w;
  for (std::size_t i = 0; i <= s.dim(); ++i) w.push_back(big_m * sheared_a(s, i) / s.m[i]);
  return w;
}

inline WpsCriterion wps_criterion(const ShearedSimplex& s) {
  WpsCriterion r;
  r.is_wps = true;
  for (std::size_t i = 0; i < s.m.size(); ++i)
    for (std::size_t j = i + 1; j < s.m.size(); ++j)
      if (gcd(s.m[i], s.m[j]) != 1) r.is_wps = false;
  for (std::size_t i = 1; i <= s.dim(); ++i)
    if (gcd(s.a[i - 1], s.m[i]) != 1) r.is_wps = false;
  const IntVector w = sheared_wps_weights(s);
  r.gcd_condition = gcd_of(w) == 1;
  if (r.is_wps) r.weights = w;
  return r;
}

inline std::vector<std::size_t> sheared_zero_set(const ShearedSimplex& s, const PointPattern& p) {
  Cone z = normalize_cone(p.zero_set);
  for (auto i : z)
    if (i > s.dim()) throw Error(ErrorKind::IndexOutOfRange, "ray index " + std::to_string(i));
  if (z.size() > s.dim()) throw Error(ErrorKind::NotInZSigma, "all coordinates vanish");
  return z;
}

/// d_z = gcd(a_j : z_j != 0) with a0 = 1.
inline Integer sheared_dz(const ShearedSimplex& s, const std::vector<std::size_t>& zeros) {
  Integer g = 0;
  std::size_t next = 0;
  for (std::size_t i = 0; i <= s.dim(); ++i) {
    if (next < zeros.size() && zeros[next] == i) {
      ++next;
      continue;
    }
    g = gcd(g, sheared_a(s, i));
  }
  return g;
}

inline Integer product_of_labels(const ShearedSimplex& s, const std::vector<std::size_t>& idx) {
  Integer p = 1;
  for (auto i : idx) p *= s.m[i];
  return p;
}

/// Isotropy when the simplex gives a weighted projective stack:
/// (+)_{i in I_z} Z/mi if z0 != 0, else Z/(m_z d_z).
inline FgAbelianGroup wps_isotropy_closed(const ShearedSimplex& s, const PointPattern& p) {
  if (!wps_criterion(s).is_wps) throw Error(ErrorKind::NotWps, "labels fail the WPS criterion");
  const auto z = sheared_zero_set(s, p);
  if (z.empty() || z.front() != 0) {
    IntVector orders;
    for (auto i : z) orders.push_back(s.m[i]);
    return FgAbelianGroup::from_cyclic(0, orders);
  }
  return FgAbelianGroup::cyclic(product_of_labels(s, z) * sheared_dz(s, z));
}

/// 0 -> sub -> stab(z) -> quot -> 0.
struct IsotropyExtension {
  FgAbelianGroup sub;   ///< (+)_{i in I_z} Z/mi
  FgAbelianGroup quot;  ///< Z/d_z
  FgAbelianGroup full;  ///< stab(z) from the SNF pipeline
};

inline IsotropyExtension isotropy_extension(const ShearedSimplex& s, const PointPattern& p) {
  const auto z = sheared_zero_set(s, p);
  IntVector orders;
  for (auto i : z) orders.push_back(s.m[i]);
  IsotropyExtension e;
  e.sub = FgAbelianGroup::from_cyclic(0, orders);
  e.quot = FgAbelianGroup::cyclic(sheared_dz(s, z));
  e.full = isotropy_of_pattern(build(s), {z});
  if (e.full.torsion_order() != e.sub.torsion_order() * e.quot.torsion_order())
    throw std::logic_error("isotropy_extension: orders do not multiply");
  return e;
}

/// mi = m0 ai for every i >= 1.
inline bool global_quotient_closed(const ShearedSimplex& s) {
  for (std::size_t i = 1; i <= s.dim(); ++i)
    if (s.m[i] != s.m[0] * s.a[i - 1]) return false;
  return true;
}

struct TwoByTwoSnf {
  Integer g;
  Integer bc_over_g;
};

/// Smith diagonal of [[a, b], [c, 0]] for nonzero a, b, c: (g, |bc|/g) with
/// g = gcd(a, b, c).
inline TwoByTwoSnf snf_one_zero_2x2(const Integer& a, const Integer& b, const Integer& c) {
  if (sgn(a) == 0 || sgn(b) == 0 || sgn(c) == 0)
    throw Error(ErrorKind::ZeroEntry, "entries must be nonzero");
  Integer g = gcd(gcd(a, b), c);
  Integer bc = abs(b * c);
  return {g, bc / g};
}

/// Isotropy at the vertex (0, a1): zeros {0, 1}, Z/g x Z/(m0 m1 a2 / g) with
/// g = gcd(m0, m1).
inline FgAbelianGroup planar_vertex_isotropy(const ShearedSimplex& s) {
  if (s.dim() != 2) throw Error(ErrorKind::NotPlanar, "d = " + std::to_string(s.dim()));
  Integer g = gcd(s.m[0], s.m[1]);
  return FgAbelianGroup::from_cyclic(0, {g, s.m[0] * s.m[1] * s.a[1] / g});
}

/// The same formula with indices 1 and 2 exchanged: zeros {0, 2}.
inline FgAbelianGroup planar_vertex_isotropy_swapped(const ShearedSimplex& s) {
  if (s.dim() != 2) throw Error(ErrorKind::NotPlanar, "d = " + std::to_string(s.dim()));
  Integer g = gcd(s.m[0], s.m[2]);
  return FgAbelianGroup::from_cyclic(0, {g, s.m[0] * s.m[2] * s.a[0] / g});
}

// ---------------------------------------------------------------------------
// The four-row isotropy table for planar sheared simplices

struct TableRow {
  std::string labels;     ///< label pattern of the row
  std::string lengths;    ///< a pattern of the row
  ShearedSimplex instance;
  Cone vertex;            ///< zero set the row is evaluated at
  FgAbelianGroup tabulated;
  FgAbelianGroup pipeline;
  bool agrees = false;
  std::string note;
};

/// Instantiates each row from s (row 1 ignores s, row 2 keeps s.a with unit
/// labels, row 3 keeps s.m with a = (1, 1), row 4 is s) and compares the
/// tabulated group with the SNF pipeline.
inline std::vector<TableRow> table1(const ShearedSimplex& s) {
  if (s.dim() != 2) throw Error(ErrorKind::NotPlanar, "d = " + std::to_string(s.dim()));
  std::vector<TableRow> rows;
  auto finish = [&](TableRow r) {
    r.pipeline = isotropy_group(build(r.instance), r.vertex);
    r.agrees = r.pipeline == r.tabulated;
    rows.push_back(std::move(r));
  };

  {
    TableRow r{"m0=m1=m2=1", "a1=a2=1", make_sheared({1, 1}, {1, 1, 1}), {0, 1}, {}, {}, false,
               "smooth"};
    r.tabulated = FgAbelianGroup::trivial();
    finish(std::move(r));
  }
  {
    ShearedSimplex inst = make_sheared(s.a, {1, 1, 1});
    TableRow r{"m0=m1=m2=1", "a1,a2 arbitrary", inst, {0, 2}, {}, {}, false, {}};
    r.tabulated = FgAbelianGroup::cyclic(inst.a[0]);
    r.note = "tabulated Z/a1 is the isotropy at zeros {0,2}; zeros {0,1} gives " +
             planar_vertex_isotropy(inst).to_string();
    finish(std::move(r));
  }
  {
    ShearedSimplex inst = make_sheared({1, 1}, s.m);
    TableRow r{"m0,m1,m2 arbitrary", "a1=a2=1", inst, {0, 1}, {}, {}, false, {}};
    r.tabulated = FgAbelianGroup::from_cyclic(0, {inst.m[0], inst.m[1]});
    finish(std::move(r));
  }
  {
    TableRow r{"m0,m1,m2 arbitrary", "a1,a2 arbitrary", s, {0, 1}, {}, {}, false, {}};
    r.tabulated = planar_vertex_isotropy(s);
    finish(std::move(r));
  }
  return rows;
}

}  // namespace stacky
