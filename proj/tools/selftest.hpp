#pragma once

// Randomized differential check: closed-form sheared simplex invariants
// against the general [B_sigma Q] pipeline.

#include "stacky/stacky.hpp"

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace stacky::tools {

/// d in {1,2,3}, ai in [1,20] with gcd 1, mi in [1,12].
inline ShearedSimplex random_sheared(std::mt19937_64& rng, std::size_t max_dim = 3) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long> a_dist(1, 20), m_dist(1, 12);
  const std::size_t d = dim(rng);
  IntVector a;
  do {
    a.clear();
    for (std::size_t i = 0; i < d; ++i) a.push_back(a_dist(rng));
  } while (gcd_of(a) != 1);
  IntVector m;
  for (std::size_t i = 0; i <= d; ++i) m.push_back(m_dist(rng));
  return make_sheared(a, m);
}

inline std::string describe(const ShearedSimplex& s) {
  std::string out = "a=(";
  for (std::size_t i = 0; i < s.a.size(); ++i) out += (i ? "," : "") + s.a[i].get_str();
  out += ") m=(";
  for (std::size_t i = 0; i < s.m.size(); ++i) out += (i ? "," : "") + s.m[i].get_str();
  return out + ")";
}

/// Zero sets of every point of Z_Sigma up to which coordinates vanish.
inline std::vector<Cone> sheared_patterns(const ShearedSimplex& s) {
  std::vector<Cone> out;
  const std::size_t n = s.dim() + 1;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << n); ++mask) {
    Cone c;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) c.push_back(i);
    out.push_back(c);
  }
  return out;
}

/// Mismatch descriptions; empty when every closed form agrees.
inline std::vector<std::string> sheared_differential(const ShearedSimplex& s) {
  std::vector<std::string> bad;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(describe(s) + ": " + what);
  };
  const StackyFan fan = build(s);

  expect(component_group_closed(s) == component_group(fan), "component group");

  const auto crit = wps_criterion(s);
  const auto report = classify_wps(fan);
  expect(report.kind != WpsKind::Neither, "classified as neither");
  expect(crit.is_wps == (report.kind == WpsKind::WeightedProjective), "WPS flag");
  expect(crit.gcd_condition == crit.is_wps, "WPS gcd condition");
  if (crit.is_wps) expect(crit.weights == report.weights, "WPS weights");

  for (const auto& z : sheared_patterns(s)) {
    const auto pipeline = isotropy_of_pattern(fan, {z});
    const auto ext = isotropy_extension(s, {z});
    expect(ext.full == pipeline, "extension full at " + cone_to_string(z));
    expect(ext.full.torsion_order() == ext.sub.torsion_order() * ext.quot.torsion_order(),
           "extension order at " + cone_to_string(z));
    if (crit.is_wps)
      expect(wps_isotropy_closed(s, {z}) == pipeline, "WPS isotropy at " + cone_to_string(z));
  }

  expect(global_quotient_closed(s) == is_global_quotient(fan).global_quotient, "global quotient");

  if (s.dim() == 2) {
    expect(planar_vertex_isotropy(s) == isotropy_group(fan, {0, 1}), "planar vertex {0,1}");
    expect(planar_vertex_isotropy_swapped(s) == isotropy_group(fan, {0, 2}), "planar vertex {0,2}");
  }
  return bad;
}

/// Returns the number of instances with a mismatch.
inline std::size_t run_selftest(std::size_t count, std::uint64_t seed, std::ostream& out) {
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const auto s = random_sheared(rng);
    const auto bad = sheared_differential(s);
    if (!bad.empty()) {
      ++failures;
      for (const auto& line : bad) out << "mismatch: " << line << '\n';
    }
  }
  return failures;
}

}  // namespace stacky::tools
