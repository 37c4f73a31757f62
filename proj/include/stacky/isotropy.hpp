#pragma once

// Isotropy groups of the points of [Z_Sigma / G], the component group G/G0,
// the universal-cover fan over N0 = im(beta), and the global-quotient tests.

#include "stacky/error.hpp"
#include "stacky/stackyfan.hpp"
#include "stacky/zlinalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace stacky {

/// Zero set I_z = {i : z_i = 0} of a point of C^n.
struct PointPattern {
  std::vector<std::size_t> zero_set;
};

/// sigma_z. The fan is simplicial, so this is I_z itself whenever I_z lies in
/// some maximal cone; otherwise z is in V(J(Sigma)).
inline Cone minimal_cone(const StackyFan& fan, const PointPattern& pattern) {
  Cone c = normalize_cone(pattern.zero_set);
  for (auto i : c)
    if (i >= fan.ray_count())
      throw Error(ErrorKind::IndexOutOfRange, "ray index " + std::to_string(i));
  if (!is_face(fan, c))
    throw Error(ErrorKind::NotInZSigma, "zero set " + cone_to_string(c) + " is in no cone");
  return c;
}

inline Cone checked_face(const StackyFan& fan, const Cone& cone) {
  Cone c = normalize_cone(cone);
  for (auto i : c)
    if (i >= fan.ray_count()) throw Error(ErrorKind::InvalidCone, cone_to_string(c));
  if (!is_face(fan, c)) throw Error(ErrorKind::InvalidCone, cone_to_string(c) + " is not a face");
  return c;
}

/// N / N_sigma = coker [B_sigma Q], free part included.
inline FgAbelianGroup cone_quotient(const StackyFan& fan, const Cone& cone) {
  return cokernel(cone_bq_matrix(fan, checked_face(fan, cone))).group;
}

/// Gamma_sigma = Tor(N / N_sigma).
inline FgAbelianGroup isotropy_group(const StackyFan& fan, const Cone& cone) {
  return cone_quotient(fan, cone).torsion();
}

inline FgAbelianGroup isotropy_of_pattern(const StackyFan& fan, const PointPattern& pattern) {
  return isotropy_group(fan, minimal_cone(fan, pattern));
}

// ---------------------------------------------------------------------------
// Explicit isotropy elements for free N

inline Rational fractional_part(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

/// An element exp(2 pi i coords) of (S^1)^n, coordinates in [0, 1).
struct RationalCharacter {
  RationalVector coords;

  static RationalCharacter reduced(const RationalVector& v) {
    RationalCharacter c;
    for (const auto& x : v) c.coords.push_back(fractional_part(x));
    return c;
  }

  Integer order() const {
    Integer m = 1;
    for (const auto& x : coords) m = lcm(m, Integer(x.get_den()));
    return m;
  }

  RationalCharacter operator+(const RationalCharacter& o) const {
    RationalVector v(coords.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coords[i] + o.coords[i];
    return reduced(v);
  }

  RationalCharacter scaled(const Integer& k) const {
    RationalVector v(coords.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coords[i] * Rational(k);
    return reduced(v);
  }

  /// "(1/2, 0, 0)"
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + coords[i].get_str();
    return s + ")";
  }

  friend bool operator==(const RationalCharacter&, const RationalCharacter&) = default;
};

/// Whether beta_R(coords) is integral, i.e. the character lies in K_D.
inline bool in_kd(const StackyFan& fan, const RationalCharacter& c) {
  const auto& b = fan.lift();
  for (std::size_t i = 0; i < fan.rank(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < b.cols(); ++j) s += Rational(b(i, j)) * c.coords[j];
    s.canonicalize();
    if (s.get_den() != 1) return false;
  }
  return true;
}

struct IsotropyGenerator {
  RationalCharacter character;
  Integer order;
};

/// Generators exp(y (x) 1/m) of Gamma_sigma inside K_D, one per invariant
/// factor of Tor(N / N_sigma): x is that factor's generator, m its order, and
/// y in Z^sigma the unique solution of beta_sigma(y) = m x.
inline std::vector<IsotropyGenerator> isotropy_generators(const StackyFan& fan, const Cone& cone) {
  if (!fan.module().is_free())
    throw Error(ErrorKind::TorsionAmbient, "explicit isotropy embedding needs free N");
  const Cone c = checked_face(fan, cone);
  const IntMatrix b_sigma = fan.lift().select_columns(c);
  const Cokernel quotient = cokernel(b_sigma);

  std::vector<IsotropyGenerator> out;
  for (std::size_t k = quotient.group.free_rank; k < quotient.moduli.size(); ++k) {
    const Integer& m = quotient.moduli[k];
    IntVector target = quotient.generators.column(k);
    for (auto& t : target) t *= m;
    auto y = solve_rational(b_sigma, target);
    if (!y) throw std::logic_error("isotropy_generators: m x not in N_sigma");
    RationalVector coords(fan.ray_count());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if ((*y)[i].get_den() != 1) throw std::logic_error("isotropy_generators: y not integral");
      coords[c[i]] = (*y)[i] / Rational(m);
    }
    out.push_back({RationalCharacter::reduced(coords), m});
  }
  return out;
}

/// Whether target lies in the subgroup of (Q/Z)^n generated by gens.
inline bool subgroup_contains(const std::vector<RationalCharacter>& gens,
                              const RationalCharacter& target) {
  const std::size_t n = target.coords.size();
  Integer den = target.order();
  for (const auto& g : gens) den = lcm(den, g.order());
  // Scale by den: compare inside Z^n against den*Z^n + span(den * gens).
  auto scaled = [&](const RationalCharacter& c) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational x = c.coords[i] * Rational(den);
      x.canonicalize();
      v[i] = x.get_num();
    }
    return v;
  };
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = den;
    cols.push_back(e);
  }
  for (const auto& g : gens) cols.push_back(scaled(g));
  IntMatrix lattice = IntMatrix::from_columns(cols, n);
  cols.push_back(scaled(target));
  return same_lattice(lattice, IntMatrix::from_columns(cols, n));
}

// ---------------------------------------------------------------------------
// Component group, universal cover, global quotients

/// G/G0 = coker beta = coker [B Q].
inline FgAbelianGroup component_group(const StackyFan& fan) {
  return cokernel(bq_matrix(fan)).group;
}

inline void require_finite_cokernel(const StackyFan& fan) {
  auto g = component_group(fan);
  if (!g.is_finite()) throw Error(ErrorKind::InfiniteCokernel, "coker beta = " + g.to_string());
}

/// N0 = im(beta) presented as an ambient module, with beta0 written in it.
struct ImageSublattice {
  AmbientModule n0;
  IntMatrix b0;
  /// Column k lifts the k-th coordinate generator of N0 into Z^(d+l).
  IntMatrix inclusion;
};

inline ImageSublattice image_sublattice(const StackyFan& fan) {
  require_finite_cokernel(fan);
  const std::size_t dim = fan.module().lift_dim();
  const std::size_t ell = fan.module().torsion_rank();
  // L = im B + im Q has full rank; its HNF basis H identifies L with Z^dim.
  const IntMatrix basis = lattice_basis(bq_matrix(fan));
  auto in_basis = [&](const IntMatrix& m) {
    IntMatrix out(dim, m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto x = solve_rational(basis, m.column(j));
      for (std::size_t i = 0; i < dim; ++i) out(i, j) = (*x)[i].get_num();
    }
    return out;
  };
  const IntMatrix q_local = in_basis(fan.module().resolution());
  const IntMatrix b_local = in_basis(fan.lift());

  // N0 = Z^dim / im q_local; diagonalize to the canonical Z^d (+) (+) Z/q'.
  const auto d = snf(q_local);
  std::vector<std::size_t> order;
  IntVector torsion;
  for (std::size_t i = ell; i < dim; ++i) order.push_back(i);
  for (std::size_t i = 0; i < ell; ++i)
    if (d.s(i, i) > 1) {
      order.push_back(i);
      torsion.push_back(d.s(i, i));
    }

  ImageSublattice out;
  out.n0 = {dim - ell, torsion};
  out.b0 = normalize_lift(out.n0, (d.u * b_local).select_rows(order));
  out.inclusion = (basis * inverse_unimodular(d.u)).select_columns(order);
  return out;
}

/// (N0, Sigma0, beta0): same cones, beta with codomain restricted to its image.
inline StackyFan universal_cover(const StackyFan& fan) {
  auto img = image_sublattice(fan);
  return make_stacky_fan(img.n0, img.b0, fan.max_cones(), true);
}

struct GlobalQuotientResult {
  bool global_quotient = true;
  std::optional<Cone> witness;  ///< a maximal cone with N_sigma != N0
};

/// True iff N_sigma = N0 for every maximal cone, compared as lattices
/// im B_sigma + im Q versus im B + im Q in Z^(d+l).
inline GlobalQuotientResult is_global_quotient(const StackyFan& fan) {
  require_finite_cokernel(fan);
  const IntMatrix n0 = lattice_basis(bq_matrix(fan));
  for (const auto& c : fan.max_cones())
    if (!(lattice_basis(cone_bq_matrix(fan, c)) == n0)) return {false, c};
  return {};
}

/// True iff N_sigma = N for every maximal cone: G is connected and acts freely.
inline bool is_connected_free(const StackyFan& fan) {
  require_finite_cokernel(fan);
  const IntMatrix whole = IntMatrix::identity(fan.module().lift_dim());
  for (const auto& c : fan.max_cones())
    if (!(lattice_basis(cone_bq_matrix(fan, c)) == whole)) return false;
  return true;
}

}  // namespace stacky
