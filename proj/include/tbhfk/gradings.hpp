#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "tbhfk/diagram.hpp"
#include "tbhfk/error.hpp"
#include "tbhfk/laurent.hpp"
#include "tbhfk/rational.hpp"

namespace tbhfk {

// Spin^c labels are residues mod p; 0 is the self-conjugate structure.
using SpinCLabel = int;

// Per-vertex local gradings, indexed by GridDiagram::vertex_index.
struct LocalTables {
  int p = 0;
  std::vector<int> spinc;                // S in Z/p
  std::vector<int> maslov_halves;        // M in half units: 0 or 1
  std::vector<std::int64_t> alexander;   // relative, 0 at (0, 0)
};

// Row 0 follows the fixed table; row 1 is forced by S(J v) = -S(v).
inline std::vector<int> local_spinc(const GridDiagram& d) {
  const int p = d.p();
  std::vector<int> s(d.num_vertices(), 0);
  for (int c = 0; c < d.columns(); ++c) {
    const int j = c / 2;
    const int val = (c % 2 == 1 && d.q() < 0) ? j + 1 : j;
    s[d.vertex_index({0, c})] = static_cast<int>(mod(val, p));
  }
  for (int c = 0; c < d.columns(); ++c) {
    const Vertex v{1, c};
    const Vertex jv = d.J(v);
    if (jv.row != 0) throw Error(ErrorCode::InternalCheckFailed, "J does not exchange rows");
    s[d.vertex_index(v)] = static_cast<int>(mod(-s[d.vertex_index(jv)], p));
  }
  return s;
}

// Local Z/2 Maslov table. Consistent: even columns 0, odd columns 1/2, any q.
// ReversedForNegativeQ swaps them when q < 0 (Euler characteristic -p).
enum class MaslovTable { Consistent, ReversedForNegativeQ };

// Half units: 0 or 1.
inline std::vector<int> local_maslov_halves(const GridDiagram& d, MaslovTable table = MaslovTable::Consistent) {
  const bool reversed = table == MaslovTable::ReversedForNegativeQ && d.q() < 0;
  std::vector<int> m(d.num_vertices(), 0);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < d.columns(); ++c) m[d.vertex_index({r, c})] = (c % 2 == 1) != reversed ? 1 : 0;
  }
  return m;
}

inline Rational local_maslov(const LocalTables& t, const GridDiagram& d, const Vertex& v) {
  return Rational(t.maslov_halves[d.vertex_index(v)], 2);
}

using ExactPoint = std::pair<Rational, Rational>;

// Signed count of crossings between the polygonal path and every integer
// translate of the lifted knot trace. The sign is cross(path, knot), so a
// path crossing the knot from its left to its right counts +1.
inline std::int64_t crossing_count(const KnotTrace& knot, std::span<const ExactPoint> path) {
  std::int64_t total = 0;
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const auto& [sx0, sy0] = path[seg];
    const auto& [sx1, sy1] = path[seg + 1];
    const EpsPoint s0{sx0, sy0};
    const EpsPoint sdir{sx1 - sx0, sy1 - sy0};
    const Rational sxlo = std::min(sx0, sx1), sxhi = std::max(sx0, sx1);
    const Rational sylo = std::min(sy0, sy1), syhi = std::max(sy0, sy1);
    for (const auto& arc : knot.arcs) {
      const EpsPoint kdir = arc.to - arc.from;
      const Rational kx0 = arc.from.x.a, ky0 = arc.from.y.a;
      const Rational kx1 = arc.to.x.a, ky1 = arc.to.y.a;
      const Rational kylo = std::min(ky0, ky1), kyhi = std::max(ky0, ky1);
      const std::int64_t n_lo = (sylo - kyhi).floor() - 1;
      const std::int64_t n_hi = (syhi - kylo).floor() + 2;
      for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        // x-extent of the arc piece within the path's height window.
        Rational xlo, xhi;
        if (arc.horizontal) {
          xlo = std::min(kx0, kx1);
          xhi = std::max(kx0, kx1);
        } else {
          const Rational wlo = std::max(sylo - Rational(n) - Rational(1, 4), kylo);
          const Rational whi = std::min(syhi - Rational(n) + Rational(1, 4), kyhi);
          if (wlo > whi) continue;
          const Rational slope = (kx1 - kx0) / (ky1 - ky0);
          const Rational xa = kx0 + (wlo - ky0) * slope;
          const Rational xb = kx0 + (whi - ky0) * slope;
          xlo = std::min(xa, xb);
          xhi = std::max(xa, xb);
        }
        const std::int64_t m_lo = (sxlo - xhi).floor() - 1;
        const std::int64_t m_hi = (sxhi - xlo).floor() + 2;
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
          const EpsPoint shift{EpsRational(Rational(m)), EpsRational(Rational(n))};
          const EpsPoint k0 = arc.from + shift;
          const EpsPoint k1 = arc.to + shift;
          const int o1 = cross_linear(kdir, s0 - k0).sign();
          const int o2 = cross_linear(kdir, EpsPoint{sx1, sy1} - k0).sign();
          if (o1 * o2 > 0) continue;
          const int o3 = cross_linear(sdir, k0 - s0).sign();
          const int o4 = cross_linear(sdir, k1 - s0).sign();
          if (o3 * o4 > 0) continue;
          if (o1 * o2 == 0 || o3 * o4 == 0) {
            throw Error(ErrorCode::InternalCheckFailed, "path touches the knot trace");
          }
          total += cross_linear(sdir, kdir).sign();
        }
      }
    }
  }
  return total;
}

namespace detail {

inline ExactPoint lattice_point(const GridDiagram& d, std::int64_t col, std::int64_t half_rows) {
  return {Rational(col, d.columns()), Rational(half_rows, 2)};
}

}  // namespace detail

// A(v) = signed crossings of a lattice path from (0, 0) to v. Built edge by
// edge: along alpha for row 0, then one beta edge up to row 1.
inline std::vector<std::int64_t> local_alexander(const GridDiagram& d) {
  if (!d.knot()) throw Error(ErrorCode::TraceBroken, "knot trace not built");
  const auto& knot = *d.knot();
  std::vector<std::int64_t> a(d.num_vertices(), 0);
  std::int64_t run = 0;
  for (int c = 0; c < d.columns(); ++c) {
    a[d.vertex_index({0, c})] = run;
    const std::array<ExactPoint, 2> edge{detail::lattice_point(d, c, 0), detail::lattice_point(d, c + 1, 0)};
    run += crossing_count(knot, edge);
  }
  if (run != 0) throw Error(ErrorCode::InternalCheckFailed, "alpha has nonzero intersection with the knot");
  for (int c = 0; c < d.columns(); ++c) {
    const std::array<ExactPoint, 2> edge{detail::lattice_point(d, c, 0), detail::lattice_point(d, c + d.q(), 1)};
    a[d.vertex_index({1, d.wrap(c + d.q())})] = a[d.vertex_index({0, c})] + crossing_count(knot, edge);
  }
  return a;
}

inline LocalTables make_local_tables(const GridDiagram& d, MaslovTable table = MaslovTable::Consistent) {
  return LocalTables{d.p(), local_spinc(d), local_maslov_halves(d, table), local_alexander(d)};
}

inline SpinCLabel spinc_of_generator(const LocalTables& t, const GridDiagram& d, const Generator& g) {
  return static_cast<int>(mod(t.spinc[d.vertex_index(g.a)] + t.spinc[d.vertex_index(g.b)], t.p));
}

inline int z2_maslov_of_generator(const LocalTables& t, const GridDiagram& d, const Generator& g) {
  const int halves = t.maslov_halves[d.vertex_index(g.a)] + t.maslov_halves[d.vertex_index(g.b)];
  if (halves % 2 != 0) throw Error(ErrorCode::InternalCheckFailed, "local Maslov sum is not an integer");
  return halves / 2 % 2;
}

inline std::int64_t alexander_of_generator(const LocalTables& t, const GridDiagram& d, const Generator& g) {
  return t.alexander[d.vertex_index(g.a)] + t.alexander[d.vertex_index(g.b)];
}

struct AlexanderNormalization {
  std::int64_t shift = 0;
  Laurent quotient;  // T^shift G(T) / (1 - T^-1)
};

// Signed generating function over (relative Alexander, Z/2 Maslov) pairs.
inline Laurent signed_generating_function(std::span<const std::pair<std::int64_t, int>> gens) {
  Laurent g;
  for (const auto& [a, m] : gens) g.add(static_cast<int>(a), m % 2 == 0 ? 1 : -1);
  return g;
}

inline AlexanderNormalization absolute_alexander_shift(std::span<const std::pair<std::int64_t, int>> gens) {
  const Laurent g = signed_generating_function(gens);
  Laurent q;
  if (!divide_by_one_minus_inverse_t(g, q)) {
    throw Error(ErrorCode::NotDivisible, "generating function is not divisible by 1 - T^-1");
  }
  if (q.is_zero()) throw Error(ErrorCode::NoSymmetricShift, "quotient vanishes");
  const int lo = q.min_exp();
  const int hi = q.max_exp();
  if ((lo + hi) % 2 != 0) throw Error(ErrorCode::NoSymmetricShift, "quotient has odd span");
  const int c = -(lo + hi) / 2;
  Laurent shifted = q.shifted(c);
  const std::int64_t sgn = shifted.at(shifted.max_exp()) == shifted.at(shifted.min_exp()) ? 1 : -1;
  for (const auto& [e, coef] : shifted.coeff) {
    if (shifted.at(-e) != sgn * coef) throw Error(ErrorCode::NoSymmetricShift, "no shift makes the quotient symmetric");
  }
  return AlexanderNormalization{c, shifted};
}

// M(x) - M(y) = mu(phi) - 2 (n_w1 + n_w2) for any phi from x to y.
inline std::int64_t relative_maslov(const GridDiagram& d, const Generator& x, const Generator& y) {
  const auto phi = solve_domain(d, x, y);
  if (!phi) throw Error(ErrorCode::DifferentSectors, "no domain connects the generators");
  const Rational mu = maslov_index(d, *phi, x, y);
  const Rational rel = mu - Rational(2 * (basepoint_multiplicity(d, *phi, Basepoint::W1) +
                                         basepoint_multiplicity(d, *phi, Basepoint::W2)));
  if (!rel.is_integer()) throw Error(ErrorCode::InternalCheckFailed, "relative Maslov grading is not integral");
  return rel.num();
}

// d(L(p, q), i) for coprime p > q >= 0, 0 <= i < p + q.
inline Rational lens_d(std::int64_t p, std::int64_t q, std::int64_t i) {
  if (p == 1) return Rational(0);
  const std::int64_t t = 2 * i + 1 - p - q;
  return Rational(t * t - p * q, 4 * p * q) - lens_d(q, p % q, i % q);
}

struct DInvariants {
  int p = 0;
  int q_mod_p = 0;
  int self_conjugate = 0;          // recursion label of the spin structure
  std::vector<Rational> raw;       // d(-L(p, q), i), recursion labels
  std::vector<Rational> centered;  // centered[k] = raw[self_conjugate + k]

  Rational at(SpinCLabel k) const { return centered[mod(k, p)]; }
};

inline DInvariants d_invariants(const TwoBridgeParams& params) {
  DInvariants out;
  out.p = params.p();
  out.q_mod_p = static_cast<int>(mod(params.q(), params.p()));
  const int p = out.p;
  for (int i = 0; i < p; ++i) out.raw.push_back(-lens_d(p, out.q_mod_p, i));
  // Conjugation on recursion labels is i -> q - 1 - i.
  out.self_conjugate = static_cast<int>(mod(static_cast<std::int64_t>(out.q_mod_p - 1) * ((p + 1) / 2), p));
  for (int k = 0; k < p; ++k) out.centered.push_back(out.raw[mod(out.self_conjugate + k, p)]);
  return out;
}

// Grid label g is sent to centered label unit * g. Units u and -u agree by
// conjugation symmetry; the choice is ambiguous when some other unit yields
// a different assignment of d values.
struct SpinCCalibration {
  int unit = 1;
  bool ambiguous = false;
  std::vector<int> grid_to_centered;
};

inline SpinCCalibration calibrate_spinc_to_d_labels(const DInvariants& dinv, int unit = 1) {
  const int p = dinv.p;
  if (std::gcd(mod(unit, p), static_cast<std::int64_t>(p)) != 1) {
    throw Error(ErrorCode::InvalidInput, "calibration unit must be invertible mod p");
  }
  SpinCCalibration cal;
  cal.unit = static_cast<int>(mod(unit, p));
  for (int g = 0; g < p; ++g) cal.grid_to_centered.push_back(static_cast<int>(mod(static_cast<std::int64_t>(cal.unit) * g, p)));
  for (int u = 1; u < p && !cal.ambiguous; ++u) {
    if (std::gcd(u, p) != 1) continue;
    for (int g = 0; g < p; ++g) {
      if (dinv.at(static_cast<int>(mod(static_cast<std::int64_t>(u) * g, p))) != dinv.at(cal.grid_to_centered[g])) {
        cal.ambiguous = true;
        break;
      }
    }
  }
  return cal;
}

// Absolute grading = relative grading + (d - relative grading of the top
// surviving class).
inline Rational anchor_shift(std::int64_t top_relative, const Rational& d) { return d - Rational(top_relative); }

}  // namespace tbhfk
