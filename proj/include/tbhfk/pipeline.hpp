#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tbhfk/complex.hpp"
#include "tbhfk/error.hpp"
#include "tbhfk/f2.hpp"
#include "tbhfk/gradings.hpp"
#include "tbhfk/laurent.hpp"
#include "tbhfk/oracle.hpp"
#include "tbhfk/rational.hpp"
#include "tbhfk/twobridge.hpp"

namespace tbhfk {

inline constexpr const char* kVersion = "0.1.0";

struct Options {
  bool minus = false;
  int truncation = 0;  // 0 means 2p
  int calibration_unit = 1;
  bool validate = false;  // oracle cross-checks, p <= 7 only
};

struct HfkEntry {
  std::int64_t alexander = 0;
  Rational maslov;
  int rank = 0;
  friend bool operator==(const HfkEntry&, const HfkEntry&) = default;
};

struct MinusSummary {
  int truncation = 0;
  Rational window_low;                        // absolute grading, inclusive
  std::vector<std::pair<Rational, int>> ranks;  // absolute grading -> rank, descending
  int tower_length = 0;                       // classes in the window
  bool stable = false;
  bool u_actions_agree = false;
  friend bool operator==(const MinusSummary&, const MinusSummary&) = default;
};

struct SectorReport {
  SpinCLabel grid_label = 0;
  int label = 0;  // centered, in [-(p-1)/2, (p-1)/2]
  Rational d;
  std::int64_t tau = 0;
  std::vector<HfkEntry> hfk;       // graded homology, anchored
  std::vector<HfkEntry> hfk_knot;  // after V-division
  std::optional<MinusSummary> minus;
  friend bool operator==(const SectorReport&, const SectorReport&) = default;
};

struct Diagnostics {
  int generators = 0;
  int vertices = 0;
  int faces = 0;
  int edges = 0;
  int parallelograms = 0;
  int tall_parallelograms = 0;
  std::int64_t alexander_shift = 0;
  int calibration_unit = 1;
  bool calibration_ambiguous = false;
  std::string maslov_table = "consistent";
  int minus_truncation = 0;  // 0 when not computed
  bool oracle_checked = false;
  std::vector<std::string> checks;
};

struct InvariantReport {
  TwoBridgeParams params = normalize_params(3, 1);
  Diagnostics diagnostics;
  std::vector<SectorReport> sectors;  // ordered by centered label 0, 1, -1, 2, -2, ...
  Laurent alexander_polynomial;
};

inline int signed_label(int k, int p) { return k > p / 2 ? k - p : k; }

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InternalCheckFailed, what);
}

// Ranks of total homology at gradings >= low, highest first.
inline std::vector<std::pair<std::int64_t, int>> window(const std::map<std::int64_t, int>& h, std::int64_t low) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    if (it->first >= low) out.emplace_back(it->first, it->second);
  }
  return out;
}

// U1 and U2 agree on homology: for every cycle z, (U1 + U2) z is a boundary.
inline bool u_actions_agree(const SectorComplex& sc) {
  const auto& cc = sc.cc;
  const int n = sc.policy.truncation;
  const int m = cc.size / (n * n);
  auto shifted = [&](int idx, int da, int db) {
    const int a = sc.u1[idx] + da;
    const int b = sc.u2[idx] + db;
    if (a >= n || b >= n) return -1;
    return (a * n + b) * m + idx % m;
  };
  const auto split = split_blocks<std::int64_t>(cc, [&](int i) { return cc.maslov[i]; });
  static const std::vector<int> empty;
  for (const auto& [g, mem] : split.members) {
    const auto below = split.members.find(g - 1);
    const auto& tgt = below == split.members.end() ? empty : below->second;
    const auto cycles = kernel_basis(cc, mem, tgt, split.position);
    if (cycles.empty()) continue;
    const auto dest = split.members.find(g - 2);
    if (dest == split.members.end()) continue;
    const int width = static_cast<int>(dest->second.size());
    Echelon boundaries(width);
    for (int j : tgt) {
      BitVec v(width);
      for (int i : cc.boundary[j]) v.flip(split.position[i]);
      boundaries.insert(std::move(v));
    }
    for (const auto& z : cycles) {
      BitVec w(width);
      for (int k = 0; k < static_cast<int>(mem.size()); ++k) {
        if (!z.get(k)) continue;
        for (int t : {shifted(mem[k], 1, 0), shifted(mem[k], 0, 1)}) {
          if (t >= 0) w.flip(split.position[t]);
        }
      }
      if (!boundaries.reduce(w)) return false;
    }
  }
  return true;
}

}  // namespace detail

inline MinusSummary minus_summary(const ComplexData& data, SpinCLabel sector, int truncation, const Rational& shift) {
  MinusSummary out;
  out.truncation = truncation;
  std::int64_t top = 0;
  for (int g : data.generators.by_sector[sector]) top = std::max(top, data.generators.gens[g].rel_maslov);
  const std::int64_t low = top - 2 * truncation + 2;
  std::vector<std::vector<std::pair<std::int64_t, int>>> runs;
  std::optional<SectorComplex> first;
  for (int n = truncation; n <= truncation + 2; ++n) {
    auto sc = differential(data, sector, Policy::minus(n));
    runs.push_back(detail::window(total_homology_f2(sc), low));
    if (!first) first = std::move(sc);
  }
  out.stable = runs[0] == runs[1] && runs[1] == runs[2];
  out.u_actions_agree = detail::u_actions_agree(*first);
  out.window_low = Rational(low) + shift;
  for (const auto& [g, r] : runs[0]) {
    out.ranks.emplace_back(Rational(g) + shift, r);
    out.tower_length += r;
  }
  return out;
}

// Full pipeline for one knot with every consistency check. Any failed check
// throws InternalCheckFailed (or the module error that detected it).
inline InvariantReport compute_all(const TwoBridgeParams& params, const Options& opt = {}) {
  const ComplexData data = build_complex_data(params);
  const int p = data.p();
  const auto& gs = data.generators;
  const auto dinv = d_invariants(params);
  const auto cal = calibrate_spinc_to_d_labels(dinv, opt.calibration_unit);

  InvariantReport rep;
  rep.params = params;
  auto& diag = rep.diagnostics;
  diag.generators = static_cast<int>(gs.gens.size());
  diag.vertices = data.diagram.num_vertices();
  diag.faces = data.diagram.num_faces();
  diag.edges = data.diagram.num_edges();
  diag.parallelograms = static_cast<int>(data.parallelograms.size());
  for (const auto& par : data.parallelograms) diag.tall_parallelograms += par.height > 1;
  diag.alexander_shift = gs.alexander.shift;
  diag.calibration_unit = cal.unit;
  diag.calibration_ambiguous = cal.ambiguous;
  rep.alexander_polynomial = gs.alexander.quotient;

  detail::require(diag.generators == 2 * p * p, "generator count is not 2p^2");
  for (const auto& members : gs.by_sector) detail::require(static_cast<int>(members.size()) == 2 * p, "sector size is not 2p");
  diag.checks.push_back("generator_count");

  const int truncation = opt.truncation > 0 ? opt.truncation : 2 * p;
  if (opt.minus) diag.minus_truncation = truncation;

  std::vector<SectorReport> by_grid(p);
  for (int s = 0; s < p; ++s) {
    auto& sr = by_grid[s];
    sr.grid_label = s;
    sr.label = signed_label(cal.grid_to_centered[s], p);
    sr.d = dinv.at(cal.grid_to_centered[s]);

    const auto graded = differential(data, s, Policy::graded());
    const auto filtered = differential(data, s, Policy::filtered_hat());
    const auto tr = tau(filtered);
    detail::require(tr.total_rank == 2, "filtered homology rank is not 2");
    const auto total = total_homology_f2(filtered);
    detail::require(total.size() == 2 && total.rbegin()->first - total.begin()->first == 1,
                    "filtered homology is not a copy of V");
    sr.tau = tr.tau;
    const Rational shift = anchor_shift(tr.top_maslov, sr.d);

    for (int g : gs.by_sector[s]) {
      const Rational gap = Rational(gs.gens[g].rel_maslov) + shift - sr.d;
      detail::require(gap.is_integer() && mod(gap.num(), 2) == gs.gens[g].z2, "anchored grading parity mismatch");
    }

    const auto h = homology_f2(graded);
    for (const auto& [k, r] : h) sr.hfk.push_back({k.first, Rational(k.second) + shift, r});
    for (const auto& [k, r] : v_division(h)) sr.hfk_knot.push_back({k.first, Rational(k.second) + shift, r});

    if (opt.minus) {
      sr.minus = minus_summary(data, s, truncation, shift);
      detail::require(sr.minus->stable, "truncated minus homology is not stable in its window");
      detail::require(sr.minus->u_actions_agree, "U1 and U2 act differently on homology");
    }
  }
  diag.checks.push_back("d_squared");
  diag.checks.push_back("total_rank_2");
  diag.checks.push_back("parity");
  diag.checks.push_back("v_division");
  if (opt.minus) diag.checks.push_back("minus_window");

  // Conjugate sectors carry the same tables.
  std::vector<int> centered_to_grid(p);
  for (int s = 0; s < p; ++s) centered_to_grid[cal.grid_to_centered[s]] = s;
  for (int s = 0; s < p; ++s) {
    const auto& a = by_grid[s];
    const auto& b = by_grid[centered_to_grid[mod(-cal.grid_to_centered[s], p)]];
    detail::require(a.d == b.d && a.tau == b.tau && a.hfk == b.hfk && a.hfk_knot == b.hfk_knot,
                    "conjugate sectors differ");
  }
  diag.checks.push_back("conjugation");

  const Laurent& delta = rep.alexander_polynomial;
  detail::require(delta.is_symmetric(), "Alexander polynomial is not symmetric");
  detail::require(delta.eval_at_one() == p, "Alexander polynomial does not evaluate to p");
  Laurent chi;
  for (const auto& sr : by_grid) {
    for (const auto& e : sr.hfk_knot) {
      const Rational gap = e.maslov - sr.d;
      chi.add(static_cast<int>(e.alexander), mod(gap.num(), 2) == 0 ? e.rank : -e.rank);
    }
  }
  detail::require(chi == delta, "Euler characteristic of the tables differs from the Alexander polynomial");
  diag.checks.push_back("alexander_polynomial");

  if (opt.validate) {
    if (p > 7) throw Error(ErrorCode::InvalidInput, "oracle validation is limited to p <= 7");
    for (const Policy& pol : {Policy::graded(), Policy::filtered_hat(), Policy::partial_hat(1), Policy::minus(1)}) {
      const auto found = oracle::classify_index_one(data.diagram, pol);
      if (found != oracle::parallelogram_arrows(data, pol)) {
        throw Error(ErrorCode::MismatchAgainstParallelograms, std::string(to_string(pol.flavor)) + " arrows differ");
      }
      if (pol.flavor != Flavor::Graded && pol.flavor != Flavor::FilteredHat) continue;
      for (int s = 0; s < p; ++s) {
        const auto main = differential(data, s, pol);
        const auto dual = oracle::complex_from_arrows(data, s, found);
        const bool same = pol.flavor == Flavor::Graded
                              ? oracle::naive_bigraded_homology(dual) == homology_f2(main)
                              : oracle::naive_maslov_homology(dual) == total_homology_f2(main);
        if (!same) throw Error(ErrorCode::MismatchAgainstParallelograms, "homology ranks differ");
      }
    }
    diag.oracle_checked = true;
    diag.checks.push_back("oracle");
  }

  // 0, 1, -1, 2, -2, ...
  for (int k = 0; k <= p / 2; ++k) {
    rep.sectors.push_back(by_grid[centered_to_grid[k]]);
    if (k > 0) rep.sectors.push_back(by_grid[centered_to_grid[p - k]]);
  }
  return rep;
}

}  // namespace tbhfk
