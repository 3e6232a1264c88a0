#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tbhfk/diagram.hpp"
#include "tbhfk/error.hpp"
#include "tbhfk/f2.hpp"
#include "tbhfk/gradings.hpp"
#include "tbhfk/laurent.hpp"

namespace tbhfk {

struct GeneratorInfo {
  Generator g;
  SpinCLabel spinc = 0;
  std::int64_t alexander = 0;   // absolute
  int z2 = 0;
  std::int64_t rel_maslov = 0;  // relative to the sector's reference generator
};

struct GeneratorSet {
  int p = 0;
  std::vector<GeneratorInfo> gens;
  std::vector<int> index_of;                // a.col * 2p + b.col -> index, or -1
  std::vector<std::vector<int>> by_sector;  // sector -> generator indices
  AlexanderNormalization alexander;

  int find(const Generator& g) const { return index_of[g.a.col * 2 * p + g.b.col]; }
};

// All 2p^2 generators with Spin^c label, Z/2 grading, absolute Alexander
// grading and Maslov grading relative to the first generator of the sector.
inline GeneratorSet enumerate_generators(const GridDiagram& d, const LocalTables& t) {
  GeneratorSet out;
  out.p = d.p();
  const int n = d.columns();
  out.index_of.assign(n * n, -1);
  out.by_sector.resize(d.p());
  for (int ac = 0; ac < n; ++ac) {
    for (int bc = 0; bc < n; ++bc) {
      const Generator g{{0, ac}, {1, bc}};
      if (!d.is_generator(g.a, g.b)) continue;
      GeneratorInfo info;
      info.g = g;
      info.spinc = spinc_of_generator(t, d, g);
      info.alexander = alexander_of_generator(t, d, g);
      info.z2 = z2_maslov_of_generator(t, d, g);
      out.index_of[ac * n + bc] = static_cast<int>(out.gens.size());
      out.by_sector[info.spinc].push_back(static_cast<int>(out.gens.size()));
      out.gens.push_back(info);
    }
  }
  std::vector<std::pair<std::int64_t, int>> az;
  for (const auto& gi : out.gens) az.emplace_back(gi.alexander, gi.z2);
  out.alexander = absolute_alexander_shift(az);
  for (auto& gi : out.gens) gi.alexander += out.alexander.shift;
  for (const auto& members : out.by_sector) {
    if (members.empty()) continue;
    const Generator ref = out.gens[members.front()].g;
    for (int i : members) out.gens[i].rel_maslov = relative_maslov(d, out.gens[i].g, ref);
  }
  return out;
}

// Parallelogram between two alpha rows and two beta lines. It climbs
// `height` strips (odd, so the top row differs from the bottom row) and is
// `len` faces wide (odd, so the corners form generators). Each level t is
// the run of faces (strip + t, start + t q ... start + t q + len - 1).
struct Parallelogram {
  int strip = 0;
  int start = 0;
  int len = 0;
  int height = 1;
  std::array<Vertex, 4> corners;        // bottom-left, bottom-right, top-left, top-right
  std::array<int, 4> basepoint_mult{};  // indexed by Basepoint
  Generator source;                     // bottom-left + top-right
  Generator target;                     // bottom-right + top-left

  int n_w() const { return basepoint_mult[0] + basepoint_mult[3]; }
  int n_z() const { return basepoint_mult[1] + basepoint_mult[2]; }

  template <class F>
  void for_each_face(const GridDiagram& d, F&& f) const {
    for (int t = 0; t < height; ++t) {
      for (int k = 0; k < len; ++k) f(Face{(strip + t) % 2, d.wrap(start + static_cast<std::int64_t>(t) * d.q() + k)});
    }
  }

  Domain domain(const GridDiagram& d) const {
    Domain dom = zero_domain(d);
    for_each_face(d, [&](const Face& f) { ++dom.mult[d.face_index(f)]; });
    return dom;
  }
};

inline Generator pair_to_generator(const Vertex& u, const Vertex& v) { return u.row == 0 ? Generator{u, v} : Generator{v, u}; }

// Embedded parallelograms of Maslov index one whose corners form two
// generators. Covering each face at most once bounds height * len by 4p.
inline std::vector<Parallelogram> enumerate_parallelograms(const GridDiagram& d) {
  std::vector<Parallelogram> out;
  const int n = d.columns();
  std::vector<int> mult(d.num_faces(), 0);
  for (int s = 0; s < 2; ++s) {
    for (int j = 0; j < n; ++j) {
      for (int height = 1; height <= d.num_faces(); ++height) {
        for (int len = 1; len < n && len * height <= d.num_faces(); ++len) {
          Parallelogram par;
          par.strip = s;
          par.start = j;
          par.len = len;
          par.height = height;
          const int top = (s + height) % 2;
          const std::int64_t shift = static_cast<std::int64_t>(height) * d.q();
          par.corners = {Vertex{s, j}, Vertex{s, d.wrap(j + len)}, Vertex{top, d.wrap(j + shift)},
                         Vertex{top, d.wrap(j + shift + len)}};
          if (par.corners[0].row == par.corners[3].row) continue;
          par.source = pair_to_generator(par.corners[0], par.corners[3]);
          par.target = pair_to_generator(par.corners[1], par.corners[2]);
          if (!d.is_generator(par.source.a, par.source.b) || !d.is_generator(par.target.a, par.target.b)) continue;
          std::fill(mult.begin(), mult.end(), 0);
          bool embedded = true;
          par.for_each_face(d, [&](const Face& f) { embedded = ++mult[d.face_index(f)] <= 1 && embedded; });
          if (!embedded) continue;
          std::int64_t quarters = 0;
          for (const auto& v : par.corners) {
            for (const auto& f : d.faces_around(v)) quarters += mult[d.face_index(f)];
          }
          if (quarters != 4) continue;  // mu = quarters / 4
          for (int b = 0; b < 4; ++b) par.basepoint_mult[b] = mult[d.face_index(d.basepoint_face(static_cast<Basepoint>(b)))];
          out.push_back(par);
        }
      }
    }
  }
  return out;
}

enum class Flavor { Graded, FilteredHat, PartialHat, Minus };

inline const char* to_string(Flavor f) {
  switch (f) {
    case Flavor::Graded: return "graded";
    case Flavor::FilteredHat: return "filtered_hat";
    case Flavor::PartialHat: return "partial_hat";
    case Flavor::Minus: return "minus";
  }
  return "?";
}

struct Policy {
  Flavor flavor = Flavor::Graded;
  int truncation = 0;  // U powers kept: 0 .. truncation-1 (partial_hat, minus)

  static Policy graded() { return {Flavor::Graded, 0}; }
  static Policy filtered_hat() { return {Flavor::FilteredHat, 0}; }
  static Policy partial_hat(int n) { return {Flavor::PartialHat, n}; }
  static Policy minus(int n) { return {Flavor::Minus, n}; }
};

inline bool admits(const Policy& policy, const Parallelogram& par) {
  const auto& m = par.basepoint_mult;
  switch (policy.flavor) {
    case Flavor::Graded: return m[0] == 0 && m[1] == 0 && m[2] == 0 && m[3] == 0;
    case Flavor::FilteredHat: return m[0] == 0 && m[3] == 0;
    case Flavor::PartialHat: return m[0] == 0;
    case Flavor::Minus: return true;
  }
  return false;
}

// Everything shared by the per-sector complexes.
struct ComplexData {
  GridDiagram diagram;
  LocalTables tables;
  GeneratorSet generators;
  std::vector<Parallelogram> parallelograms;
  std::vector<std::vector<int>> arrows_by_sector;  // parallelogram indices

  int p() const { return diagram.p(); }
};

inline ComplexData build_complex_data(const TwoBridgeParams& params) {
  GridDiagram d = make_diagram(params);
  LocalTables t = make_local_tables(d);
  GeneratorSet gs = enumerate_generators(d, t);
  auto pars = enumerate_parallelograms(d);
  std::vector<std::vector<int>> by_sector(d.p());
  for (int k = 0; k < static_cast<int>(pars.size()); ++k) {
    const auto& src = gs.gens[gs.find(pars[k].source)];
    const auto& dst = gs.gens[gs.find(pars[k].target)];
    if (src.spinc != dst.spinc) throw Error(ErrorCode::InternalCheckFailed, "parallelogram joins two sectors");
    by_sector[src.spinc].push_back(k);
  }
  return ComplexData{std::move(d), std::move(t), std::move(gs), std::move(pars), std::move(by_sector)};
}

// Basis element: generator times U1^u1 U2^u2.
struct SectorComplex {
  SpinCLabel sector = 0;
  Policy policy;
  std::vector<int> gen;  // index into GeneratorSet
  std::vector<int> u1;
  std::vector<int> u2;
  ChainComplex cc;
};

// The sector's complex under the policy. Arrows run source -> target; the
// target has Maslov grading one less (after U weights).
inline SectorComplex differential(const ComplexData& data, SpinCLabel sector, const Policy& policy) {
  const auto& gs = data.generators;
  const auto& members = gs.by_sector[sector];
  const int n1 = policy.flavor == Flavor::Minus ? policy.truncation : 1;
  const int n2 = (policy.flavor == Flavor::Minus || policy.flavor == Flavor::PartialHat) ? policy.truncation : 1;
  if (n1 < 1 || n2 < 1) throw Error(ErrorCode::InvalidInput, "truncation order must be positive");
  SectorComplex sc;
  sc.sector = sector;
  sc.policy = policy;
  std::vector<int> local(gs.gens.size(), -1);
  for (int k = 0; k < static_cast<int>(members.size()); ++k) local[members[k]] = k;
  const int m = static_cast<int>(members.size());
  auto basis_index = [&](int loc, int a, int b) { return (a * n2 + b) * m + loc; };
  const int size = m * n1 * n2;
  sc.gen.resize(size);
  sc.u1.resize(size);
  sc.u2.resize(size);
  sc.cc.size = size;
  sc.cc.boundary.assign(size, {});
  sc.cc.maslov.resize(size);
  sc.cc.alexander.resize(size);
  for (int a = 0; a < n1; ++a) {
    for (int b = 0; b < n2; ++b) {
      for (int loc = 0; loc < m; ++loc) {
        const int idx = basis_index(loc, a, b);
        const auto& gi = gs.gens[members[loc]];
        sc.gen[idx] = members[loc];
        sc.u1[idx] = a;
        sc.u2[idx] = b;
        sc.cc.maslov[idx] = gi.rel_maslov - 2 * (a + b);
        sc.cc.alexander[idx] = gi.alexander - a - b;
      }
    }
  }
  for (int k : data.arrows_by_sector[sector]) {
    const auto& par = data.parallelograms[k];
    if (!admits(policy, par)) continue;
    const int src = local[gs.find(par.source)];
    const int dst = local[gs.find(par.target)];
    const int w1 = policy.flavor == Flavor::Minus ? par.basepoint_mult[0] : 0;
    const int w2 = (policy.flavor == Flavor::Minus || policy.flavor == Flavor::PartialHat) ? par.basepoint_mult[3] : 0;
    for (int a = 0; a + w1 < n1; ++a) {
      for (int b = 0; b + w2 < n2; ++b) {
        sc.cc.boundary[basis_index(src, a, b)].push_back(basis_index(dst, a + w1, b + w2));
      }
    }
  }
  // Parallel arrows cancel mod 2.
  for (int j = 0; j < size; ++j) {
    auto& col = sc.cc.boundary[j];
    std::sort(col.begin(), col.end());
    std::vector<int> reduced;
    for (std::size_t i = 0; i < col.size();) {
      std::size_t e = i;
      while (e < col.size() && col[e] == col[i]) ++e;
      if ((e - i) % 2 == 1) reduced.push_back(col[i]);
      i = e;
    }
    col.swap(reduced);
    for (int i : col) {
      if (sc.cc.maslov[i] != sc.cc.maslov[j] - 1) {
        throw Error(ErrorCode::InternalCheckFailed, "arrow does not lower the Maslov grading by one");
      }
      const bool ok = policy.flavor == Flavor::Graded ? sc.cc.alexander[i] == sc.cc.alexander[j]
                                                      : sc.cc.alexander[i] <= sc.cc.alexander[j];
      if (!ok) throw Error(ErrorCode::InternalCheckFailed, "arrow violates the Alexander filtration");
    }
  }
  if (!d_squared_zero(sc.cc)) {
    throw Error(ErrorCode::DSquaredNonzero, std::string(to_string(policy.flavor)) + " differential squares to nonzero");
  }
  return sc;
}

using BigradedRanks = std::map<std::pair<std::int64_t, std::int64_t>, int>;  // (A, relative M) -> rank

inline BigradedRanks homology_f2(const SectorComplex& sc) { return bigraded_homology(sc.cc); }

inline std::map<std::int64_t, int> total_homology_f2(const SectorComplex& sc) { return maslov_homology(sc.cc); }

struct TauResult {
  std::int64_t tau = 0;
  std::int64_t top_maslov = 0;  // relative grading of the top surviving class
  int total_rank = 0;
};

// Filtration-ordered reduction of the filtered complex. Each essential
// class is born at its Alexander level; tau is the birth of the one with the
// highest Maslov grading.
inline TauResult tau(const SectorComplex& filtered) {
  const auto& cc = filtered.cc;
  std::vector<int> order(cc.size);
  for (int i = 0; i < cc.size; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (cc.alexander[x] != cc.alexander[y]) return cc.alexander[x] < cc.alexander[y];
    if (cc.maslov[x] != cc.maslov[y]) return cc.maslov[x] < cc.maslov[y];
    return x < y;
  });
  const auto pers = reduce_filtered(cc, order);
  if (pers.essential.empty()) throw Error(ErrorCode::EmptyHomology, "sector has no surviving class");
  TauResult out;
  out.total_rank = static_cast<int>(pers.essential.size());
  int best = pers.essential.front();
  for (int e : pers.essential) {
    if (cc.maslov[e] > cc.maslov[best]) best = e;
  }
  for (int e : pers.essential) {
    if (e != best && cc.maslov[e] == cc.maslov[best]) {
      throw Error(ErrorCode::InternalCheckFailed, "top homology grading is not one-dimensional");
    }
  }
  out.tau = cc.alexander[best];
  out.top_maslov = cc.maslov[best];
  return out;
}

// Divides the Poincare polynomial by (1 + a^-1 m^-1).
inline BigradedRanks v_division(const BigradedRanks& table) {
  BigradedRanks q;
  for (auto it = table.rbegin(); it != table.rend(); ++it) {
    const auto [key, rank] = *it;
    int above = 0;
    if (auto up = q.find({key.first + 1, key.second + 1}); up != q.end()) above = up->second;
    const int v = rank - above;
    if (v < 0) throw Error(ErrorCode::NotDivisibleByV, "negative coefficient in the quotient");
    if (v > 0) q[key] = v;
  }
  BigradedRanks back;
  for (const auto& [key, r] : q) {
    back[key] += r;
    back[{key.first - 1, key.second - 1}] += r;
  }
  if (back != table) throw Error(ErrorCode::NotDivisibleByV, "table is not divisible by V");
  return q;
}

// Symmetrized quotient of the signed generating function.
inline Laurent alexander_polynomial(const GeneratorSet& gs) { return gs.alexander.quotient; }

}  // namespace tbhfk
