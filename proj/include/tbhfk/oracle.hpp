#pragma once

// Brute-force cross-checks. Nothing here calls the parallelogram
// enumeration, the domain solver or the bit-packed elimination; boundaries
// are read off face corners directly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "tbhfk/complex.hpp"
#include "tbhfk/diagram.hpp"
#include "tbhfk/error.hpp"
#include "tbhfk/f2.hpp"

namespace tbhfk::oracle {

// Alpha endpoint contribution of one face: its boundary runs left to right
// along the bottom and right to left along the top.
inline std::array<std::pair<int, int>, 4> face_endpoints(const GridDiagram& d, const Face& f) {
  const auto c = d.corners(f);
  return {std::pair{d.vertex_index(c[1]), +1}, std::pair{d.vertex_index(c[0]), -1},
          std::pair{d.vertex_index(c[2]), +1}, std::pair{d.vertex_index(c[3]), -1}};
}

// Face order in which vertices complete early: (0, t) and (1, t - q) interleaved.
inline std::vector<int> sweep_order(const GridDiagram& d) {
  std::vector<int> order;
  for (int t = 0; t < d.columns(); ++t) {
    order.push_back(d.face_index({0, t}));
    order.push_back(d.face_index({1, d.wrap(t - d.q())}));
  }
  return order;
}

namespace detail {

struct Search {
  const GridDiagram& d;
  std::vector<int> order;
  std::vector<int> open;                // per vertex: faces around it not yet assigned
  std::vector<std::vector<int>> closes;  // per order slot: vertices completed there
  std::vector<std::int64_t> ends;
  std::vector<std::int64_t> mult;

  explicit Search(const GridDiagram& dd) : d(dd), order(sweep_order(dd)) {
    open.assign(d.num_vertices(), 0);
    for (int v = 0; v < d.num_vertices(); ++v) open[v] = 4;
    closes.resize(order.size());
    std::vector<int> left = open;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (int v = 0; v < d.num_vertices(); ++v) {
        for (const auto& f : d.faces_around(d.vertex_at(v))) {
          if (d.face_index(f) == order[k] && --left[v] == 0) closes[k].push_back(v);
        }
      }
    }
    ends.assign(d.num_vertices(), 0);
    mult.assign(d.num_faces(), 0);
  }

  void apply(int face, std::int64_t m) {
    for (const auto& [v, s] : face_endpoints(d, d.face_at(face))) ends[v] += s * m;
    mult[face] += m;
  }
};

}  // namespace detail

// All nonnegative domains from x to y with total multiplicity <= bound.
inline std::vector<Domain> enumerate_positive_domains(const GridDiagram& d, const Generator& x, const Generator& y,
                                                      int bound) {
  detail::Search s(d);
  std::vector<std::int64_t> want(d.num_vertices(), 0);
  want[d.vertex_index(y.a)] += 1;
  want[d.vertex_index(y.b)] += 1;
  want[d.vertex_index(x.a)] -= 1;
  want[d.vertex_index(x.b)] -= 1;
  std::vector<Domain> out;
  auto rec = [&](auto&& self, std::size_t k, int budget) -> void {
    if (k == s.order.size()) {
      out.push_back(Domain{s.mult});
      return;
    }
    const int face = s.order[k];
    for (int m = 0; m <= budget; ++m) {
      if (m > 0) s.apply(face, 1);
      bool ok = true;
      for (int v : s.closes[k]) ok = ok && s.ends[v] == want[v];
      if (ok) self(self, k + 1, budget - m);
    }
    s.apply(face, -budget);
  };
  rec(rec, 0, bound);
  return out;
}

struct IndexOneDomain {
  Generator x;
  Generator y;
  Domain domain;
  friend auto operator<=>(const IndexOneDomain& a, const IndexOneDomain& b) {
    return std::tie(a.x, a.y, a.domain.mult) <=> std::tie(b.x, b.y, b.domain.mult);
  }
  friend bool operator==(const IndexOneDomain& a, const IndexOneDomain& b) {
    return a.x == b.x && a.y == b.y && a.domain == b.domain;
  }
};

inline bool satisfies(const GridDiagram& d, const Domain& dom, const Policy& policy) {
  const auto n = [&](Basepoint b) { return dom.mult[d.face_index(d.basepoint_face(b))]; };
  switch (policy.flavor) {
    case Flavor::Graded: return n(Basepoint::W1) == 0 && n(Basepoint::W2) == 0 && n(Basepoint::Z1) == 0 && n(Basepoint::Z2) == 0;
    case Flavor::FilteredHat: return n(Basepoint::W1) == 0 && n(Basepoint::W2) == 0;
    case Flavor::PartialHat: return n(Basepoint::W1) == 0;
    case Flavor::Minus: return true;
  }
  return false;
}

// Every multiplicity-{0,1} domain of index one between two generators,
// filtered by the policy's basepoint rule.
inline std::vector<IndexOneDomain> classify_index_one(const GridDiagram& d, const Policy& policy) {
  detail::Search s(d);
  const int n = d.columns();
  std::vector<IndexOneDomain> out;

  // Index from corner quarters: sum over the four points of (faces around) / 4.
  auto quarters_at = [&](const Vertex& v) {
    std::int64_t q = 0;
    for (const auto& f : d.faces_around(v)) q += s.mult[d.face_index(f)];
    return q;
  };
  auto valid = [&](const Vertex& a, const Vertex& b) { return a.row == 0 && b.row == 1 && d.on_beta(a) != d.on_beta(b); };

  auto finish = [&]() {
    if (std::all_of(s.mult.begin(), s.mult.end(), [](std::int64_t m) { return m == 0; })) return;
    std::array<std::vector<int>, 2> plus, minus;
    for (int v = 0; v < d.num_vertices(); ++v) {
      if (s.ends[v] == 1) plus[v / n].push_back(v % n);
      if (s.ends[v] == -1) minus[v / n].push_back(v % n);
    }
    // Per row: either one point moves (minus -> plus) or a shared point stays.
    std::array<std::vector<std::pair<int, int>>, 2> options;  // (x col, y col)
    for (int r = 0; r < 2; ++r) {
      if (plus[r].size() == 1 && minus[r].size() == 1) {
        options[r].emplace_back(minus[r][0], plus[r][0]);
      } else if (plus[r].empty() && minus[r].empty()) {
        for (int c = 0; c < n; ++c) options[r].emplace_back(c, c);
      } else {
        return;
      }
    }
    for (const auto& [xa, ya] : options[0]) {
      for (const auto& [xb, yb] : options[1]) {
        const Generator x{{0, xa}, {1, xb}};
        const Generator y{{0, ya}, {1, yb}};
        if (!valid(x.a, x.b) || !valid(y.a, y.b)) continue;
        const std::int64_t q = quarters_at(x.a) + quarters_at(x.b) + quarters_at(y.a) + quarters_at(y.b);
        if (q != 4) continue;
        Domain dom{s.mult};
        if (!satisfies(d, dom, policy)) continue;
        out.push_back(IndexOneDomain{x, y, std::move(dom)});
      }
    }
  };

  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == s.order.size()) {
      finish();
      return;
    }
    const int face = s.order[k];
    for (int m = 0; m < 2; ++m) {
      if (m == 1) s.apply(face, 1);
      bool ok = true;
      std::array<int, 2> pos{0, 0}, neg{0, 0};
      for (int v : s.closes[k]) ok = ok && s.ends[v] >= -1 && s.ends[v] <= 1;
      if (ok) {
        // At most one +1 and one -1 per row among completed vertices.
        for (int v = 0; v < d.num_vertices() && ok; ++v) {
          if (s.ends[v] == 0) continue;
          bool done = true;
          for (const auto& f : d.faces_around(d.vertex_at(v))) {
            const int fi = d.face_index(f);
            done = done && std::find(s.order.begin(), s.order.begin() + static_cast<long>(k) + 1, fi) !=
                               s.order.begin() + static_cast<long>(k) + 1;
          }
          if (!done) continue;
          (s.ends[v] > 0 ? pos : neg)[v / n]++;
          ok = pos[v / n] <= 1 && neg[v / n] <= 1;
        }
      }
      if (ok) self(self, k + 1);
    }
    s.apply(face, -1);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// The parallelogram arrows admitted by the policy, in the same form.
inline std::vector<IndexOneDomain> parallelogram_arrows(const ComplexData& data, const Policy& policy) {
  std::vector<IndexOneDomain> out;
  for (const auto& par : data.parallelograms) {
    if (admits(policy, par)) out.push_back(IndexOneDomain{par.source, par.target, par.domain(data.diagram)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Dense F2 rank by plain row reduction.
inline int dense_rank(std::vector<std::vector<std::uint8_t>> m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][c]) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r != rank && m[r][c]) {
        for (int k = c; k < cols; ++k) m[r][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

// Homology ranks keyed by key(i), computed with dense matrices of the whole
// differential restricted to each pair of consecutive blocks.
template <class Key, class KeyFn>
std::map<Key, int> naive_homology(const ChainComplex& c, KeyFn key) {
  std::map<Key, std::vector<int>> blocks;
  for (int i = 0; i < c.size; ++i) blocks[key(i)].push_back(i);
  std::map<Key, int> out;
  std::map<Key, int> rank_from;  // rank of d leaving a block
  std::map<Key, int> rank_into;  // rank of d arriving in a block
  for (const auto& [k, src] : blocks) {
    std::map<Key, std::vector<int>> targets;
    for (int j : src) {
      for (int i : c.boundary[j]) targets[key(i)];
    }
    for (auto& [tk, unused] : targets) {
      const auto& dst = blocks.at(tk);
      std::vector<std::vector<std::uint8_t>> m(dst.size(), std::vector<std::uint8_t>(src.size(), 0));
      for (std::size_t jj = 0; jj < src.size(); ++jj) {
        for (int i : c.boundary[src[jj]]) {
          const auto it = std::find(dst.begin(), dst.end(), i);
          m[it - dst.begin()][jj] ^= 1;
        }
      }
      const int r = dense_rank(std::move(m));
      rank_from[k] += r;
      rank_into[tk] += r;
    }
  }
  for (const auto& [k, mem] : blocks) {
    const int r = static_cast<int>(mem.size()) - rank_from[k] - rank_into[k];
    if (r != 0) out[k] = r;
  }
  return out;
}

inline std::map<std::pair<std::int64_t, std::int64_t>, int> naive_bigraded_homology(const ChainComplex& c) {
  return naive_homology<std::pair<std::int64_t, std::int64_t>>(
      c, [&](int i) { return std::make_pair(c.alexander[i], c.maslov[i]); });
}

inline std::map<std::int64_t, int> naive_maslov_homology(const ChainComplex& c) {
  return naive_homology<std::int64_t>(c, [&](int i) { return c.maslov[i]; });
}

// Hat-flavor sector complex assembled from oracle arrows, with the main
// pipeline's gradings.
inline ChainComplex complex_from_arrows(const ComplexData& data, SpinCLabel sector,
                                        const std::vector<IndexOneDomain>& arrows) {
  const auto& gs = data.generators;
  const auto& members = gs.by_sector[sector];
  std::map<int, int> local;
  for (int k = 0; k < static_cast<int>(members.size()); ++k) local[members[k]] = k;
  ChainComplex c;
  c.size = static_cast<int>(members.size());
  c.boundary.assign(c.size, {});
  for (int k = 0; k < c.size; ++k) {
    c.maslov.push_back(gs.gens[members[k]].rel_maslov);
    c.alexander.push_back(gs.gens[members[k]].alexander);
  }
  for (const auto& a : arrows) {
    const auto xs = local.find(gs.find(a.x));
    const auto ys = local.find(gs.find(a.y));
    if (xs == local.end() && ys == local.end()) continue;
    if (xs == local.end() || ys == local.end()) {
      throw Error(ErrorCode::MismatchAgainstParallelograms, "index one domain joins two sectors");
    }
    auto& col = c.boundary[xs->second];
    const auto it = std::find(col.begin(), col.end(), ys->second);
    if (it == col.end()) col.push_back(ys->second);
    else col.erase(it);
  }
  return c;
}

}  // namespace tbhfk::oracle
