#pragma once

// Twisted toroidal grid diagram for the lift of a two-bridge knot to its
// double branched cover.
//
// The torus is R^2/Z^2 with horizontal curves alpha (y = 0) and J alpha
// (y = 1/2), and slope p/q curves beta and J beta. Vertices sit at
// (j/(2p), r/2) for r in {0,1}, j in Z/2p. Moving up half a unit along a
// slope p/q line shifts the column by q, so face (s, j) has bottom corners
// (s, j), (s, j+1) and top corners (s+1, j+q), (s+1, j+q+1). This corner
// rule is all the geometry the complex needs; exact (infinitesimal)
// rational geometry is kept only for basepoint location and the knot trace.
//
// Counts: 4p vertices, 4p faces, 8p edges. The curves cut the torus into
// 4p quadrilaterals regardless of q.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tbhfk/error.hpp"
#include "tbhfk/rational.hpp"
#include "tbhfk/twobridge.hpp"

namespace tbhfk {

struct Vertex {
  int row = 0;  // 0: alpha at height 0, 1: J alpha at height 1/2
  int col = 0;  // x = col / (2p)
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct Face {
  int strip = 0;  // 0: between heights 0 and 1/2, 1: between 1/2 and 1
  int start = 0;
  friend auto operator<=>(const Face&, const Face&) = default;
};

// Unordered pair of intersection points, stored as (row-0 vertex, row-1 vertex).
struct Generator {
  Vertex a;
  Vertex b;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

enum class Basepoint { W1 = 0, Z1 = 1, Z2 = 2, W2 = 3 };

inline const char* to_string(Basepoint b) {
  switch (b) {
    case Basepoint::W1: return "w1";
    case Basepoint::Z1: return "z1";
    case Basepoint::Z2: return "z2";
    case Basepoint::W2: return "w2";
  }
  return "?";
}

inline bool is_w(Basepoint b) { return b == Basepoint::W1 || b == Basepoint::W2; }

// The four marked points, by position in the unit square.
enum class MarkPosition { TopLeft = 0, TopRight = 1, BottomLeft = 2, BottomRight = 3 };

struct KnotArc {
  EpsPoint from;  // lifted to R^2; consecutive arcs share endpoints
  EpsPoint to;
  bool horizontal = false;
  MarkPosition from_mark{};
  MarkPosition to_mark{};
};

struct KnotTrace {
  std::array<KnotArc, 4> arcs;
};

// Multiplicities over faces, indexed by GridDiagram::face_index.
struct Domain {
  std::vector<std::int64_t> mult;
  friend bool operator==(const Domain&, const Domain&) = default;
};

class GridDiagram {
 public:
  const TwoBridgeParams& params() const { return params_; }
  int p() const { return params_.p(); }
  int q() const { return params_.q(); }
  int columns() const { return 2 * params_.p(); }
  int num_vertices() const { return 4 * params_.p(); }
  int num_faces() const { return 4 * params_.p(); }
  int num_edges() const { return 8 * params_.p(); }

  int wrap(std::int64_t col) const { return static_cast<int>(mod(col, columns())); }

  int vertex_index(const Vertex& v) const { return v.row * columns() + v.col; }
  Vertex vertex_at(int idx) const { return {idx / columns(), idx % columns()}; }
  int face_index(const Face& f) const { return f.strip * columns() + f.start; }
  Face face_at(int idx) const { return {idx / columns(), idx % columns()}; }

  // beta (true) or J beta (false): row 0 even / row 1 odd columns lie on beta.
  bool on_beta(const Vertex& v) const { return (v.col % 2 == 0) == (v.row == 0); }

  // Corners in order bottom-left, bottom-right, top-left, top-right.
  std::array<Vertex, 4> corners(const Face& f) const {
    const int top = 1 - f.strip;
    return {Vertex{f.strip, f.start}, Vertex{f.strip, wrap(f.start + 1)}, Vertex{top, wrap(f.start + q())},
            Vertex{top, wrap(f.start + q() + 1)}};
  }

  // The four faces meeting at v: upper-left, upper-right, lower-left, lower-right.
  std::array<Face, 4> faces_around(const Vertex& v) const {
    const int below = 1 - v.row;
    return {Face{v.row, wrap(v.col - 1)}, Face{v.row, v.col}, Face{below, wrap(v.col - q() - 1)},
            Face{below, wrap(v.col - q())}};
  }

  bool is_generator(const Vertex& a, const Vertex& b) const {
    return a.row == 0 && b.row == 1 && on_beta(a) != on_beta(b);
  }

  Face basepoint_face(Basepoint b) const { return basepoint_faces_[static_cast<int>(b)]; }
  Face mark_face(MarkPosition m) const { return mark_faces_[static_cast<int>(m)]; }
  Basepoint label_of(MarkPosition m) const { return labels_[static_cast<int>(m)]; }
  bool labels_assigned() const { return labels_assigned_; }

  static EpsPoint mark_point(MarkPosition m) {
    const EpsRational e = EpsRational::eps();
    const Rational half(1, 2);
    switch (m) {
      case MarkPosition::TopLeft: return {e, Rational(1) - e};
      case MarkPosition::TopRight: return {half + e, Rational(1) - e};
      case MarkPosition::BottomLeft: return {e, half - e};
      case MarkPosition::BottomRight: return {half + e, half - e};
    }
    return {};
  }

  Vertex J(const Vertex& v) const { return vertex_at(involution_[vertex_index(v)]); }
  const std::vector<int>& involution() const { return involution_; }

  Generator J(const Generator& g) const { return {J(g.b), J(g.a)}; }

  const std::optional<KnotTrace>& knot() const { return knot_; }

  // Exact location of v in the unit square.
  std::pair<Rational, Rational> coordinates(const Vertex& v) const {
    return {Rational(v.col, columns()), Rational(v.row, 2)};
  }

  // Face containing a point not on any curve.
  Face locate(const EpsPoint& pt) const {
    auto reduce = [](const EpsRational& t) {
      std::int64_t fl = t.a.floor();
      if (t.a.is_integer() && t.b.sign() < 0) --fl;
      return t - EpsRational(Rational(fl));
    };
    const EpsRational x = reduce(pt.x);
    const EpsRational y = reduce(pt.y);
    if (y.sign() == 0 || (y - EpsRational(Rational(1, 2))).sign() == 0) {
      throw Error(ErrorCode::InternalCheckFailed, "point lies on a horizontal curve");
    }
    const int strip = y < EpsRational(Rational(1, 2)) ? 0 : 1;
    // Slide back along the slope p/q direction to the strip's bottom edge.
    const EpsRational u = x - Rational(q(), p()) * (y - EpsRational(Rational(strip, 2)));
    const EpsRational scaled = Rational(columns()) * u;
    std::int64_t col = scaled.a.floor();
    if (scaled.a.is_integer()) {
      if (scaled.b.sign() == 0) throw Error(ErrorCode::InternalCheckFailed, "point lies on a slanted curve");
      if (scaled.b.sign() < 0) --col;
    }
    return Face{strip, wrap(col)};
  }

 private:
  friend GridDiagram build_diagram(const TwoBridgeParams&);
  friend GridDiagram assign_basepoints(const GridDiagram&);

  explicit GridDiagram(const TwoBridgeParams& params) : params_(params) {}

  TwoBridgeParams params_;
  std::array<Face, 4> mark_faces_{};
  std::array<Basepoint, 4> labels_{Basepoint::W1, Basepoint::Z1, Basepoint::Z2, Basepoint::W2};
  std::array<Face, 4> basepoint_faces_{};
  bool labels_assigned_ = false;
  std::vector<int> involution_;
  std::optional<KnotTrace> knot_;
};

namespace detail {

// 180 degree rotation of the vertex set about the centre of face f.
inline std::vector<int> rotation_about(const GridDiagram& d, const Face& f) {
  const int n = d.columns();
  // Lifted corners: bottom at height s/2, top at (s+1)/2 with columns j+q.
  const Rational cx = Rational(4 * static_cast<std::int64_t>(f.start) + 2 * d.q() + 2, 4 * n);
  const Rational cy = Rational(f.strip, 2) + Rational(1, 4);
  std::vector<int> perm(d.num_vertices());
  for (int idx = 0; idx < d.num_vertices(); ++idx) {
    const auto [x, y] = d.coordinates(d.vertex_at(idx));
    const Rational rx = Rational(2) * cx - x;
    const Rational ry = Rational(2) * cy - y;
    const Rational col = rx * Rational(n);
    const Rational row = ry * Rational(2);
    if (!col.is_integer() || !row.is_integer()) {
      throw Error(ErrorCode::InternalCheckFailed, "rotation does not preserve the vertex lattice");
    }
    perm[idx] = d.vertex_index(Vertex{static_cast<int>(mod(row.num(), 2)), d.wrap(col.num())});
  }
  return perm;
}

}  // namespace detail

inline GridDiagram build_diagram(const TwoBridgeParams& params) {
  GridDiagram d(params);
  for (int m = 0; m < 4; ++m) {
    d.mark_faces_[m] = d.locate(GridDiagram::mark_point(static_cast<MarkPosition>(m)));
  }
  // Provisional labels in listing order; assign_basepoints settles them.
  for (int m = 0; m < 4; ++m) d.basepoint_faces_[static_cast<int>(d.labels_[m])] = d.mark_faces_[m];
  d.involution_ = detail::rotation_about(d, d.mark_faces_[static_cast<int>(MarkPosition::TopLeft)]);
  return d;
}

namespace detail {

struct Hit {
  EpsRational t;
  MarkPosition mark;
};

// First mark reached from `from` moving along integer direction (dx, dy),
// with parameter t in (0, 1]. The direction is a lattice vector, so t = 1
// returns to the start.
inline std::optional<Hit> first_hit(const EpsPoint& from, std::int64_t dx, std::int64_t dy) {
  std::optional<Hit> best;
  for (int m = 0; m < 4; ++m) {
    const EpsPoint target = GridDiagram::mark_point(static_cast<MarkPosition>(m));
    const EpsPoint delta = target - from;
    // Integer translates carry no eps part, so t's eps part is forced.
    Rational tb;
    if (dx != 0) {
      tb = delta.x.b / Rational(dx);
      if (tb * Rational(dy) != delta.y.b) continue;
    } else {
      tb = delta.y.b / Rational(dy);
      if (!delta.x.b.is_zero()) continue;
    }
    // Real part: t*dx - delta.x and t*dy - delta.y integral.
    const std::int64_t lead = dy != 0 ? dy : dx;
    const Rational lead_delta = dy != 0 ? delta.y.a : delta.x.a;
    const std::int64_t span = lead < 0 ? -lead : lead;
    const Rational base = (lead_delta - Rational(lead_delta.floor())) / Rational(lead);
    for (std::int64_t k = -span - 2; k <= span + 2; ++k) {
      const Rational ta = base + Rational(k, lead);
      const Rational rx = ta * Rational(dx) - delta.x.a;
      const Rational ry = ta * Rational(dy) - delta.y.a;
      if (!rx.is_integer() || !ry.is_integer()) continue;
      const EpsRational t(ta, tb);
      if (t.sign() <= 0 || t > EpsRational(Rational(1))) continue;
      if (!best || t < best->t) best = Hit{t, static_cast<MarkPosition>(m)};
    }
  }
  return best;
}

// Walks the marks: straight until the next mark, then turn right onto the
// other line family. Starts at the top-left mark heading east.
inline std::optional<KnotTrace> walk_marks(int p, int q) {
  KnotTrace trace;
  EpsPoint here = GridDiagram::mark_point(MarkPosition::TopLeft);
  MarkPosition mark = MarkPosition::TopLeft;
  std::int64_t dx = 1;
  std::int64_t dy = 0;
  for (int step = 0; step < 4; ++step) {
    const auto hit = first_hit(here, dx, dy);
    if (!hit) return std::nullopt;
    const EpsPoint next = here + EpsPoint{EpsRational(hit->t.a * Rational(dx), hit->t.b * Rational(dx)),
                                          EpsRational(hit->t.a * Rational(dy), hit->t.b * Rational(dy))};
    trace.arcs[step] = KnotArc{here, next, dy == 0, mark, hit->mark};
    here = next;
    mark = hit->mark;
    // Right turn onto the other family: cross(old, new) < 0.
    std::int64_t nx = dy == 0 ? q : 1;
    std::int64_t ny = dy == 0 ? p : 0;
    if (dx * ny - dy * nx > 0) {
      nx = -nx;
      ny = -ny;
    }
    dx = nx;
    dy = ny;
  }
  if (!(here == trace.arcs[0].from) || dx != 1 || dy != 0) return std::nullopt;
  return trace;
}

}  // namespace detail

inline KnotTrace trace_knot(const GridDiagram& diagram) {
  auto trace = detail::walk_marks(diagram.p(), diagram.q());
  if (!trace) throw Error(ErrorCode::TraceBroken, "turn-right walk does not close after 4 arcs");
  if (diagram.labels_assigned()) {
    for (const auto& arc : trace->arcs) {
      const bool ok = arc.horizontal ? (is_w(diagram.label_of(arc.from_mark)) && !is_w(diagram.label_of(arc.to_mark)))
                                     : (!is_w(diagram.label_of(arc.from_mark)) && is_w(diagram.label_of(arc.to_mark)));
      if (!ok) throw Error(ErrorCode::TraceBroken, "knot arcs do not alternate w->z / z->w");
    }
  }
  return *trace;
}

// Top line: w at x = eps, z at x = 1/2 + eps. The bottom pair is labelled so
// horizontal arcs run w -> z and slanted arcs z -> w.
inline GridDiagram assign_basepoints(const GridDiagram& diagram) {
  const auto trace = detail::walk_marks(diagram.p(), diagram.q());
  if (!trace) throw Error(ErrorCode::TraceBroken, "turn-right walk does not close after 4 arcs");
  const std::array<std::array<Basepoint, 4>, 2> options{{
      {Basepoint::W1, Basepoint::Z1, Basepoint::Z2, Basepoint::W2},
      {Basepoint::W1, Basepoint::Z1, Basepoint::W2, Basepoint::Z2},
  }};
  std::optional<GridDiagram> chosen;
  for (const auto& labels : options) {
    bool ok = true;
    for (const auto& arc : trace->arcs) {
      const bool from_w = is_w(labels[static_cast<int>(arc.from_mark)]);
      const bool to_w = is_w(labels[static_cast<int>(arc.to_mark)]);
      ok = ok && (arc.horizontal ? (from_w && !to_w) : (!from_w && to_w));
    }
    if (!ok) continue;
    if (chosen) throw Error(ErrorCode::TraceBroken, "basepoint labelling is not unique");
    GridDiagram d = diagram;
    d.labels_ = labels;
    for (int m = 0; m < 4; ++m) d.basepoint_faces_[static_cast<int>(labels[m])] = d.mark_faces_[m];
    d.labels_assigned_ = true;
    d.knot_ = *trace;
    chosen = d;
  }
  if (!chosen) throw Error(ErrorCode::TraceBroken, "no basepoint labelling closes the trace");
  return *chosen;
}

inline GridDiagram make_diagram(const TwoBridgeParams& params) { return assign_basepoints(build_diagram(params)); }

// ---------------------------------------------------------------------------
// Domains

inline Domain zero_domain(const GridDiagram& d) { return Domain{std::vector<std::int64_t>(d.num_faces(), 0)}; }

inline std::int64_t multiplicity(const GridDiagram& d, const Domain& dom, const Face& f) {
  return dom.mult[d.face_index(f)];
}

inline std::int64_t basepoint_multiplicity(const GridDiagram& d, const Domain& dom, Basepoint b) {
  return multiplicity(d, dom, d.basepoint_face(b));
}

// Coefficient of the alpha edge from (r, j) to (r, j+1) in the boundary:
// face (r, j) above contributes +, face (r-1, j-q) below contributes -.
inline std::int64_t alpha_edge_coefficient(const GridDiagram& d, const Domain& dom, int row, int col) {
  return dom.mult[d.face_index({row, col})] - dom.mult[d.face_index({1 - row, d.wrap(col - d.q())})];
}

// Endpoints of the alpha part of the boundary, per vertex index. For a
// domain from x to y this is y - x.
inline std::vector<std::int64_t> alpha_endpoints(const GridDiagram& d, const Domain& dom) {
  std::vector<std::int64_t> out(d.num_vertices(), 0);
  for (int r = 0; r < 2; ++r) {
    for (int j = 0; j < d.columns(); ++j) {
      out[d.vertex_index({r, j})] =
          alpha_edge_coefficient(d, dom, r, d.wrap(j - 1)) - alpha_edge_coefficient(d, dom, r, j);
    }
  }
  return out;
}

inline std::vector<std::int64_t> corner_chain(const GridDiagram& d, const Generator& x, const Generator& y) {
  std::vector<std::int64_t> want(d.num_vertices(), 0);
  want[d.vertex_index(y.a)] += 1;
  want[d.vertex_index(y.b)] += 1;
  want[d.vertex_index(x.a)] -= 1;
  want[d.vertex_index(x.b)] -= 1;
  return want;
}

inline bool connects(const GridDiagram& d, const Domain& dom, const Generator& x, const Generator& y) {
  return alpha_endpoints(d, dom) == corner_chain(d, x, y);
}

// One integer domain from x to y, or nullopt when none exists.
//
// With c_r(j) the alpha edge coefficients, the endpoint condition fixes
// c_r up to a constant K_r per row. The face equations
//   m(0,j) - m(1,j-q) = c_0(j),  m(1,j) - m(0,j-q) = c_1(j)
// chain into m(0,j) = m(0,j-2q) + c_0(j) + c_1(j-q), which runs around two
// cycles of length p (even and odd columns). Each cycle must sum to zero.
inline std::optional<Domain> solve_domain(const GridDiagram& d, const Generator& x, const Generator& y) {
  const int n = d.columns();
  const int p = d.p();
  const int q = d.q();
  const auto delta = corner_chain(d, x, y);
  std::array<std::vector<std::int64_t>, 2> c;
  for (int r = 0; r < 2; ++r) {
    c[r].assign(n, 0);
    std::int64_t run = 0;
    for (int j = 0; j < n; ++j) {
      run -= delta[d.vertex_index({r, j})];
      c[r][j] = run;
    }
  }
  auto step = [&](int j) { return c[0][j] + c[1][d.wrap(j - q)]; };
  std::array<std::int64_t, 2> cycle_sum{0, 0};
  for (int j = 0; j < n; ++j) cycle_sum[j % 2] += step(j);
  if (cycle_sum[0] != cycle_sum[1] || cycle_sum[0] % p != 0) return std::nullopt;
  // Shift row 0 so both cycles close.
  const std::int64_t k0 = -cycle_sum[0] / p;
  for (auto& v : c[0]) v += k0;

  Domain dom = zero_domain(d);
  for (int start = 0; start < 2; ++start) {
    int j = start;
    std::int64_t m = 0;
    for (int i = 0; i < p; ++i) {
      dom.mult[d.face_index({0, j})] = m;
      j = d.wrap(j + 2 * q);
      m += step(j);
    }
  }
  for (int j = 0; j < n; ++j) {
    dom.mult[d.face_index({1, j})] = dom.mult[d.face_index({0, d.wrap(j + q)})] - c[0][d.wrap(j + q)];
  }
  // Normalise so the smallest multiplicity is zero.
  const auto lo = *std::min_element(dom.mult.begin(), dom.mult.end());
  for (auto& v : dom.mult) v -= lo;
  return dom;
}

// Integral basis of the domains with corner-free boundary.
//
// With four basepoints the space has rank 3: the whole torus, the strip
// between alpha and J alpha (boundary alpha - J alpha), and the strip
// between beta and J beta. The basis is computed by exact elimination and
// the rank is checked.
inline std::vector<Domain> periodic_domain_basis(const GridDiagram& d) {
  const int f = d.num_faces();
  const int nv = d.num_vertices();
  std::vector<std::vector<Rational>> rows(nv, std::vector<Rational>(f, Rational(0)));
  for (int fi = 0; fi < f; ++fi) {
    Domain unit = zero_domain(d);
    unit.mult[fi] = 1;
    const auto ends = alpha_endpoints(d, unit);
    for (int v = 0; v < nv; ++v) rows[v][fi] = Rational(ends[v]);
  }
  // Reduced row echelon form.
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < f && r < nv; ++col) {
    int piv = -1;
    for (int i = r; i < nv; ++i) {
      if (!rows[i][col].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    const Rational inv = Rational(1) / rows[r][col];
    for (auto& e : rows[r]) e *= inv;
    for (int i = 0; i < nv; ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const Rational factor = rows[i][col];
      for (int k = col; k < f; ++k) {
        if (!rows[r][k].is_zero()) rows[i][k] -= factor * rows[r][k];
      }
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(f, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Domain> basis;
  for (int freec = 0; freec < f; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<Rational> v(f, Rational(0));
    v[freec] = Rational(1);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][freec];
    std::int64_t l = 1;
    for (const auto& e : v) l = std::lcm(l, e.den());
    Domain dom = zero_domain(d);
    for (int k = 0; k < f; ++k) dom.mult[k] = (v[k] * Rational(l)).num();
    basis.push_back(dom);
  }
  if (basis.size() != 3) {
    throw Error(ErrorCode::UnexpectedPeriodicDomain,
                "periodic domain rank " + std::to_string(basis.size()) + ", expected 3");
  }
  return basis;
}

// Average multiplicity of the four corners at v.
inline Rational point_measure(const GridDiagram& d, const Domain& dom, const Vertex& v) {
  std::int64_t s = 0;
  for (const auto& f : d.faces_around(v)) s += multiplicity(d, dom, f);
  return Rational(s, 4);
}

// mu = P_x + P_y. Every face is a quadrilateral, so the Euler measure vanishes.
inline Rational maslov_index(const GridDiagram& d, const Domain& dom, const Generator& x, const Generator& y) {
  return point_measure(d, dom, x.a) + point_measure(d, dom, x.b) + point_measure(d, dom, y.a) +
         point_measure(d, dom, y.b);
}

}  // namespace tbhfk
