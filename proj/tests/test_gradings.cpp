#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tbhfk/complex.hpp"
#include "tbhfk/gradings.hpp"

using namespace tbhfk;

namespace {

std::vector<TwoBridgeParams> all_params(int p_max, int p_min = 3) {
  std::vector<TwoBridgeParams> out;
  for (int p = p_min; p <= p_max; p += 2) {
    for (int q = -p + 1; q < p; ++q) {
      if (q % 2 != 0 && std::gcd(p, std::abs(q)) == 1) out.push_back(normalize_params(p, q));
    }
  }
  return out;
}

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(SpinC, AntiSymmetryAndRowZero) {
  for (const auto& params : all_params(15)) {
    const auto d = make_diagram(params);
    const auto s = local_spinc(d);
    for (int v = 0; v < d.num_vertices(); ++v) {
      EXPECT_EQ(mod(s[v] + s[d.vertex_index(d.J(d.vertex_at(v)))], d.p()), 0);
    }
    for (int c = 0; c < d.columns(); c += 2) EXPECT_EQ(s[d.vertex_index({0, c})], mod(c / 2, d.p()));
  }
}

TEST(SpinC, ThreeOneSectors) {
  const auto data = build_complex_data(normalize_params(3, 1));
  const auto& d = data.diagram;
  for (int i = 0; i < 3; ++i) EXPECT_EQ(data.tables.spinc[d.vertex_index({0, 2 * i})], i);
  for (const auto& members : data.generators.by_sector) EXPECT_EQ(members.size(), 6U);
}

TEST(SpinC, ConjugationOnGenerators) {
  for (const auto& params : all_params(9)) {
    const auto data = build_complex_data(params);
    const auto& d = data.diagram;
    int fixed = 0;
    for (const auto& gi : data.generators.gens) {
      const Generator jg = d.J(gi.g);
      const auto& other = data.generators.gens[data.generators.find(jg)];
      EXPECT_EQ(mod(other.spinc + gi.spinc, d.p()), 0);
      EXPECT_EQ(other.z2, gi.z2);
      EXPECT_EQ(gi.spinc, mod(data.tables.spinc[d.vertex_index(gi.g.a)] + data.tables.spinc[d.vertex_index(gi.g.b)], d.p()));
      if (jg == gi.g) {
        ++fixed;
        EXPECT_EQ(gi.spinc, 0);
      }
    }
    EXPECT_GT(fixed, 0);
  }
}

TEST(Alexander, ReferenceAndPathIndependence) {
  std::mt19937 rng(1);
  for (const auto& params : all_params(9)) {
    const auto d = make_diagram(params);
    const auto a = local_alexander(d);
    EXPECT_EQ(a[d.vertex_index({0, 0})], 0);
    std::uniform_int_distribution<int> step(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
      std::int64_t col = 0, h = 0;
      std::vector<ExactPoint> path{detail::lattice_point(d, col, h)};
      const int len = 1 + trial % 12;
      for (int k = 0; k < len; ++k) {
        switch (step(rng)) {
          case 0: ++col; break;
          case 1: --col; break;
          case 2: col += d.q(); ++h; break;
          default: col -= d.q(); --h; break;
        }
        path.push_back(detail::lattice_point(d, col, h));
      }
      const Vertex end{static_cast<int>(mod(h, 2)), d.wrap(col)};
      EXPECT_EQ(crossing_count(*d.knot(), path), a[d.vertex_index(end)]) << params.p() << "," << params.q();
    }
  }
}

TEST(Alexander, ClosedLoopsCrossZero) {
  for (const auto& params : all_params(9)) {
    const auto d = make_diagram(params);
    // Around alpha, around J alpha, around beta.
    std::vector<ExactPoint> alpha, jalpha, beta;
    for (int c = 0; c <= d.columns(); ++c) {
      alpha.push_back(detail::lattice_point(d, c, 0));
      jalpha.push_back(detail::lattice_point(d, c, 1));
    }
    for (int k = 0; k <= 2 * d.p(); ++k) beta.push_back(detail::lattice_point(d, static_cast<std::int64_t>(k) * d.q(), k));
    EXPECT_EQ(crossing_count(*d.knot(), alpha), 0);
    EXPECT_EQ(crossing_count(*d.knot(), jalpha), 0);
    EXPECT_EQ(crossing_count(*d.knot(), beta), 0);
  }
}

TEST(Alexander, ThreeOneNormalization) {
  const auto data = build_complex_data(normalize_params(3, 1));
  const auto& gs = data.generators;
  std::int64_t top = -100, lo0 = 100, hi0 = -100;
  for (const auto& gi : gs.gens) top = std::max(top, gi.alexander);
  for (int i : gs.by_sector[0]) {
    lo0 = std::min(lo0, gs.gens[i].alexander);
    hi0 = std::max(hi0, gs.gens[i].alexander);
  }
  EXPECT_EQ(top, 1);
  EXPECT_EQ(hi0 - lo0, 3);
  const auto& delta = gs.alexander.quotient;
  EXPECT_TRUE(delta.is_symmetric());
  EXPECT_EQ(delta.max_exp() - delta.min_exp(), 2);
}

TEST(Alexander, DivisibleAndSymmetricUpToFifteen) {
  for (const auto& params : all_params(15)) {
    const auto d = make_diagram(params);
    const auto t = make_local_tables(d);
    const auto gs = enumerate_generators(d, t);
    std::vector<std::pair<std::int64_t, int>> az;
    for (const auto& gi : gs.gens) az.emplace_back(gi.alexander, gi.z2);
    const Laurent g = signed_generating_function(az);
    Laurent q;
    ASSERT_TRUE(divide_by_one_minus_inverse_t(g, q));
    EXPECT_EQ(q, gs.alexander.quotient);
    EXPECT_TRUE(q.is_symmetric());
    EXPECT_EQ(q.eval_at_one(), d.p());
  }
}

TEST(Alexander, ParallelogramsDropByZMinusW) {
  for (const auto& params : all_params(9)) {
    const auto data = build_complex_data(params);
    const auto& gs = data.generators;
    for (const auto& par : data.parallelograms) {
      const auto& x = gs.gens[gs.find(par.source)];
      const auto& y = gs.gens[gs.find(par.target)];
      EXPECT_EQ(x.alexander - y.alexander, par.n_z() - par.n_w());
    }
  }
}

TEST(MaslovZ2, LocalTypes) {
  const auto d = make_diagram(normalize_params(5, 3));
  const auto t = make_local_tables(d);
  // (alpha cap beta, J alpha cap J beta): even columns on both rows.
  EXPECT_EQ(z2_maslov_of_generator(t, d, Generator{{0, 2}, {1, 4}}), 0);
  // (alpha cap J beta, J alpha cap beta): odd columns.
  EXPECT_EQ(z2_maslov_of_generator(t, d, Generator{{0, 3}, {1, 7}}), 1);
}

TEST(MaslovZ2, ArrowsFlipParity) {
  for (const auto& params : all_params(9)) {
    const auto data = build_complex_data(params);
    const auto& gs = data.generators;
    for (const auto& par : data.parallelograms) {
      EXPECT_NE(gs.gens[gs.find(par.source)].z2, gs.gens[gs.find(par.target)].z2);
    }
  }
}

TEST(MaslovZ2, LiteralTableBreaksEulerCharacteristic) {
  // The reversed table for q < 0 makes the signed count -p instead of p.
  for (const auto& params : all_params(9)) {
    if (params.q() > 0) continue;
    const auto d = make_diagram(params);
    const auto t = make_local_tables(d, MaslovTable::ReversedForNegativeQ);
    const auto gs = enumerate_generators(d, t);
    EXPECT_EQ(gs.alexander.quotient.eval_at_one(), -d.p());
  }
}

TEST(RelativeMaslov, Examples) {
  const auto data = build_complex_data(normalize_params(5, 1));
  const auto& d = data.diagram;
  const Generator x{{0, 0}, {1, 1}};
  EXPECT_EQ(relative_maslov(d, x, x), 0);
  bool saw_plain = false, saw_w1 = false;
  for (const auto& par : data.parallelograms) {
    const auto& m = par.basepoint_mult;
    if (m[0] == 0 && m[1] == 0 && m[2] == 0 && m[3] == 0) {
      EXPECT_EQ(relative_maslov(d, par.source, par.target), 1);
      saw_plain = true;
    }
    if (m[0] == 1 && m[1] == 0 && m[2] == 0 && m[3] == 0) {
      EXPECT_EQ(relative_maslov(d, par.source, par.target), -1);
      saw_w1 = true;
    }
  }
  EXPECT_TRUE(saw_plain);
  EXPECT_TRUE(saw_w1);
  EXPECT_THROW(relative_maslov(d, Generator{{0, 0}, {1, 1}}, Generator{{0, 2}, {1, 1}}), Error);
}

TEST(RelativeMaslov, IntegralAndConsistentWithZ2) {
  for (const auto& params : all_params(9)) {
    const auto data = build_complex_data(params);
    const auto& gs = data.generators;
    for (const auto& members : gs.by_sector) {
      for (int i : members) {
        for (int j : members) {
          const auto r = relative_maslov(data.diagram, gs.gens[i].g, gs.gens[j].g);
          EXPECT_EQ(r, gs.gens[i].rel_maslov - gs.gens[j].rel_maslov);
          EXPECT_EQ(mod(r, 2), mod(gs.gens[i].z2 - gs.gens[j].z2, 2));
        }
      }
    }
  }
}

TEST(DInvariants, ThreeOne) {
  const auto dinv = d_invariants(normalize_params(3, 1));
  EXPECT_EQ(sorted(dinv.raw), sorted({Rational(-1, 2), Rational(1, 6), Rational(1, 6)}));
  EXPECT_EQ(dinv.at(0), Rational(-1, 2));
  EXPECT_EQ(dinv.at(1), Rational(1, 6));
  EXPECT_EQ(dinv.at(-1), Rational(1, 6));
  EXPECT_EQ(lens_d(1, 0, 0), Rational(0));
}

TEST(DInvariants, ClosedFormForQOne) {
  for (int p = 3; p <= 15; p += 2) {
    std::vector<Rational> closed;
    for (int i = 0; i < p; ++i) closed.push_back(-Rational((2 * i - p) * (2 * i - p) - p, 4 * p));
    EXPECT_EQ(sorted(d_invariants(normalize_params(p, 1)).raw), sorted(closed)) << p;
  }
}

TEST(DInvariants, ConjugationSymmetry) {
  for (int p = 3; p <= 101; p += 2) {
    for (int q = 1; q < p; q += 2) {
      if (std::gcd(p, q) != 1) continue;
      const auto dinv = d_invariants(normalize_params(p, q));
      for (int k = 0; k < p; ++k) ASSERT_EQ(dinv.at(k), dinv.at(-k)) << p << "," << q << "," << k;
    }
  }
}

TEST(Calibration, Labels) {
  const auto d3 = d_invariants(normalize_params(3, 1));
  const auto c3 = calibrate_spinc_to_d_labels(d3);
  EXPECT_FALSE(c3.ambiguous);
  EXPECT_EQ(d3.at(c3.grid_to_centered[0]), Rational(-1, 2));
  const auto d5 = d_invariants(normalize_params(5, 1));
  const auto c5 = calibrate_spinc_to_d_labels(d5);
  EXPECT_TRUE(c5.ambiguous);
  std::vector<Rational> a, b;
  const auto c5b = calibrate_spinc_to_d_labels(d5, 2);
  for (int g = 0; g < 5; ++g) {
    a.push_back(d5.at(c5.grid_to_centered[g]));
    b.push_back(d5.at(c5b.grid_to_centered[g]));
    EXPECT_EQ(d5.at(c5.grid_to_centered[g]), d5.at(c5.grid_to_centered[mod(-g, 5)]));
  }
  EXPECT_EQ(sorted(a), sorted(b));
  EXPECT_THROW(calibrate_spinc_to_d_labels(d5, 5), Error);
}

TEST(Anchoring, ShiftIsDMinusTop) {
  EXPECT_EQ(anchor_shift(3, Rational(-1, 2)), Rational(-7, 2));
  EXPECT_EQ(anchor_shift(0, Rational(1, 6)), Rational(1, 6));
}
