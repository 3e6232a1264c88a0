#include <gtest/gtest.h>

#include <algorithm>

#include "tbhfk/complex.hpp"
#include "tbhfk/oracle.hpp"

using namespace tbhfk;

namespace {

std::vector<TwoBridgeParams> all_params(int p_max) {
  std::vector<TwoBridgeParams> out;
  for (int p = 3; p <= p_max; p += 2) {
    for (int q = -p + 1; q < p; ++q) {
      if (q % 2 != 0 && std::gcd(p, std::abs(q)) == 1) out.push_back(normalize_params(p, q));
    }
  }
  return out;
}

const std::vector<Policy>& policies() {
  static const std::vector<Policy> all{Policy::graded(), Policy::filtered_hat(), Policy::partial_hat(1), Policy::minus(1)};
  return all;
}

}  // namespace

TEST(PositiveDomains, Trivial) {
  const auto d = make_diagram(normalize_params(3, 1));
  const Generator x{{0, 0}, {1, 1}};
  const auto zero = oracle::enumerate_positive_domains(d, x, x, 0);
  ASSERT_EQ(zero.size(), 1U);
  EXPECT_EQ(zero[0], zero_domain(d));
  const auto big = oracle::enumerate_positive_domains(d, x, x, d.num_faces());
  const Domain sigma{std::vector<std::int64_t>(d.num_faces(), 1)};
  EXPECT_NE(std::find(big.begin(), big.end(), sigma), big.end());
  for (const auto& dom : big) EXPECT_TRUE(connects(d, dom, x, x));
}

TEST(PositiveDomains, ContainParallelograms) {
  const auto data = build_complex_data(normalize_params(5, 3));
  const auto& d = data.diagram;
  for (const auto& par : data.parallelograms) {
    const auto doms = oracle::enumerate_positive_domains(d, par.source, par.target, par.len * par.height);
    EXPECT_NE(std::find(doms.begin(), doms.end(), par.domain(d)), doms.end());
    for (const auto& dom : doms) EXPECT_TRUE(connects(d, dom, par.source, par.target));
  }
}

TEST(PositiveDomains, IndexOneSmallDomainsAreParallelograms) {
  // Below the bound, every positive index-one domain between generators
  // with multiplicities at most one is a parallelogram.
  const auto data = build_complex_data(normalize_params(3, 1));
  const auto& d = data.diagram;
  const auto pars = oracle::parallelogram_arrows(data, Policy::minus(1));
  int found = 0;
  for (const auto& x : data.generators.gens) {
    for (const auto& y : data.generators.gens) {
      if (x.spinc != y.spinc) continue;
      for (const auto& dom : oracle::enumerate_positive_domains(d, x.g, y.g, 2 * d.p())) {
        if (maslov_index(d, dom, x.g, y.g) != Rational(1)) continue;
        if (std::any_of(dom.mult.begin(), dom.mult.end(), [](auto m) { return m > 1; })) continue;
        ++found;
        const oracle::IndexOneDomain key{x.g, y.g, dom};
        EXPECT_TRUE(std::binary_search(pars.begin(), pars.end(), key));
      }
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Classify, ThreeOneGraded) {
  const auto data = build_complex_data(normalize_params(3, 1));
  EXPECT_EQ(oracle::classify_index_one(data.diagram, Policy::graded()),
            oracle::parallelogram_arrows(data, Policy::graded()));
}

TEST(Classify, FiveThreeFiltered) {
  const auto data = build_complex_data(normalize_params(5, 3));
  EXPECT_EQ(oracle::classify_index_one(data.diagram, Policy::filtered_hat()),
            oracle::parallelogram_arrows(data, Policy::filtered_hat()));
}

TEST(Classify, AllPoliciesUpToSeven) {
  for (const auto& params : all_params(7)) {
    const auto data = build_complex_data(params);
    const auto all = oracle::classify_index_one(data.diagram, Policy::minus(1));
    for (const auto& pol : policies()) {
      std::vector<oracle::IndexOneDomain> filtered;
      for (const auto& a : all) {
        if (oracle::satisfies(data.diagram, a.domain, pol)) filtered.push_back(a);
      }
      EXPECT_EQ(filtered, oracle::parallelogram_arrows(data, pol)) << params.p() << "," << params.q() << " "
                                                                   << to_string(pol.flavor);
    }
    // No index-one domain joins two sectors.
    for (const auto& a : all) {
      EXPECT_EQ(data.generators.gens[data.generators.find(a.x)].spinc,
                data.generators.gens[data.generators.find(a.y)].spinc);
    }
  }
}

TEST(Classify, TallParallelogramsAreNeeded) {
  const auto data = build_complex_data(normalize_params(3, 1));
  const auto all = oracle::classify_index_one(data.diagram, Policy::minus(1));
  int tall = 0;
  for (const auto& par : data.parallelograms) tall += par.height > 1;
  EXPECT_EQ(all.size(), 60U);
  EXPECT_EQ(tall, 24);
}

TEST(NaiveHomology, MatchesMainPath) {
  for (const auto& params : all_params(7)) {
    const auto data = build_complex_data(params);
    const auto found = oracle::classify_index_one(data.diagram, Policy::graded());
    const auto found_f = oracle::classify_index_one(data.diagram, Policy::filtered_hat());
    for (int s = 0; s < data.p(); ++s) {
      const auto graded = differential(data, s, Policy::graded());
      EXPECT_EQ(oracle::naive_bigraded_homology(graded.cc), homology_f2(graded));
      EXPECT_EQ(oracle::naive_bigraded_homology(oracle::complex_from_arrows(data, s, found)), homology_f2(graded));
      const auto filtered = differential(data, s, Policy::filtered_hat());
      EXPECT_EQ(oracle::naive_maslov_homology(oracle::complex_from_arrows(data, s, found_f)),
                total_homology_f2(filtered));
    }
  }
}

TEST(NaiveHomology, ThreeOneTable) {
  const auto data = build_complex_data(normalize_params(3, 1));
  std::vector<std::vector<int>> ranks;
  for (int s = 0; s < 3; ++s) {
    std::vector<int> r;
    for (const auto& [k, v] : oracle::naive_bigraded_homology(differential(data, s, Policy::graded()).cc)) r.push_back(v);
    ranks.push_back(r);
  }
  std::sort(ranks.begin(), ranks.end());
  EXPECT_EQ(ranks, (std::vector<std::vector<int>>{{1, 1}, {1, 1}, {1, 2, 2, 1}}));
}

TEST(NaiveHomology, DenseRank) {
  EXPECT_EQ(oracle::dense_rank({{0, 0}, {0, 0}}), 0);
  EXPECT_EQ(oracle::dense_rank({{1, 1}, {1, 1}}), 1);
  EXPECT_EQ(oracle::dense_rank({{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}), 2);
}
