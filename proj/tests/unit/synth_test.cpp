#include "rbokit/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "rbokit/error.hpp"
#include "rbokit/random.hpp"

using namespace rbokit;

TEST(Random, SplitMixReferenceOutput) {
  // First outputs for seed 0 of the reference SplitMix64.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(Random, BelowStaysInRange) {
  SplitMix64 rng(5);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Synth, KendallTauUntied) {
  const Ranking r = untied_ranking({"a", "b", "c", "d"});
  EXPECT_EQ(kendall_tau_untied(r, r), 1.0);
  EXPECT_EQ(kendall_tau_untied(r, untied_ranking({"d", "c", "b", "a"})), -1.0);
  EXPECT_DOUBLE_EQ(kendall_tau_untied(r, untied_ranking({"b", "a", "c", "d"})), 2.0 / 3.0);
  EXPECT_THROW(kendall_tau_untied(r, untied_ranking({"a", "b", "c", "e"})), NotConjoint);
  EXPECT_THROW(kendall_tau_untied(r, parse_plain_ranking("a b\nc\nd\n")), HasTies);
}

TEST(Synth, TauTargetOneMeansNoTranspositions) {
  SynthConfig cfg;
  cfg.n_items = 200;
  cfg.tau_min = cfg.tau_max = 1.0;
  cfg.tie_min = cfg.tie_max = 0.0;
  cfg.length_min = cfg.length_max = 200;
  const SynthPair pair = generate_pair(cfg, 3);
  EXPECT_EQ(pair.meta.transpositions, 0u);
  EXPECT_EQ(pair.first.groups(), pair.second.groups());
}

TEST(Synth, FullTieTargetGivesOneGroup) {
  SynthConfig cfg;
  cfg.n_items = 60;
  cfg.tie_min = cfg.tie_max = 1.0;
  cfg.length_min = 10;
  cfg.length_max = 60;
  const SynthPair pair = generate_pair(cfg, 0);
  EXPECT_EQ(pair.first.group_count(), 1u);
  EXPECT_EQ(pair.second.group_count(), 1u);
  EXPECT_EQ(pair.first.size(), 60u);
  EXPECT_EQ(pair.meta.tied_first, 1.0);
}

TEST(Synth, RealizedTauNearTarget) {
  SynthConfig cfg;
  cfg.tie_min = cfg.tie_max = 0.0;
  cfg.length_min = cfg.length_max = 1000;
  const double step = 4.0 / (1000.0 * 999.0);
  for (std::size_t i = 0; i < 5; ++i) {
    const SynthPair pair = generate_pair(cfg, i);
    EXPECT_LE(pair.meta.realized_tau, pair.meta.target_tau);
    EXPECT_GT(pair.meta.realized_tau, pair.meta.target_tau - step);
    EXPECT_NEAR(kendall_tau_untied(pair.first, pair.second), pair.meta.realized_tau, 1e-12);
  }
}

TEST(Synth, TieTargetIsReached) {
  SynthConfig cfg;
  cfg.length_min = cfg.length_max = 1000;
  for (std::size_t i = 0; i < 5; ++i) {
    const SynthPair pair = generate_pair(cfg, i);
    EXPECT_GE(pair.meta.tied_first, pair.meta.target_ties_first);
    EXPECT_LT(pair.meta.tied_first, pair.meta.target_ties_first + 0.0021);
    EXPECT_GE(pair.meta.tied_second, pair.meta.target_ties_second);
  }
}

TEST(Synth, Deterministic) {
  SynthConfig cfg;
  const SynthPair a = generate_pair(cfg, 17);
  const SynthPair b = generate_pair(cfg, 17);
  EXPECT_EQ(a.first.groups(), b.first.groups());
  EXPECT_EQ(a.second.groups(), b.second.groups());
  EXPECT_NE(generate_pair(cfg, 18).first.groups(), a.first.groups());
}

// Lengths are drawn last, so the same seed with and without truncation
// yields the same groups; truncation must keep a prefix of whole groups.
TEST(Synth, TruncationKeepsWholeGroups) {
  SynthConfig full;
  full.n_items = 300;
  full.length_min = full.length_max = 300;
  SynthConfig cut = full;
  cut.length_min = 10;
  cut.length_max = 100;
  for (std::size_t i = 0; i < 20; ++i) {
    const SynthPair whole = generate_pair(full, i);
    const SynthPair part = generate_pair(cut, i);
    for (const auto* pr : {&part.first, &part.second}) {
      const Ranking& ref = pr == &part.first ? whole.first : whole.second;
      const auto g = pr->groups();
      const auto all = ref.groups();
      ASSERT_LE(g.size(), all.size());
      for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(g[k], all[k]);
      EXPECT_TRUE(pr->size() <= 100 || g.size() == 1);
    }
  }
}

TEST(Synth, SharedTiesUseTheSameGroups) {
  SynthConfig cfg;
  cfg.shared_ties = true;
  cfg.length_min = cfg.length_max = 1000;
  const SynthPair pair = generate_pair(cfg, 2);
  auto sorted_groups = [](const Ranking& r) {
    auto g = r.groups();
    for (auto& x : g) std::sort(x.begin(), x.end());
    std::sort(g.begin(), g.end());
    return g;
  };
  EXPECT_EQ(sorted_groups(pair.first), sorted_groups(pair.second));
}

TEST(Synth, InvalidConfig) {
  SynthConfig cfg;
  cfg.length_max = 2000;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = SynthConfig{};
  cfg.tau_min = 0.9;
  cfg.tau_max = 0.5;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
}

TEST(Synth, ItemIds) {
  EXPECT_EQ(synth_item(7, 1000), "i0007");
  EXPECT_EQ(synth_item(7, 100000), "i00007");
}

// Default protocol: lengths average 55, differ by about 30, and about 54% of
// the items are tied. Checked at ±20%.
TEST(Synth, DistributionTrend) {
  SynthConfig cfg;
  const int n = 2000;
  double length = 0.0, diff = 0.0, tied = 0.0;
  for (int i = 0; i < n; ++i) {
    const SynthMeta m = generate_pair(cfg, static_cast<std::size_t>(i)).meta;
    length += static_cast<double>(m.length_first + m.length_second) / 2.0;
    diff += std::abs(static_cast<double>(m.length_first) - static_cast<double>(m.length_second));
    tied += (m.tied_first + m.tied_second) / 2.0;
  }
  EXPECT_NEAR(length / n, 55.0, 11.0);
  EXPECT_NEAR(diff / n, 30.0, 6.0);
  EXPECT_NEAR(tied / n, 0.54, 0.108);
}
