#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "hgevo/definitions.hpp"
#include "hgevo/statistics.hpp"
#include "oracles.hpp"

namespace hgevo {
namespace {

// Average ranks by counting, then every size-n subset of the pooled ranks.
double permutation_rank_sum_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t total = pooled.size();
  std::vector<double> rank(total);
  for (std::size_t i = 0; i < total; ++i) {
    double less = 0;
    double equal = 0;
    for (const double v : pooled) {
      less += v < pooled[i] ? 1 : 0;
      equal += v == pooled[i] ? 1 : 0;
    }
    rank[i] = less + (equal + 1) / 2;
  }
  double observed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    observed += rank[i];
  }
  const double expected = a.size() * (total + 1) / 2.0;
  double extreme = 0;
  double all = 0;
  for (std::uint32_t mask = 0; mask < (1U << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != a.size()) {
      continue;
    }
    double sum = 0;
    for (std::size_t i = 0; i < total; ++i) {
      sum += (mask >> i) & 1U ? rank[i] : 0;
    }
    all += 1;
    extreme += std::abs(sum - expected) >= std::abs(observed - expected) - 1e-9 ? 1 : 0;
  }
  return extreme / all;
}

double permutation_signed_rank_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      d.push_back(a[i] - b[i]);
    }
  }
  const std::size_t n = d.size();
  if (n == 0) {
    return 1.0;
  }
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double less = 0;
    double equal = 0;
    for (const double v : d) {
      less += std::abs(v) < std::abs(d[i]) ? 1 : 0;
      equal += std::abs(v) == std::abs(d[i]) ? 1 : 0;
    }
    rank[i] = less + (equal + 1) / 2;
  }
  double observed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    observed += d[i] > 0 ? rank[i] : 0;
  }
  const double expected = n * (n + 1) / 4.0;
  double extreme = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += (mask >> i) & 1U ? rank[i] : 0;
    }
    extreme += std::abs(sum - expected) >= std::abs(observed - expected) - 1e-9 ? 1 : 0;
  }
  return extreme / static_cast<double>(1U << n);
}

std::vector<double> tied_sample(Rng& rng, std::size_t n, int levels) {
  std::vector<double> values(n);
  for (double& v : values) {
    v = static_cast<double>(random_index(rng, levels));
  }
  return values;
}

TEST(SimpsonAuc, HandExamples) {
  const std::vector<double> x2{0, 1, 2};
  const std::vector<double> y2{0, 1, 4};
  EXPECT_NEAR(simpson_auc(x2, y2), 8.0 / 3.0, 1e-12);
  const std::vector<double> x3{0, 0.5, 1, 1.5, 2};
  const std::vector<double> y3{0, 0.125, 1, 3.375, 8};
  EXPECT_NEAR(simpson_auc(x3, y3), 4.0, 1e-12);
  const std::vector<double> xl{0, 1, 2, 7, 12};
  EXPECT_NEAR(simpson_auc(xl, xl), 72.0, 1e-12);
}

TEST(SimpsonAuc, IsExactOnCubicsOverUniformGrids) {
  Rng rng = make_rng({41});
  std::uniform_real_distribution<double> coefficient(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double c0 = coefficient(rng);
    const double c1 = coefficient(rng);
    const double c2 = coefficient(rng);
    const double c3 = coefficient(rng);
    const auto f = [&](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
    const auto antiderivative = [&](double x) {
      return x * (c0 + x * (c1 / 2 + x * (c2 / 3 + x * c3 / 4)));
    };
    const std::size_t intervals = 2 + random_index<std::size_t>(rng, 19);
    const double h = 0.25;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t j = 0; j <= intervals; ++j) {
      xs.push_back(static_cast<double>(j) * h);
      ys.push_back(f(xs.back()));
    }
    EXPECT_NEAR(simpson_auc(xs, ys), antiderivative(xs.back()), 1e-12) << intervals;
  }
}

TEST(SimpsonAuc, IsExactOnLinearDataOverAnyGrid) {
  Rng rng = make_rng({42});
  std::uniform_real_distribution<double> step(0.5, 3.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> xs{0.0};
    for (std::size_t j = 0; j < 2 + random_index<std::size_t>(rng, 12); ++j) {
      xs.push_back(xs.back() + (j % 3 == 0 ? step(rng) : 1.0));
    }
    std::vector<double> ys;
    for (const double x : xs) {
      ys.push_back(3.0 * x - 1.0);
    }
    const double b = xs.back();
    EXPECT_NEAR(simpson_auc(xs, ys), 1.5 * b * b - b, 1e-9);
  }
}

TEST(SimpsonAuc, JoinsPiecewiseUniformGrids) {
  std::vector<double> xs;
  for (double t = 250; t <= 5000; t += 250) {
    xs.push_back(t);
  }
  for (double t = 10000; t <= 30000; t += 5000) {
    xs.push_back(t);
  }
  std::vector<double> ys;
  for (const double x : xs) {
    ys.push_back(x * x * 1e-6);
  }
  EXPECT_NEAR(simpson_auc(xs, ys), (30000.0 * 30000.0 * 30000.0 - 250.0 * 250.0 * 250.0) / 3e6,
              1e-6);
}

TEST(SimpsonAuc, RejectsBadInput) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(simpson_auc(one, one), std::invalid_argument);
  const std::vector<double> xs{0, 2, 1};
  const std::vector<double> ys{0, 1, 2};
  EXPECT_THROW(simpson_auc(xs, ys), std::invalid_argument);
  const std::vector<double> repeated{0, 1, 1};
  EXPECT_THROW(simpson_auc(repeated, ys), std::invalid_argument);
  const std::vector<double> two{0, 1};
  EXPECT_THROW(simpson_auc(two, ys), std::invalid_argument);
}

TEST(Wilcoxon, HandExamples) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, 5, 6};
  const WilcoxonResult separated = wilcoxon(a, b, WilcoxonMode::kRankSum);
  EXPECT_TRUE(separated.exact);
  EXPECT_NEAR(separated.p_value, 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(separated.statistic, 6.0);

  const std::vector<double> c{1, 3};
  const std::vector<double> d{2, 4};
  EXPECT_NEAR(wilcoxon(c, d, WilcoxonMode::kRankSum).p_value, 2.0 / 3.0, 1e-12);

  EXPECT_DOUBLE_EQ(wilcoxon(a, a, WilcoxonMode::kRankSum).p_value, 1.0);
  const WilcoxonResult paired = wilcoxon(a, a, WilcoxonMode::kSignedRank);
  EXPECT_DOUBLE_EQ(paired.p_value, 1.0);
  EXPECT_TRUE(paired.exact);
}

TEST(Wilcoxon, RankSumMatchesThePermutationOracle) {
  Rng rng = make_rng({43});
  for (std::size_t n = 1; n <= 9; ++n) {
    for (std::size_t m = 1; n + m <= 10; ++m) {
      for (int rep = 0; rep < 10; ++rep) {
        const int levels = rep % 2 == 0 ? 4 : 1000;
        const auto a = tied_sample(rng, n, levels);
        const auto b = tied_sample(rng, m, levels);
        const WilcoxonResult result = wilcoxon_rank_sum(a, b);
        EXPECT_TRUE(result.exact);
        EXPECT_NEAR(result.p_value, permutation_rank_sum_p(a, b), 1e-12);
      }
    }
  }
}

TEST(Wilcoxon, SignedRankMatchesThePermutationOracle) {
  Rng rng = make_rng({44});
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const int levels = rep % 2 == 0 ? 4 : 1000;
      const auto a = tied_sample(rng, n, levels);
      const auto b = tied_sample(rng, n, levels);
      const WilcoxonResult result = wilcoxon_signed_rank(a, b);
      EXPECT_TRUE(result.exact);
      EXPECT_NEAR(result.p_value, permutation_signed_rank_p(a, b), 1e-12);
    }
  }
}

TEST(Wilcoxon, NormalApproximationMatchesReferenceValues) {
  // Reference p-values: two-sided asymptotic tests with tie correction and
  // no continuity correction, computed with scipy.stats.
  const std::vector<double> a{3.1, 4.2, 5.0, 5.0, 6.3, 7.7, 8.1, 9.4};
  const std::vector<double> b{1.0, 2.5, 3.1, 4.0, 4.4, 5.0, 5.5, 6.0, 6.1};
  const WilcoxonResult rank_sum = wilcoxon_rank_sum(a, b);
  EXPECT_FALSE(rank_sum.exact);
  EXPECT_DOUBLE_EQ(rank_sum.statistic, 89.5);
  EXPECT_NEAR(rank_sum.p_value, 0.09119619811580187, 1e-12);

  const std::vector<double> x{12, 34, 22, 50, 41, 66, 70, 33, 29, 88, 11, 44, 55, 61};
  const std::vector<double> y{10, 30, 25, 40, 41, 50, 65, 30, 35, 70, 15, 40, 50, 50};
  const WilcoxonResult signed_rank = wilcoxon_signed_rank(x, y);
  EXPECT_FALSE(signed_rank.exact);
  EXPECT_DOUBLE_EQ(signed_rank.statistic, 74.5);
  EXPECT_NEAR(signed_rank.p_value, 0.04231527490571396, 1e-12);
}

TEST(Wilcoxon, RejectsBadInput) {
  const std::vector<double> empty;
  const std::vector<double> two{1, 2};
  const std::vector<double> three{1, 2, 3};
  EXPECT_THROW(wilcoxon_rank_sum(empty, two), std::invalid_argument);
  EXPECT_THROW(wilcoxon_signed_rank(two, three), std::invalid_argument);
  EXPECT_THROW(wilcoxon_signed_rank(empty, empty), std::invalid_argument);
  EXPECT_THROW(parse_wilcoxon_mode("t-test"), std::invalid_argument);
  EXPECT_EQ(parse_wilcoxon_mode("signed-rank"), WilcoxonMode::kSignedRank);
}

}  // namespace
}  // namespace hgevo
