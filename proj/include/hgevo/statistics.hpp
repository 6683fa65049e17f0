#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgevo {

namespace detail {

inline bool same_spacing(double h, double reference) {
  return std::abs(h - reference) <= 1e-9 * std::max(std::abs(h), std::abs(reference));
}

// Integral over xs[first..last] with constant spacing h.
inline double integrate_uniform(std::span<const double> ys, std::size_t first, std::size_t last,
                                double h) {
  const std::size_t intervals = last - first;
  if (intervals == 1) {
    return h * (ys[first] + ys[last]) / 2.0;
  }
  double area = 0.0;
  std::size_t simpson_end = last;
  if (intervals % 2 == 1) {
    // Three-eighths rule on the last three intervals keeps cubics exact.
    simpson_end = last - 3;
    area += 3.0 * h / 8.0 *
            (ys[simpson_end] + 3.0 * ys[simpson_end + 1] + 3.0 * ys[simpson_end + 2] + ys[last]);
  }
  for (std::size_t i = first; i + 2 <= simpson_end; i += 2) {
    area += h / 3.0 * (ys[i] + 4.0 * ys[i + 1] + ys[i + 2]);
  }
  return area;
}

}  // namespace detail

// Composite Simpson over maximal uniformly spaced runs of xs.
inline double simpson_auc(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("abscissae and values differ in length");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("at least two samples are required");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("abscissae must be strictly increasing");
    }
  }
  double area = 0.0;
  std::size_t first = 0;
  while (first + 1 < xs.size()) {
    const double h = xs[first + 1] - xs[first];
    std::size_t last = first + 1;
    while (last + 1 < xs.size() && detail::same_spacing(xs[last + 1] - xs[last], h)) {
      ++last;
    }
    const double segment_h = (xs[last] - xs[first]) / static_cast<double>(last - first);
    area += detail::integrate_uniform(ys, first, last, segment_h);
    first = last;
  }
  return area;
}

enum class WilcoxonMode { kRankSum, kSignedRank };

inline WilcoxonMode parse_wilcoxon_mode(const std::string& name) {
  if (name == "rank-sum" || name == "ranksum") {
    return WilcoxonMode::kRankSum;
  }
  if (name == "signed-rank" || name == "signedrank") {
    return WilcoxonMode::kSignedRank;
  }
  throw std::invalid_argument("unknown wilcoxon mode '" + name + "'");
}

struct WilcoxonResult {
  double statistic = 0.0;  // rank sum of the first sample, or W+ for signed-rank
  double p_value = 1.0;    // two-sided
  bool exact = false;
};

inline constexpr std::size_t kExactWilcoxonLimit = 12;

// Twice the average ranks (1-based) of `values`; doubling keeps ties integral.
inline std::vector<std::int64_t> doubled_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::int64_t> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const auto doubled = static_cast<std::int64_t>(i + 1 + j + 1);
    for (std::size_t t = i; t <= j; ++t) {
      ranks[order[t]] = doubled;
    }
    i = j + 1;
  }
  return ranks;
}

namespace detail {

inline double tie_term(std::span<const std::int64_t> ranks) {
  std::vector<std::int64_t> sorted(ranks.begin(), ranks.end());
  std::sort(sorted.begin(), sorted.end());
  double term = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) {
      ++j;
    }
    const double t = static_cast<double>(j - i);
    term += t * t * t - t;
    i = j;
  }
  return term;
}

inline double normal_two_sided(double deviation, double variance) {
  if (variance <= 0.0) {
    return 1.0;
  }
  const double z = std::abs(deviation) / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace detail

inline WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("rank-sum test needs two nonempty samples");
  }
  std::vector<double> combined(a.begin(), a.end());
  combined.insert(combined.end(), b.begin(), b.end());
  const std::vector<std::int64_t> ranks = doubled_ranks(combined);
  const std::size_t n = a.size();
  const std::size_t total = combined.size();

  std::int64_t observed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    observed += ranks[i];
  }
  const auto expected = static_cast<std::int64_t>(n * (total + 1));
  WilcoxonResult result;
  result.statistic = static_cast<double>(observed) / 2.0;

  if (total <= kExactWilcoxonLimit) {
    // ways[c][s]: subsets of c ranks with doubled sum s.
    const auto max_sum = static_cast<std::size_t>(std::accumulate(ranks.begin(), ranks.end(),
                                                                  std::int64_t{0}));
    std::vector<std::vector<double>> ways(n + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (const std::int64_t r : ranks) {
      for (std::size_t c = n; c >= 1; --c) {
        for (std::size_t s = max_sum; s >= static_cast<std::size_t>(r); --s) {
          ways[c][s] += ways[c - 1][s - static_cast<std::size_t>(r)];
        }
      }
    }
    const std::int64_t observed_deviation = std::abs(observed - expected);
    double extreme = 0.0;
    double all = 0.0;
    for (std::size_t s = 0; s <= max_sum; ++s) {
      all += ways[n][s];
      if (std::abs(static_cast<std::int64_t>(s) - expected) >= observed_deviation) {
        extreme += ways[n][s];
      }
    }
    result.p_value = extreme / all;
    result.exact = true;
    return result;
  }

  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(b.size());
  const double big_n = static_cast<double>(total);
  const double variance =
      nn * mm / 12.0 * ((big_n + 1.0) - detail::tie_term(ranks) / (big_n * (big_n - 1.0)));
  result.p_value =
      detail::normal_two_sided(static_cast<double>(observed - expected) / 2.0, variance);
  return result;
}

inline WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("signed-rank test needs paired samples of equal length");
  }
  if (a.empty()) {
    throw std::invalid_argument("signed-rank test needs a nonempty sample");
  }
  std::vector<double> magnitudes;
  std::vector<bool> positive;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) {
      magnitudes.push_back(std::abs(d));
      positive.push_back(d > 0.0);
    }
  }
  WilcoxonResult result;
  const std::size_t n = magnitudes.size();
  if (n == 0) {
    result.exact = true;
    return result;
  }
  const std::vector<std::int64_t> ranks = doubled_ranks(magnitudes);
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    observed += positive[i] ? ranks[i] : 0;
  }
  const auto expected = static_cast<std::int64_t>(n * (n + 1) / 2);
  result.statistic = static_cast<double>(observed) / 2.0;

  if (n <= kExactWilcoxonLimit) {
    const auto max_sum = static_cast<std::size_t>(n * (n + 1));
    std::vector<double> ways(max_sum + 1, 0.0);
    ways[0] = 1.0;
    for (const std::int64_t r : ranks) {
      for (std::size_t s = max_sum; s >= static_cast<std::size_t>(r); --s) {
        ways[s] += ways[s - static_cast<std::size_t>(r)];
      }
    }
    const std::int64_t observed_deviation = std::abs(observed - expected);
    double extreme = 0.0;
    double all = 0.0;
    for (std::size_t s = 0; s <= max_sum; ++s) {
      all += ways[s];
      if (std::abs(static_cast<std::int64_t>(s) - expected) >= observed_deviation) {
        extreme += ways[s];
      }
    }
    result.p_value = extreme / all;
    result.exact = true;
    return result;
  }

  const double nn = static_cast<double>(n);
  const double variance = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - detail::tie_term(ranks) / 48.0;
  result.p_value =
      detail::normal_two_sided(static_cast<double>(observed - expected) / 2.0, variance);
  return result;
}

inline WilcoxonResult wilcoxon(std::span<const double> a, std::span<const double> b,
                               WilcoxonMode mode) {
  return mode == WilcoxonMode::kRankSum ? wilcoxon_rank_sum(a, b) : wilcoxon_signed_rank(a, b);
}

}  // namespace hgevo
