/*******************************************************************************
 * Coarsening-threshold sweeps: one full multilevel run per (threshold,
 * algorithm, repetition) cell, followed by per-algorithm AUC over thresholds
 * and rank-sum comparisons at each threshold.
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hgevo/definitions.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/multilevel.hpp"
#include "hgevo/statistics.hpp"

namespace hgevo {

// "250:250:5000,10000:5000:30000" -> 250, 500, ..., 5000, 10000, 15000, ..., 30000.
// A plain number is a single threshold.
inline std::vector<VertexID> parse_threshold_grid(const std::string& text) {
  const auto number = [&](const std::string& token) {
    VertexID value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size() || token.empty()) {
      throw std::invalid_argument("bad threshold '" + token + "' in grid '" + text + "'");
    }
    return value;
  };
  std::vector<VertexID> result;
  std::stringstream ranges(text);
  std::string range;
  while (std::getline(ranges, range, ',')) {
    std::vector<std::string> parts;
    std::stringstream fields(range);
    std::string field;
    while (std::getline(fields, field, ':')) {
      parts.push_back(field);
    }
    if (parts.size() == 1) {
      result.push_back(number(parts[0]));
    } else if (parts.size() == 3) {
      const VertexID start = number(parts[0]);
      const VertexID step = number(parts[1]);
      const VertexID stop = number(parts[2]);
      if (step == 0 || stop < start) {
        throw std::invalid_argument("bad threshold range '" + range + "'");
      }
      for (VertexID t = start; t <= stop; t += step) {
        result.push_back(t);
      }
    } else {
      throw std::invalid_argument("bad threshold range '" + range + "'");
    }
  }
  for (std::size_t i = 1; i < result.size(); ++i) {
    if (result[i] <= result[i - 1]) {
      throw std::invalid_argument("thresholds must be strictly increasing");
    }
  }
  if (result.empty()) {
    throw std::invalid_argument("empty threshold grid");
  }
  return result;
}

struct SweepSpec {
  std::vector<VertexID> thresholds;
  std::size_t repetitions = 20;
  std::vector<InitialAlgorithm> algorithms = {InitialAlgorithm::kPool, InitialAlgorithm::kEa};
  DriverConfig base;  // budget, epsilon, EA and pool settings shared by every cell
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  void validate() const {
    if (thresholds.empty()) {
      throw std::invalid_argument("sweep needs at least one threshold");
    }
    for (std::size_t i = 1; i < thresholds.size(); ++i) {
      if (thresholds[i] <= thresholds[i - 1]) {
        throw std::invalid_argument("thresholds must be strictly increasing");
      }
    }
    if (repetitions < 1) {
      throw std::invalid_argument("repetitions must be at least 1");
    }
    if (algorithms.empty()) {
      throw std::invalid_argument("sweep needs at least one algorithm");
    }
  }
};

struct SweepRow {
  VertexID threshold = 0;
  InitialAlgorithm algorithm = InitialAlgorithm::kPool;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  Weight initial_cut = 0;
  Weight final_cut = 0;
  VertexID coarse_vertices = 0;
  StopReason stop_reason = StopReason::kThreshold;
  double wall_ms = 0.0;
};

struct AucSummary {
  InitialAlgorithm algorithm;
  double final_cut_auc = 0.0;
  double initial_cut_auc = 0.0;
};

struct ThresholdComparison {
  VertexID threshold = 0;
  InitialAlgorithm first;
  InitialAlgorithm second;
  WilcoxonResult final_cut;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by threshold, algorithm, repetition
  std::vector<AucSummary> auc;
  std::vector<ThresholdComparison> comparisons;
};

inline std::uint64_t sweep_cell_seed(std::uint64_t master, std::size_t threshold_index,
                                     InitialAlgorithm algorithm, std::size_t repetition) {
  return derive_seed({master, threshold_index, static_cast<std::uint64_t>(algorithm), repetition});
}

inline std::vector<double> column(const std::vector<SweepRow>& rows, VertexID threshold,
                                  InitialAlgorithm algorithm, bool final_cut) {
  std::vector<double> values;
  for (const SweepRow& row : rows) {
    if (row.threshold == threshold && row.algorithm == algorithm) {
      values.push_back(static_cast<double>(final_cut ? row.final_cut : row.initial_cut));
    }
  }
  return values;
}

inline double mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (const double v : values) {
    sum += v;
  }
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

// AUC of the mean cut over thresholds; a single threshold has no area.
inline void summarize(SweepResult& result, const std::vector<VertexID>& thresholds,
                      const std::vector<InitialAlgorithm>& algorithms) {
  result.auc.clear();
  result.comparisons.clear();
  std::vector<double> xs(thresholds.begin(), thresholds.end());
  for (const InitialAlgorithm algorithm : algorithms) {
    AucSummary summary{algorithm};
    if (xs.size() >= 2) {
      std::vector<double> finals;
      std::vector<double> initials;
      for (const VertexID t : thresholds) {
        finals.push_back(mean(column(result.rows, t, algorithm, true)));
        initials.push_back(mean(column(result.rows, t, algorithm, false)));
      }
      summary.final_cut_auc = simpson_auc(xs, finals);
      summary.initial_cut_auc = simpson_auc(xs, initials);
    }
    result.auc.push_back(summary);
  }
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
      for (const VertexID t : thresholds) {
        const auto a = column(result.rows, t, algorithms[i], true);
        const auto b = column(result.rows, t, algorithms[j], true);
        result.comparisons.push_back({t, algorithms[i], algorithms[j], wilcoxon_rank_sum(a, b)});
      }
    }
  }
}

inline SweepResult sweep(const Hypergraph& hg, const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  const std::size_t per_threshold = spec.algorithms.size() * spec.repetitions;
  result.rows.resize(spec.thresholds.size() * per_threshold);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t cell = next++; cell < result.rows.size(); cell = next++) {
      const std::size_t threshold_index = cell / per_threshold;
      const std::size_t algorithm_index = (cell % per_threshold) / spec.repetitions;
      const std::size_t repetition = cell % spec.repetitions;
      SweepRow& row = result.rows[cell];
      row.threshold = spec.thresholds[threshold_index];
      row.algorithm = spec.algorithms[algorithm_index];
      row.repetition = repetition;
      row.seed = sweep_cell_seed(spec.seed, threshold_index, row.algorithm, repetition);
      try {
        DriverConfig cfg = spec.base;
        cfg.algorithm = row.algorithm;
        cfg.coarsening.t = row.threshold;
        cfg.coarsening.t_max = std::max(cfg.coarsening.t_max, row.threshold);
        cfg.seed = row.seed;
        cfg.observer = nullptr;
        const PartitionResult run = partition(hg, cfg);
        row.initial_cut = run.report.initial_cut;
        row.final_cut = run.report.final_cut;
        row.coarse_vertices = run.report.coarse_vertex_count;
        row.stop_reason = run.report.stop_reason;
        row.wall_ms = run.report.wall_time_seconds * 1000.0;
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = result.rows.size();
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(spec.workers, result.rows.size()));
  std::vector<std::thread> threads;
  for (std::size_t i = 1; i < workers; ++i) {
    threads.emplace_back(work);
  }
  work();
  for (std::thread& thread : threads) {
    thread.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  summarize(result, spec.thresholds, spec.algorithms);
  return result;
}

inline void write_sweep_rows(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "threshold,algorithm,repetition,seed,initial_cut,final_cut,coarse_vertices,stop_reason,"
         "wall_ms\n";
  for (const SweepRow& row : rows) {
    out << row.threshold << ',' << to_string(row.algorithm) << ',' << row.repetition << ','
        << row.seed << ',' << row.initial_cut << ',' << row.final_cut << ','
        << row.coarse_vertices << ',' << to_string(row.stop_reason) << ',' << row.wall_ms << '\n';
  }
}

inline void write_sweep_summary(std::ostream& out, const SweepResult& result) {
  out << "kind,algorithm,other,threshold,value,p_value\n";
  for (const AucSummary& s : result.auc) {
    out << "auc_final_cut," << to_string(s.algorithm) << ",,," << s.final_cut_auc << ",\n";
    out << "auc_initial_cut," << to_string(s.algorithm) << ",,," << s.initial_cut_auc << ",\n";
  }
  for (const ThresholdComparison& c : result.comparisons) {
    out << "rank_sum_final_cut," << to_string(c.first) << ',' << to_string(c.second) << ','
        << c.threshold << ',' << c.final_cut.statistic << ',' << c.final_cut.p_value << '\n';
  }
}

}  // namespace hgevo
