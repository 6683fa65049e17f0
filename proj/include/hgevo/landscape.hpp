/*******************************************************************************
 * Search-space characterization of the coarsest hypergraph: FM local optima
 * from random feasible starts, symmetry-aware distances to the quasi-global
 * optima and fitness-distance correlation.
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "hgevo/coarsening.hpp"
#include "hgevo/definitions.hpp"
#include "hgevo/fm_refiner.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/initial_pool.hpp"
#include "hgevo/partition.hpp"
#include "hgevo/repair.hpp"

namespace hgevo {

struct LocalOptimumRecord {
  std::vector<BlockID> genes;
  Weight cut = 0;
  double relative_cut = 1.0;
};

struct LandscapeSample {
  CompactHypergraph coarse;
  std::vector<LocalOptimumRecord> records;
  std::vector<std::size_t> quasi_global;  // indices of the minimum-cut records
  Weight best_cut = 0;
};

struct LandscapeConfig {
  CoarseningConfig coarsening;
  double epsilon = 0.1;
  std::size_t samples = 10000;
  int fm_max_passes = 8;
  std::uint64_t seed = 0;
};

// A zero minimum would make cut / min undefined; (cut + 1) / (min + 1) keeps
// the minimum at exactly 1 and the order intact.
inline double relative_cut(Weight cut, Weight best) {
  if (best == 0) {
    return static_cast<double>(cut + 1) / static_cast<double>(best + 1);
  }
  return static_cast<double>(cut) / static_cast<double>(best);
}

inline void normalize_records(std::vector<LocalOptimumRecord>& records, Weight& best_cut,
                              std::vector<std::size_t>& quasi_global) {
  quasi_global.clear();
  if (records.empty()) {
    return;
  }
  best_cut = std::numeric_limits<Weight>::max();
  for (const LocalOptimumRecord& record : records) {
    best_cut = std::min(best_cut, record.cut);
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].relative_cut = relative_cut(records[i].cut, best_cut);
    if (records[i].cut == best_cut) {
      quasi_global.push_back(i);
    }
  }
}

// Local optima of an already coarse hypergraph.
inline std::vector<LocalOptimumRecord> sample_local_optima(const Hypergraph& hg, double epsilon,
                                                           std::size_t n, int fm_max_passes,
                                                           std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("at least one sample is required");
  }
  TwoWayFmRefiner refiner(hg, epsilon);
  const FmConfig fm{epsilon, fm_max_passes, seed};
  std::vector<LocalOptimumRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = make_rng({seed, 0x1a5du, i});
    std::vector<BlockID> blocks(hg.initial_num_vertices());
    for (BlockID& b : blocks) {
      b = coin(rng, 0.5) ? 1 : 0;
    }
    Partition part(hg, 2, std::move(blocks));
    repair(hg, part, epsilon, rng);
    refiner.refine(part, fm);
    const auto genes = part.blocks();
    records.push_back({{genes.begin(), genes.end()}, cut_size(hg, part), 1.0});
  }
  return records;
}

// Coarsens a copy of `input` to the configured threshold, then samples.
inline LandscapeSample sample_local_optima(const Hypergraph& input, const LandscapeConfig& cfg) {
  Hypergraph hg = input;
  Rng rng = make_rng({cfg.seed, 1});
  coarsen(hg, cfg.coarsening, rng);
  LandscapeSample sample;
  sample.coarse = compact(hg);
  sample.records = sample_local_optima(sample.coarse.hypergraph, cfg.epsilon, cfg.samples,
                                       cfg.fm_max_passes, cfg.seed);
  normalize_records(sample.records, sample.best_cut, sample.quasi_global);
  return sample;
}

inline double scaled_distance(std::span<const BlockID> l, std::span<const BlockID> g) {
  if (l.size() != g.size()) {
    throw std::invalid_argument("gene vectors differ in length");
  }
  if (l.empty()) {
    return 0.0;
  }
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    mismatches += l[i] != g[i] ? 1 : 0;
  }
  const std::size_t distance = std::min(mismatches, l.size() - mismatches);
  return static_cast<double>(distance) / static_cast<double>(l.size());
}

inline double scaled_distance(std::span<const BlockID> l,
                              const std::vector<std::vector<BlockID>>& optima) {
  if (optima.empty()) {
    throw std::invalid_argument("no reference optima given");
  }
  double best = 1.0;
  for (const auto& g : optima) {
    best = std::min(best, scaled_distance(l, g));
  }
  return best;
}

inline std::vector<double> distances_to_quasi_global(const LandscapeSample& sample) {
  std::vector<std::vector<BlockID>> optima;
  for (const std::size_t i : sample.quasi_global) {
    optima.push_back(sample.records[i].genes);
  }
  std::vector<double> distances;
  distances.reserve(sample.records.size());
  for (const LocalOptimumRecord& record : sample.records) {
    distances.push_back(scaled_distance(record.genes, optima));
  }
  return distances;
}

struct FdcModel {
  double slope = 0.0;        // through the origin
  double r_squared = 0.0;    // uncentered
  double intercept_fit_slope = 0.0;
  double intercept_fit_intercept = 0.0;
  double intercept_fit_r_squared = 0.0;
  std::size_t samples = 0;
};

inline FdcModel fdc_fit(std::span<const double> distances, std::span<const double> cuts) {
  if (distances.size() != cuts.size()) {
    throw std::invalid_argument("distance and cut counts differ");
  }
  if (distances.size() < 2) {
    throw std::invalid_argument("fdc fit needs at least two points");
  }
  const double n = static_cast<double>(distances.size());
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  double sum_x = 0.0;
  double sum_y = 0.0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    sxx += distances[i] * distances[i];
    sxy += distances[i] * cuts[i];
    syy += cuts[i] * cuts[i];
    sum_x += distances[i];
    sum_y += cuts[i];
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("all distances are zero");
  }

  FdcModel model;
  model.samples = distances.size();
  model.slope = sxy / sxx;
  double residual = 0.0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double r = cuts[i] - model.slope * distances[i];
    residual += r * r;
  }
  model.r_squared = syy == 0.0 ? 1.0 : 1.0 - residual / syy;

  const double mean_x = sum_x / n;
  const double mean_y = sum_y / n;
  double cxx = 0.0;
  double cxy = 0.0;
  double cyy = 0.0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    cxx += (distances[i] - mean_x) * (distances[i] - mean_x);
    cxy += (distances[i] - mean_x) * (cuts[i] - mean_y);
    cyy += (cuts[i] - mean_y) * (cuts[i] - mean_y);
  }
  if (cxx > 0.0) {
    model.intercept_fit_slope = cxy / cxx;
    model.intercept_fit_intercept = mean_y - model.intercept_fit_slope * mean_x;
    model.intercept_fit_r_squared = cyy == 0.0 ? 1.0 : (cxy * cxy) / (cxx * cyy);
  } else {
    model.intercept_fit_intercept = mean_y;
    model.intercept_fit_r_squared = cyy == 0.0 ? 1.0 : 0.0;
  }
  return model;
}

inline FdcModel fdc_fit(const std::vector<LocalOptimumRecord>& records,
                        std::span<const double> distances) {
  std::vector<double> cuts;
  cuts.reserve(records.size());
  for (const LocalOptimumRecord& record : records) {
    cuts.push_back(record.relative_cut);
  }
  return fdc_fit(distances, cuts);
}

inline void export_landscape(std::ostream& out, const std::vector<LocalOptimumRecord>& records,
                             std::span<const double> distances) {
  if (records.size() != distances.size()) {
    throw std::invalid_argument("record and distance counts differ");
  }
  out << "index,distance,relative_cut,cut\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << i << ',' << distances[i] << ',' << records[i].relative_cut << ',' << records[i].cut
        << '\n';
  }
}

}  // namespace hgevo
