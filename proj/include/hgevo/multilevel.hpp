/*******************************************************************************
 * Multilevel bipartitioning: coarsen, partition the coarsest hypergraph with
 * the pool or the memetic EA, then uncontract in LIFO order with FM
 * refinement after every batch of uncontractions.
 ******************************************************************************/
#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hgevo/coarsening.hpp"
#include "hgevo/definitions.hpp"
#include "hgevo/evaluation.hpp"
#include "hgevo/fm_refiner.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/initial_pool.hpp"
#include "hgevo/memetic_ea.hpp"
#include "hgevo/partition.hpp"
#include "hgevo/repair.hpp"

namespace hgevo {

enum class InitialAlgorithm { kPool, kEa };

inline std::string to_string(InitialAlgorithm algorithm) {
  return algorithm == InitialAlgorithm::kPool ? "pool" : "ea";
}

inline InitialAlgorithm parse_initial_algorithm(const std::string& name) {
  if (name == "pool") {
    return InitialAlgorithm::kPool;
  }
  if (name == "ea") {
    return InitialAlgorithm::kEa;
  }
  throw std::invalid_argument("unknown initial partitioner '" + name + "'");
}

struct DriverConfig {
  PartitionConfig partition;
  CoarseningConfig coarsening;
  InitialAlgorithm algorithm = InitialAlgorithm::kEa;
  PoolConfig pool;
  EaConfig ea;
  std::size_t budget = 30000;
  std::uint64_t seed = 0;
  std::size_t refine_batch = 32;  // 1 refines after every single uncontraction
  bool refine = true;
  int fm_max_passes = 8;
  ContractionObserver observer;
};

struct RunReport {
  Weight initial_cut = 0;
  Weight final_cut = 0;
  VertexID coarse_vertex_count = 0;
  std::size_t coarse_pin_count = 0;
  StopReason stop_reason = StopReason::kThreshold;
  double wall_time_seconds = 0.0;
  double final_imbalance = 0.0;
  std::size_t evaluations = 0;
  EvaluationLog log;

  void write_key_values(std::ostream& out) const {
    out << "initial_cut=" << initial_cut << '\n'
        << "final_cut=" << final_cut << '\n'
        << "final_imbalance=" << final_imbalance << '\n'
        << "coarse_vertices=" << coarse_vertex_count << '\n'
        << "coarse_pins=" << coarse_pin_count << '\n'
        << "stop_reason=" << to_string(stop_reason) << '\n'
        << "evaluations=" << evaluations << '\n'
        << "wall_time_s=" << wall_time_seconds << '\n';
  }
};

struct PartitionResult {
  Partition partition;
  RunReport report;
};

struct UncoarseningResult {
  Partition partition;
  std::vector<std::pair<Weight, Weight>> batch_cuts;  // cut before and after each refinement
};

// Replays `mementos` (top of stack at the back) on `hg`. Each re-enabled
// vertex inherits the block of its survivor; FM runs after every `batch`
// uncontractions and once more on the fully uncoarsened hypergraph.
inline UncoarseningResult uncoarsen_refine(Hypergraph& hg,
                                           std::vector<ContractionMemento>& mementos,
                                           Partition part, const FmConfig& fm,
                                           std::size_t batch, bool refine, Rng& rng) {
  if (part.size() != hg.initial_num_vertices()) {
    throw std::invalid_argument("partition does not match hypergraph state");
  }
  if (batch == 0) {
    throw std::invalid_argument("refinement batch size must be at least 1");
  }
  UncoarseningResult result;
  TwoWayFmRefiner refiner(hg, fm.epsilon);
  const auto refine_now = [&] {
    if (!refine) {
      return;
    }
    const Weight before = cut_size(hg, part);
    refiner.refine(part, fm);
    result.batch_cuts.emplace_back(before, cut_size(hg, part));
  };

  std::size_t since_refinement = 0;
  while (!mementos.empty()) {
    const ContractionMemento& memento = mementos.back();
    hg.uncontract(memento);
    part.assign_untracked(memento.absorbed, part.block(memento.survivor));
    mementos.pop_back();
    if (++since_refinement == batch) {
      since_refinement = 0;
      refine_now();
    }
  }
  part.recompute_block_weights(hg);
  if (since_refinement != 0 || result.batch_cuts.empty()) {
    refine_now();
  }
  if (refine && !is_feasible(hg, part, fm.epsilon)) {
    repair(hg, part, fm.epsilon, rng);
    refine_now();
  }
  result.partition = std::move(part);
  return result;
}

inline PartitionResult partition(const Hypergraph& input, const DriverConfig& cfg) {
  const auto start_time = std::chrono::steady_clock::now();
  cfg.partition.validate();
  if (cfg.partition.k != 2) {
    throw std::invalid_argument("the multilevel driver supports bipartitioning only");
  }
  if (input.current_num_vertices() < static_cast<VertexID>(cfg.partition.k)) {
    throw std::invalid_argument("hypergraph has fewer vertices than blocks");
  }
  const double epsilon = cfg.partition.epsilon;
  if (input.max_vertex_weight() > max_block_weight(input.total_weight(), 2, epsilon)) {
    throw std::invalid_argument("epsilon too small: a single vertex exceeds the block weight bound");
  }

  Hypergraph hg = input;
  CoarseningConfig coarsening = cfg.coarsening;
  coarsening.k = cfg.partition.k;
  Rng coarsening_rng = make_rng({cfg.seed, 1});
  CoarseningResult coarse = coarsen(hg, coarsening, coarsening_rng, cfg.observer);

  RunReport report;
  report.stop_reason = coarse.stop_reason;
  report.coarse_vertex_count = hg.current_num_vertices();
  report.coarse_pin_count = hg.current_num_pins();

  const CompactHypergraph compacted = compact(hg);
  Individual initial;
  if (cfg.algorithm == InitialAlgorithm::kPool) {
    PoolConfig pool = cfg.pool;
    pool.epsilon = epsilon;
    pool.fm_max_passes = cfg.fm_max_passes;
    pool.seed = derive_seed({cfg.seed, 2});
    PoolRunResult run = pool_run(compacted.hypergraph, pool, cfg.budget);
    initial = std::move(run.best);
    report.log = std::move(run.log);
    report.evaluations = run.evaluations;
  } else {
    EaConfig ea = cfg.ea;
    ea.epsilon = epsilon;
    ea.fm_max_passes = cfg.fm_max_passes;
    ea.seed = derive_seed({cfg.seed, 3});
    PoolConfig pool = cfg.pool;
    pool.fm_max_passes = cfg.fm_max_passes;
    EaResult run = ea_run(compacted.hypergraph, ea, pool, cfg.budget);
    initial = std::move(run.best);
    report.log = std::move(run.log);
    report.evaluations = run.evaluations;
  }
  report.initial_cut = cut_size(compacted.hypergraph, initial.partition);

  std::vector<BlockID> blocks(hg.initial_num_vertices(), 0);
  for (VertexID v = 0; v < compacted.to_original.size(); ++v) {
    blocks[compacted.to_original[v]] = initial.partition.block(v);
  }
  Partition projected(hg, 2, std::move(blocks));

  FmConfig fm{epsilon, cfg.fm_max_passes, derive_seed({cfg.seed, 4})};
  Rng refine_rng = make_rng({cfg.seed, 5});
  UncoarseningResult uncoarsened = uncoarsen_refine(hg, coarse.mementos, std::move(projected), fm,
                                                    cfg.refine_batch, cfg.refine, refine_rng);

  report.final_cut = cut_size(input, uncoarsened.partition);
  report.final_imbalance = imbalance(input, uncoarsened.partition);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return {std::move(uncoarsened.partition), std::move(report)};
}

}  // namespace hgevo
