/*******************************************************************************
 * (mu + lambda) memetic EA for bipartitioning the coarsest hypergraph.
 *
 * Genes are block ids per hypernode. Offspring are built from two parents
 * drawn uniformly with replacement: a clone of the first parent, optionally
 * recombined by uniform crossover after complement-aligning the second parent,
 * then mutated at the individual's own self-adaptive rate, repaired to
 * feasibility and improved by FM (the improved genes are kept). Survivors are
 * the mu fittest of parents and offspring.
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hgevo/definitions.hpp"
#include "hgevo/evaluation.hpp"
#include "hgevo/fm_refiner.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/initial_pool.hpp"
#include "hgevo/partition.hpp"
#include "hgevo/repair.hpp"

namespace hgevo {

struct EaConfig {
  std::size_t mu = 100;
  std::size_t lambda = 1000;
  double crossover_prob = 0.8;
  double adapt_prob = 0.1;
  std::size_t seed_multiplier = 100;  // s: mu * s pool evaluations seed the population
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  int fm_max_passes = 8;
  std::size_t pool_repetitions = 20;

  void validate() const {
    if (mu < 1 || lambda < 1) {
      throw std::invalid_argument("mu and lambda must be at least 1");
    }
    if (crossover_prob < 0.0 || crossover_prob > 1.0 || adapt_prob < 0.0 || adapt_prob > 1.0) {
      throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
  }

  std::size_t seeding_evaluations() const {
    return seed_multiplier == 0 ? mu : mu * seed_multiplier;
  }
};

// Per-gene mutation rates relative to n = 1/N; the rate n appears twice.
inline std::vector<double> mutation_ladder(VertexID vertex_count) {
  if (vertex_count == 0) {
    throw std::invalid_argument("mutation ladder needs at least one vertex");
  }
  const double n = 1.0 / static_cast<double>(vertex_count);
  std::vector<double> ladder = {n / 100, n / 10, n / 5, n / 2, n, n, 2 * n, 5 * n, 10 * n, 100 * n};
  for (double& rate : ladder) {
    rate = std::min(rate, 1.0);
  }
  return ladder;
}

inline double pick_rate(std::span<const double> ladder, Rng& rng) {
  return ladder[random_index(rng, ladder.size())];
}

inline std::size_t hamming_distance(std::span<const BlockID> a, std::span<const BlockID> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("gene vectors differ in length");
  }
  std::size_t distance = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    distance += a[i] != b[i] ? 1 : 0;
  }
  return distance;
}

// Uniform crossover. If the parents disagree on more than half of the genes,
// the second parent is complemented first.
inline std::vector<BlockID> normalize_crossover(std::span<const BlockID> first,
                                                std::span<const BlockID> second, Rng& rng) {
  const std::size_t distance = hamming_distance(first, second);
  const bool invert = 2 * distance > first.size();
  std::vector<BlockID> child(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    const BlockID other = invert ? 1 - second[i] : second[i];
    child[i] = coin(rng, 0.5) ? first[i] : other;
  }
  return child;
}

// With probability adapt_prob the rate is redrawn from the ladder; then every
// gene is independently resampled from {0, 1} with that rate.
inline void mutate(const Hypergraph& hg, Individual& ind, std::span<const double> ladder,
                   double adapt_prob, Rng& rng) {
  if (coin(rng, adapt_prob)) {
    ind.mutation_rate = pick_rate(ladder, rng);
  }
  const double rate = ind.mutation_rate;
  if (rate <= 0.0) {
    return;
  }
  const std::size_t n = ind.partition.size();
  const auto resample = [&](VertexID v) {
    const BlockID b = coin(rng, 0.5) ? 1 : 0;
    if (b != ind.partition.block(v)) {
      ind.partition.move(hg, v, b);
    }
  };
  if (rate >= 1.0) {
    for (VertexID v = 0; v < n; ++v) {
      resample(v);
    }
    return;
  }
  // Gaps between resampled genes are geometric, which matches per-gene coin flips.
  std::geometric_distribution<std::size_t> gap(rate);
  for (std::size_t v = gap(rng); v < n; v += 1 + gap(rng)) {
    resample(static_cast<VertexID>(v));
  }
}

struct SeedResult {
  std::vector<Individual> population;
  std::size_t evaluations = 0;
  EvaluationLog log;
};

// s = 0: mu random feasible individuals, each refined by FM.
// s > 0: the fittest mu of mu * s pool evaluations.
inline SeedResult seed_population(const Hypergraph& hg, const EaConfig& cfg,
                                  const PoolConfig& pool) {
  const std::vector<double> ladder = mutation_ladder(hg.initial_num_vertices());
  Rng rng = make_rng({cfg.seed, 0xfeedu});
  SeedResult result;
  if (cfg.seed_multiplier == 0) {
    TwoWayFmRefiner refiner(hg, cfg.epsilon);
    FmConfig fm{cfg.epsilon, cfg.fm_max_passes, cfg.seed};
    Weight best = 0;
    for (std::size_t i = 0; i < cfg.mu; ++i) {
      Rng member_rng = make_rng({cfg.seed, 0xfeedu, i});
      Individual ind;
      ind.partition = random_partition(hg, cfg.epsilon, member_rng);
      refiner.refine(ind.partition, fm);
      ind.evaluate(hg, cfg.epsilon);
      ind.mutation_rate = pick_rate(ladder, rng);
      best = i == 0 ? ind.fitness : std::min(best, ind.fitness);
      result.log.add("random", ind, best, ind.mutation_rate);
      result.population.push_back(std::move(ind));
    }
    result.evaluations = cfg.mu;
  } else {
    PoolConfig seeded = pool;
    seeded.epsilon = cfg.epsilon;
    seeded.seed = derive_seed({cfg.seed, 0xb001u});
    PoolRunResult pool_result = pool_run(hg, seeded, cfg.seeding_evaluations(), cfg.mu);
    result.population = std::move(pool_result.elite);
    for (Individual& ind : result.population) {
      ind.mutation_rate = pick_rate(ladder, rng);
    }
    result.log = std::move(pool_result.log);
    result.evaluations = pool_result.evaluations;
  }
  std::stable_sort(result.population.begin(), result.population.end(),
                   [](const Individual& a, const Individual& b) { return fitter(a, b); });
  return result;
}

struct EaResult {
  Individual best;
  EvaluationLog log;
  std::size_t evaluations = 0;
  std::size_t seeding_evaluations = 0;
  std::size_t generations = 0;
  std::vector<Weight> generation_best;  // best fitness in the parent population after each generation
};

inline EaResult ea_run(const Hypergraph& hg, const EaConfig& cfg, const PoolConfig& pool,
                       std::size_t budget) {
  cfg.validate();
  if (hg.initial_num_vertices() == 0) {
    throw std::invalid_argument("cannot partition an empty hypergraph");
  }
  if (budget < cfg.seeding_evaluations()) {
    throw std::invalid_argument("evaluation budget is too small to seed the population");
  }
  const std::vector<double> ladder = mutation_ladder(hg.initial_num_vertices());

  EaResult result;
  SeedResult seeded = seed_population(hg, cfg, pool);
  std::vector<Individual> population = std::move(seeded.population);
  result.log = std::move(seeded.log);
  result.evaluations = seeded.evaluations;
  result.seeding_evaluations = seeded.evaluations;
  result.best = population.front();
  result.generation_best.push_back(result.best.fitness);

  TwoWayFmRefiner refiner(hg, cfg.epsilon);
  const FmConfig fm{cfg.epsilon, cfg.fm_max_passes, cfg.seed};
  std::vector<Individual> offspring;
  offspring.reserve(cfg.lambda);

  while (result.evaluations < budget) {
    offspring.clear();
    for (std::size_t i = 0; i < cfg.lambda && result.evaluations < budget; ++i) {
      Rng rng = make_rng({cfg.seed, result.generations + 1, i});
      const Individual& first = population[random_index(rng, population.size())];
      const Individual& second = population[random_index(rng, population.size())];

      Individual child;
      child.partition = first.partition;
      child.mutation_rate = first.mutation_rate;
      if (coin(rng, cfg.crossover_prob)) {
        child.partition = Partition(hg, 2, normalize_crossover(first.genes(), second.genes(), rng));
        child.mutation_rate = fitter(second, first) ? second.mutation_rate : first.mutation_rate;
      }
      mutate(hg, child, ladder, cfg.adapt_prob, rng);
      repair(hg, child.partition, cfg.epsilon, rng);
      refiner.refine(child.partition, fm);
      child.evaluate(hg, cfg.epsilon);

      ++result.evaluations;
      if (fitter(child, result.best)) {
        result.best = child;
      }
      result.log.add("ea", child, result.best.fitness, child.mutation_rate);
      offspring.push_back(std::move(child));
    }

    for (Individual& child : offspring) {
      population.push_back(std::move(child));
    }
    std::stable_sort(population.begin(), population.end(),
                     [](const Individual& a, const Individual& b) { return fitter(a, b); });
    population.resize(std::min(population.size(), cfg.mu));
    ++result.generations;
    result.generation_best.push_back(population.front().fitness);
  }
  return result;
}

}  // namespace hgevo
