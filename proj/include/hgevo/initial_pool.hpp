/*******************************************************************************
 * Portfolio ("pool") of constructive bipartitioners.
 *
 * Members: fully random, BFS, label propagation and four greedy hypergraph
 * growing variants (start vertex random or max-degree, growth score FM gain or
 * connectivity). pool_run cycles through the members, running each one
 * `repetitions` times in a row; every construction is followed by FM and
 * counts as one evaluation.
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hgevo/datastructure/addressable_pq.hpp"
#include "hgevo/definitions.hpp"
#include "hgevo/evaluation.hpp"
#include "hgevo/fm_refiner.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/partition.hpp"
#include "hgevo/repair.hpp"

namespace hgevo {

enum class PoolMember {
  kRandom,
  kBfs,
  kLabelPropagation,
  kGreedyRandomFm,
  kGreedyRandomConnectivity,
  kGreedyMaxDegreeFm,
  kGreedyMaxDegreeConnectivity,
};

inline std::string to_string(PoolMember member) {
  switch (member) {
    case PoolMember::kRandom:
      return "random";
    case PoolMember::kBfs:
      return "bfs";
    case PoolMember::kLabelPropagation:
      return "label_propagation";
    case PoolMember::kGreedyRandomFm:
      return "greedy_random_fm";
    case PoolMember::kGreedyRandomConnectivity:
      return "greedy_random_connectivity";
    case PoolMember::kGreedyMaxDegreeFm:
      return "greedy_maxdegree_fm";
    case PoolMember::kGreedyMaxDegreeConnectivity:
      return "greedy_maxdegree_connectivity";
  }
  return "unknown";
}

inline std::vector<PoolMember> all_pool_members() {
  return {PoolMember::kRandom,
          PoolMember::kBfs,
          PoolMember::kLabelPropagation,
          PoolMember::kGreedyRandomFm,
          PoolMember::kGreedyRandomConnectivity,
          PoolMember::kGreedyMaxDegreeFm,
          PoolMember::kGreedyMaxDegreeConnectivity};
}

struct PoolConfig {
  std::size_t repetitions = 20;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  std::vector<PoolMember> members = all_pool_members();
  int fm_max_passes = 8;

  void validate() const {
    if (repetitions < 1) {
      throw std::invalid_argument("pool repetitions must be at least 1");
    }
    if (members.empty()) {
      throw std::invalid_argument("pool needs at least one member");
    }
  }
};

enum class GrowStart { kRandom, kMaxDegree };
enum class GrowScore { kFmGain, kConnectivity };

struct GreedyVariant {
  GrowStart start = GrowStart::kRandom;
  GrowScore score = GrowScore::kFmGain;

  // Ids 0..3: (random, fm), (random, connectivity), (max-degree, fm), (max-degree, connectivity).
  static GreedyVariant from_id(int id) {
    if (id < 0 || id > 3) {
      throw std::invalid_argument("unknown greedy growing variant " + std::to_string(id));
    }
    return {id < 2 ? GrowStart::kRandom : GrowStart::kMaxDegree,
            id % 2 == 0 ? GrowScore::kFmGain : GrowScore::kConnectivity};
  }
};

namespace detail {
inline void require_bipartition_target(const Hypergraph& hg) {
  if (hg.initial_num_vertices() == 0) {
    throw std::invalid_argument("cannot partition an empty hypergraph");
  }
}
}  // namespace detail

inline Partition random_partition(const Hypergraph& hg, double epsilon, Rng& rng) {
  detail::require_bipartition_target(hg);
  std::vector<BlockID> blocks(hg.initial_num_vertices(), 0);
  for (const VertexID v : hg.vertices()) {
    blocks[v] = coin(rng, 0.5) ? 1 : 0;
  }
  Partition part(hg, 2, std::move(blocks));
  repair(hg, part, epsilon, rng);
  return part;
}

inline Partition bfs_partition(const Hypergraph& hg, double epsilon, Rng& rng,
                               std::optional<VertexID> start = std::nullopt) {
  detail::require_bipartition_target(hg);
  const std::vector<VertexID> active = hg.active_vertices();
  Partition part(hg, 2, std::vector<BlockID>(hg.initial_num_vertices(), 1));
  const Weight target = ceil_div(hg.total_weight(), 2);

  std::vector<char> visited(hg.initial_num_vertices(), 0);
  std::queue<VertexID> queue;
  const VertexID root = start ? *start : active[random_index(rng, active.size())];
  queue.push(root);
  visited[root] = 1;
  while (!queue.empty() && part.block_weight(0) < target) {
    const VertexID v = queue.front();
    queue.pop();
    part.move(hg, v, 0);
    for (const EdgeID e : hg.incident_edges(v)) {
      for (const VertexID u : hg.pins(e)) {
        if (!visited[u]) {
          visited[u] = 1;
          queue.push(u);
        }
      }
    }
  }
  repair(hg, part, epsilon, rng);
  return part;
}

inline Partition greedy_growing_partition(const Hypergraph& hg, double epsilon,
                                          GreedyVariant variant, Rng& rng) {
  detail::require_bipartition_target(hg);
  using Key = std::pair<double, std::uint64_t>;
  Partition part(hg, 2, std::vector<BlockID>(hg.initial_num_vertices(), 1));
  const Weight target = ceil_div(hg.total_weight(), 2);

  std::vector<std::array<std::int32_t, 2>> count(hg.initial_num_edges(), {0, 0});
  for (const EdgeID e : hg.edges()) {
    count[e][1] = static_cast<std::int32_t>(hg.edge_size(e));
  }
  const auto score = [&](VertexID v) {
    double s = 0.0;
    for (const EdgeID e : hg.incident_edges(v)) {
      const double w = static_cast<double>(hg.edge_weight(e));
      if (variant.score == GrowScore::kFmGain) {
        s += (count[e][1] == 1 ? w : 0.0) - (count[e][0] == 0 ? w : 0.0);
      } else if (count[e][0] > 0) {
        s += w;
      }
    }
    return s;
  };

  VertexID root = 0;
  {
    std::size_t ties = 0;
    std::size_t best_degree = 0;
    for (const VertexID v : hg.vertices()) {
      const std::size_t key = variant.start == GrowStart::kMaxDegree ? hg.degree(v) : 0;
      if (ties == 0 || key > best_degree) {
        root = v;
        best_degree = key;
        ties = 1;
      } else if (key == best_degree && random_index<std::size_t>(rng, ++ties) == 0) {
        root = v;
      }
    }
  }

  ds::AddressablePQ<VertexID, Key> pq(hg.initial_num_vertices());
  std::vector<VertexID> touched;
  std::vector<char> mark(hg.initial_num_vertices(), 0);
  const auto absorb = [&](VertexID v) {
    if (pq.contains(v)) {
      pq.remove(v);
    }
    part.move(hg, v, 0);
    for (const EdgeID e : hg.incident_edges(v)) {
      --count[e][1];
      ++count[e][0];
      for (const VertexID u : hg.pins(e)) {
        if (pq.contains(u) && !mark[u]) {
          mark[u] = 1;
          touched.push_back(u);
        }
      }
    }
    for (const VertexID u : touched) {
      mark[u] = 0;
      pq.update(u, Key{score(u), pq.key(u).second});
    }
    touched.clear();
  };

  for (const VertexID v : hg.vertices()) {
    if (v != root) {
      pq.push(v, Key{score(v), rng()});
    }
  }
  absorb(root);
  while (part.block_weight(0) < target && !pq.empty()) {
    absorb(pq.top());
  }
  repair(hg, part, epsilon, rng);
  return part;
}

inline Partition greedy_growing_partition(const Hypergraph& hg, double epsilon, int variant_id,
                                          Rng& rng) {
  return greedy_growing_partition(hg, epsilon, GreedyVariant::from_id(variant_id), rng);
}

// Runs up to `max_rounds` rounds of label propagation on `part`. A vertex
// adopts the block holding the largest edge-weighted number of its neighbors'
// pins, unless the move would push the target block over the balance bound.
// Returns true if a round finished without moves.
inline bool label_propagation_rounds(const Hypergraph& hg, Partition& part, double epsilon,
                                     int max_rounds, Rng& rng) {
  const Weight bound = max_block_weight(hg.total_weight(), 2, epsilon);
  std::vector<std::array<std::int32_t, 2>> count(hg.initial_num_edges(), {0, 0});
  for (const EdgeID e : hg.edges()) {
    for (const VertexID v : hg.pins(e)) {
      ++count[e][part.block(v)];
    }
  }
  std::vector<VertexID> order = hg.active_vertices();
  for (int round = 0; round < max_rounds; ++round) {
    std::shuffle(order.begin(), order.end(), rng);
    bool moved = false;
    for (const VertexID v : order) {
      const BlockID from = part.block(v);
      const BlockID to = 1 - from;
      Weight stay = 0;
      Weight leave = 0;
      for (const EdgeID e : hg.incident_edges(v)) {
        stay += hg.edge_weight(e) * (count[e][from] - 1);
        leave += hg.edge_weight(e) * count[e][to];
      }
      if (leave > stay && part.block_weight(to) + hg.vertex_weight(v) <= bound) {
        for (const EdgeID e : hg.incident_edges(v)) {
          --count[e][from];
          ++count[e][to];
        }
        part.move(hg, v, to);
        moved = true;
      }
    }
    if (!moved) {
      return true;
    }
  }
  return false;
}

inline constexpr int kLabelPropagationRounds = 5;

inline Partition label_propagation_partition(const Hypergraph& hg, double epsilon, Rng& rng) {
  detail::require_bipartition_target(hg);
  std::vector<BlockID> blocks(hg.initial_num_vertices(), 0);
  for (const VertexID v : hg.vertices()) {
    blocks[v] = coin(rng, 0.5) ? 1 : 0;
  }
  Partition part(hg, 2, std::move(blocks));
  label_propagation_rounds(hg, part, epsilon, kLabelPropagationRounds, rng);
  repair(hg, part, epsilon, rng);
  return part;
}

inline Partition construct(const Hypergraph& hg, PoolMember member, double epsilon, Rng& rng) {
  switch (member) {
    case PoolMember::kRandom:
      return random_partition(hg, epsilon, rng);
    case PoolMember::kBfs:
      return bfs_partition(hg, epsilon, rng);
    case PoolMember::kLabelPropagation:
      return label_propagation_partition(hg, epsilon, rng);
    case PoolMember::kGreedyRandomFm:
      return greedy_growing_partition(hg, epsilon, 0, rng);
    case PoolMember::kGreedyRandomConnectivity:
      return greedy_growing_partition(hg, epsilon, 1, rng);
    case PoolMember::kGreedyMaxDegreeFm:
      return greedy_growing_partition(hg, epsilon, 2, rng);
    case PoolMember::kGreedyMaxDegreeConnectivity:
      return greedy_growing_partition(hg, epsilon, 3, rng);
  }
  throw std::invalid_argument("unknown pool member");
}

struct PoolRunResult {
  Individual best;
  EvaluationLog log;
  std::vector<Individual> elite;  // fittest results, best first
  std::size_t evaluations = 0;
};

// Member used for the evaluation with 0-based index `evaluation`.
inline PoolMember pool_member_for(const PoolConfig& cfg, std::size_t evaluation) {
  return cfg.members[(evaluation / cfg.repetitions) % cfg.members.size()];
}

inline PoolRunResult pool_run(const Hypergraph& hg, const PoolConfig& cfg, std::size_t budget,
                              std::size_t elite_size = 1) {
  cfg.validate();
  if (budget == 0) {
    throw std::invalid_argument("pool evaluation budget must be at least 1");
  }
  TwoWayFmRefiner refiner(hg, cfg.epsilon);
  FmConfig fm;
  fm.epsilon = cfg.epsilon;
  fm.max_passes = cfg.fm_max_passes;

  PoolRunResult result;
  for (std::size_t evaluation = 0; evaluation < budget; ++evaluation) {
    Rng rng = make_rng({cfg.seed, evaluation});
    const PoolMember member = pool_member_for(cfg, evaluation);
    Individual ind;
    ind.partition = construct(hg, member, cfg.epsilon, rng);
    refiner.refine(ind.partition, fm);
    ind.evaluate(hg, cfg.epsilon);

    if (evaluation == 0 || fitter(ind, result.best)) {
      result.best = ind;
    }
    result.log.add(to_string(member), ind, result.best.fitness);

    if (elite_size > 0) {
      const auto pos = std::upper_bound(
          result.elite.begin(), result.elite.end(), ind,
          [](const Individual& a, const Individual& b) { return fitter(a, b); });
      if (result.elite.size() < elite_size) {
        result.elite.insert(pos, std::move(ind));
      } else if (pos != result.elite.end()) {
        result.elite.insert(pos, std::move(ind));
        result.elite.pop_back();
      }
    }
  }
  result.evaluations = budget;
  return result;
}

}  // namespace hgevo
