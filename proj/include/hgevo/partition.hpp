#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hgevo/definitions.hpp"
#include "hgevo/hypergraph.hpp"

namespace hgevo {

struct PartitionConfig {
  BlockID k = 2;
  double epsilon = 0.1;

  void validate() const {
    if (k < 2) {
      throw std::invalid_argument("block count k must be at least 2");
    }
    if (!(epsilon >= 0.0)) {
      throw std::invalid_argument("imbalance epsilon must be nonnegative");
    }
  }
};

inline Weight ceil_div(Weight a, Weight b) { return (a + b - 1) / b; }

// Largest feasible block weight: (1 + epsilon) * ceil(c(V) / k), floored.
inline Weight max_block_weight(Weight total_weight, BlockID k, double epsilon) {
  const double bound = (1.0 + epsilon) * static_cast<double>(ceil_div(total_weight, k));
  return static_cast<Weight>(std::floor(bound + 1e-9));
}

// Vertex-to-block assignment with cached block weights. Entries of disabled
// (contracted) vertices are kept but do not contribute to block weights.
class Partition {
 public:
  Partition() = default;

  Partition(const Hypergraph& hg, BlockID k, std::vector<BlockID> blocks)
      : k_(k), block_of_(std::move(blocks)) {
    if (block_of_.size() != hg.initial_num_vertices()) {
      throw std::invalid_argument("partition size does not match hypergraph");
    }
    for (const BlockID b : block_of_) {
      if (b < 0 || b >= k_) {
        throw std::invalid_argument("block id out of range");
      }
    }
    recompute_block_weights(hg);
  }

  BlockID k() const { return k_; }
  std::size_t size() const { return block_of_.size(); }
  BlockID block(VertexID v) const { return block_of_[v]; }
  std::span<const BlockID> blocks() const { return block_of_; }
  Weight block_weight(BlockID b) const { return block_weights_[b]; }
  std::span<const Weight> block_weights() const { return block_weights_; }
  Weight heaviest_block_weight() const {
    return *std::max_element(block_weights_.begin(), block_weights_.end());
  }

  void move(const Hypergraph& hg, VertexID v, BlockID to) {
    const Weight w = hg.vertex_weight(v);
    block_weights_[block_of_[v]] -= w;
    block_weights_[to] += w;
    block_of_[v] = to;
  }

  // Sets the block of a vertex that does not count towards block weights,
  // e.g. a vertex that is re-enabled by an uncontraction.
  void assign_untracked(VertexID v, BlockID b) { block_of_[v] = b; }

  void recompute_block_weights(const Hypergraph& hg) {
    block_weights_.assign(static_cast<std::size_t>(k_), 0);
    for (const VertexID v : hg.vertices()) {
      block_weights_[block_of_[v]] += hg.vertex_weight(v);
    }
  }

  bool operator==(const Partition& other) const {
    return k_ == other.k_ && block_of_ == other.block_of_;
  }

 private:
  BlockID k_ = 2;
  std::vector<BlockID> block_of_;
  std::vector<Weight> block_weights_;
};

namespace detail {
inline void check_sizes(const Hypergraph& hg, const Partition& part) {
  if (part.size() != hg.initial_num_vertices()) {
    throw std::invalid_argument("partition size does not match hypergraph");
  }
}

// Number of distinct blocks among the pins of e.
inline BlockID connectivity(const Hypergraph& hg, const Partition& part, EdgeID e,
                            std::vector<char>& seen) {
  BlockID lambda = 0;
  for (const VertexID v : hg.pins(e)) {
    const BlockID b = part.block(v);
    if (!seen[b]) {
      seen[b] = 1;
      ++lambda;
    }
  }
  for (const VertexID v : hg.pins(e)) {
    seen[part.block(v)] = 0;
  }
  return lambda;
}
}  // namespace detail

inline Weight cut_size(const Hypergraph& hg, const Partition& part) {
  detail::check_sizes(hg, part);
  Weight cut = 0;
  for (const EdgeID e : hg.edges()) {
    const auto pins = hg.pins(e);
    const BlockID first = part.block(pins.front());
    const bool spans = std::any_of(pins.begin(), pins.end(),
                                   [&](VertexID v) { return part.block(v) != first; });
    if (spans) {
      cut += hg.edge_weight(e);
    }
  }
  return cut;
}

inline Weight km1(const Hypergraph& hg, const Partition& part) {
  detail::check_sizes(hg, part);
  std::vector<char> seen(static_cast<std::size_t>(part.k()), 0);
  Weight result = 0;
  for (const EdgeID e : hg.edges()) {
    result += hg.edge_weight(e) * (detail::connectivity(hg, part, e, seen) - 1);
  }
  return result;
}

// max_b c(V_b) / ceil(c(V)/k) - 1, recomputed from the assignment.
inline double imbalance(const Hypergraph& hg, const Partition& part) {
  detail::check_sizes(hg, part);
  std::vector<Weight> weights(static_cast<std::size_t>(part.k()), 0);
  for (const VertexID v : hg.vertices()) {
    weights[part.block(v)] += hg.vertex_weight(v);
  }
  const Weight heaviest = *std::max_element(weights.begin(), weights.end());
  const Weight ideal = ceil_div(hg.total_weight(), part.k());
  return static_cast<double>(heaviest) / static_cast<double>(ideal) - 1.0;
}

inline bool is_feasible(const Hypergraph& hg, const Partition& part, double epsilon) {
  return part.heaviest_block_weight() <= max_block_weight(hg.total_weight(), part.k(), epsilon);
}

}  // namespace hgevo
