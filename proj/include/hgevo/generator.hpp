#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "hgevo/definitions.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/partition.hpp"

namespace hgevo {

// Planted bipartition with unit vertex weights. Edge cardinalities are drawn
// uniformly from [min_cardinality, max_cardinality].
struct SyntheticSpec {
  VertexID vertices = 1000;
  VertexID block0_size = 0;  // 0: half of the vertices
  std::size_t intra_edges = 2000;
  std::size_t cross_edges = 10;
  std::size_t min_cardinality = 2;
  std::size_t max_cardinality = 4;
  Weight edge_weight = 1;
  double epsilon = 0.1;
  std::uint64_t seed = 0;

  VertexID first_block_size() const { return block0_size == 0 ? vertices / 2 : block0_size; }

  void validate() const {
    if (vertices < 2) {
      throw std::invalid_argument("a planted bipartition needs at least two vertices");
    }
    const VertexID first = first_block_size();
    if (first >= vertices) {
      throw std::invalid_argument("both planted blocks must be nonempty");
    }
    if (intra_edges > 0 && first < 2 && vertices - first < 2) {
      throw std::invalid_argument("intra-block edges need a block with two vertices");
    }
    if (min_cardinality < 2 || min_cardinality > max_cardinality) {
      throw std::invalid_argument("edge cardinalities must satisfy 2 <= min <= max");
    }
    if (edge_weight < 1) {
      throw std::invalid_argument("edge weight must be positive");
    }
    const Weight bound = max_block_weight(vertices, 2, epsilon);
    if (std::max<Weight>(first, vertices - first) > bound) {
      throw std::invalid_argument("planted block sizes are infeasible for epsilon");
    }
  }
};

struct SyntheticInstance {
  Hypergraph hypergraph;
  std::vector<BlockID> planted;
  Weight planted_cut = 0;
};

namespace detail {

inline std::vector<VertexID> sample_distinct(const std::vector<VertexID>& pool, std::size_t count,
                                             Rng& rng) {
  std::vector<VertexID> result;
  std::unordered_set<VertexID> taken;
  while (result.size() < count) {
    const VertexID v = pool[random_index(rng, pool.size())];
    if (taken.insert(v).second) {
      result.push_back(v);
    }
  }
  return result;
}

}  // namespace detail

inline SyntheticInstance gen_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng = make_rng({spec.seed, 0x5e7u});
  const VertexID first = spec.first_block_size();

  std::vector<VertexID> order(spec.vertices);
  for (VertexID v = 0; v < spec.vertices; ++v) {
    order[v] = v;
  }
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<BlockID> planted(spec.vertices, 1);
  std::vector<std::vector<VertexID>> members(2);
  for (VertexID i = 0; i < spec.vertices; ++i) {
    const BlockID b = i < first ? 0 : 1;
    planted[order[i]] = b;
    members[b].push_back(order[i]);
  }

  const auto cardinality = [&](std::size_t limit) {
    const std::size_t hi = std::min(spec.max_cardinality, limit);
    const std::size_t lo = std::min(spec.min_cardinality, hi);
    return lo + random_index<std::size_t>(rng, hi - lo + 1);
  };

  std::vector<std::vector<VertexID>> edges;
  edges.reserve(spec.intra_edges + spec.cross_edges);
  for (std::size_t i = 0; i < spec.intra_edges; ++i) {
    // Blocks are chosen in proportion to their size.
    const BlockID b = random_index(rng, spec.vertices) < first ? 0 : 1;
    if (members[b].size() < 2) {
      edges.push_back(detail::sample_distinct(members[1 - b], 2, rng));
      continue;
    }
    edges.push_back(detail::sample_distinct(members[b], cardinality(members[b].size()), rng));
  }
  std::vector<VertexID> everyone(spec.vertices);
  for (VertexID v = 0; v < spec.vertices; ++v) {
    everyone[v] = v;
  }
  for (std::size_t i = 0; i < spec.cross_edges; ++i) {
    const std::size_t size = cardinality(spec.vertices);
    std::vector<VertexID> pins = {members[0][random_index(rng, members[0].size())],
                                  members[1][random_index(rng, members[1].size())]};
    while (pins.size() < size) {
      const VertexID v = everyone[random_index(rng, everyone.size())];
      if (std::find(pins.begin(), pins.end(), v) == pins.end()) {
        pins.push_back(v);
      }
    }
    edges.push_back(std::move(pins));
  }

  std::vector<Weight> edge_weights(edges.size(), spec.edge_weight);
  SyntheticInstance instance;
  instance.hypergraph = Hypergraph(spec.vertices, std::move(edges), {}, std::move(edge_weights));
  instance.planted = std::move(planted);
  instance.planted_cut = static_cast<Weight>(spec.cross_edges) * spec.edge_weight;

  const Partition check(instance.hypergraph, 2, instance.planted);
  if (cut_size(instance.hypergraph, check) != instance.planted_cut) {
    throw std::logic_error("generated instance does not realize its planted cut");
  }
  return instance;
}

}  // namespace hgevo
