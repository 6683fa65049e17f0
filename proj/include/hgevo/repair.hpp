#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hgevo/definitions.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/partition.hpp"

namespace hgevo {

// Moves random vertices from the heavier to the lighter block until the
// bipartition is feasible. A move is only taken if it lowers the heavier
// block's weight below its current value; if a few random draws fail, the
// heaviest such vertex is moved instead. Returns false if no balancing move
// is left while the partition is still infeasible.
inline bool repair(const Hypergraph& hg, Partition& part, double epsilon, Rng& rng) {
  const Weight bound = max_block_weight(hg.total_weight(), part.k(), epsilon);
  if (part.heaviest_block_weight() <= bound) {
    return true;
  }
  std::array<std::vector<VertexID>, 2> members;
  for (const VertexID v : hg.vertices()) {
    members[part.block(v)].push_back(v);
  }

  constexpr int kRandomAttempts = 8;
  while (part.heaviest_block_weight() > bound) {
    const BlockID heavy = part.block_weight(0) >= part.block_weight(1) ? 0 : 1;
    const BlockID light = 1 - heavy;
    auto& pool = members[heavy];
    const auto improves = [&](VertexID v) {
      return part.block_weight(light) + hg.vertex_weight(v) < part.block_weight(heavy);
    };

    std::size_t chosen = pool.size();
    for (int attempt = 0; attempt < kRandomAttempts && !pool.empty(); ++attempt) {
      const std::size_t i = random_index(rng, pool.size());
      if (improves(pool[i])) {
        chosen = i;
        break;
      }
    }
    if (chosen == pool.size()) {
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (improves(pool[i]) &&
            (chosen == pool.size() || hg.vertex_weight(pool[i]) > hg.vertex_weight(pool[chosen]))) {
          chosen = i;
        }
      }
    }
    if (chosen == pool.size()) {
      return false;
    }
    const VertexID v = pool[chosen];
    pool[chosen] = pool.back();
    pool.pop_back();
    members[light].push_back(v);
    part.move(hg, v, light);
  }
  return true;
}

}  // namespace hgevo
