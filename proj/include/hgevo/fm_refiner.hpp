/*******************************************************************************
 * Two-way Fiduccia-Mattheyses refinement.
 *
 * One pass repeatedly moves the unlocked vertex with the highest gain whose
 * move keeps the target block below the balance bound plus one maximum vertex
 * weight of slack. Afterwards the pass is rolled back to the lowest-cut
 * feasible prefix. Gains live in one addressable max-heap per block; equal
 * gains are ordered by a random key drawn at the start of the pass.
 *
 * refine() seeds every pass from the configured seed and the current
 * assignment, so a partition it returns is a fixed point of refine().
 ******************************************************************************/
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hgevo/datastructure/addressable_pq.hpp"
#include "hgevo/definitions.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/partition.hpp"

namespace hgevo {

struct FmConfig {
  double epsilon = 0.1;
  int max_passes = 8;
  std::uint64_t seed = 0;

  void validate() const {
    if (max_passes < 1) {
      throw std::invalid_argument("max_passes must be at least 1");
    }
  }
};

// Cut reduction obtained by moving v to the other block of a bipartition.
inline Weight gain(const Hypergraph& hg, const Partition& part, VertexID v) {
  if (part.k() != 2) {
    throw std::invalid_argument("gain is defined for bipartitions only");
  }
  const BlockID from = part.block(v);
  Weight result = 0;
  for (const EdgeID e : hg.incident_edges(v)) {
    std::size_t in_from = 0;
    for (const VertexID u : hg.pins(e)) {
      in_from += part.block(u) == from ? 1 : 0;
    }
    if (in_from == 1) {
      result += hg.edge_weight(e);
    }
    if (in_from == hg.edge_size(e)) {
      result -= hg.edge_weight(e);
    }
  }
  return result;
}

struct FmPassResult {
  Weight improvement = 0;  // cut before minus cut after
  bool became_feasible = false;
  std::size_t moves_kept = 0;
};

class TwoWayFmRefiner {
  using Key = std::pair<Weight, std::uint64_t>;

 public:
  TwoWayFmRefiner(const Hypergraph& hg, double epsilon)
      : hg_(hg),
        epsilon_(epsilon),
        pin_count_(hg.initial_num_edges()),
        gain_(hg.initial_num_vertices(), 0),
        pq_{ds::AddressablePQ<VertexID, Key>(hg.initial_num_vertices()),
            ds::AddressablePQ<VertexID, Key>(hg.initial_num_vertices())} {}

  Weight balance_bound(const Partition& part) const {
    return max_block_weight(hg_.total_weight(), part.k(), epsilon_);
  }

  FmPassResult pass(Partition& part, Rng& rng) {
    require_bipartition(part);
    const Weight bound = balance_bound(part);
    const Weight slack_bound = bound + hg_.max_vertex_weight();
    const bool initially_feasible = part.heaviest_block_weight() <= bound;

    const Weight initial_cut = count_pins(part);
    for (auto& pq : pq_) {
      pq.clear();
    }
    for (const VertexID v : hg_.vertices()) {
      gain_[v] = gain_from_counts(part, v);
      pq_[part.block(v)].push(v, Key{gain_[v], rng()});
    }

    Weight cut = initial_cut;
    Weight best_cut = initially_feasible ? initial_cut : std::numeric_limits<Weight>::max();
    bool have_best = initially_feasible;
    std::size_t best_prefix = 0;
    moves_.clear();

    for (;;) {
      std::array<bool, 2> movable{};
      for (BlockID b = 0; b < 2; ++b) {
        movable[b] = !pq_[b].empty() &&
                     part.block_weight(1 - b) + hg_.vertex_weight(pq_[b].top()) <= slack_bound;
      }
      if (!movable[0] && !movable[1]) {
        break;
      }
      BlockID from = movable[0] ? 0 : 1;
      if (movable[0] && movable[1]) {
        const Weight g0 = pq_[0].top_key().first;
        const Weight g1 = pq_[1].top_key().first;
        if (g0 != g1) {
          from = g0 > g1 ? 0 : 1;
        } else if (part.block_weight(0) != part.block_weight(1)) {
          from = part.block_weight(0) > part.block_weight(1) ? 0 : 1;
        } else {
          from = coin(rng, 0.5) ? 0 : 1;
        }
      }

      const VertexID v = pq_[from].pop();
      cut -= gain_[v];
      apply_move(part, v, from);
      moves_.push_back(v);
#ifdef HGEVO_HEAVY_ASSERTIONS
      verify_gains(part);
#endif

      if (part.heaviest_block_weight() <= bound && (!have_best || cut < best_cut)) {
        best_cut = cut;
        best_prefix = moves_.size();
        have_best = true;
      }
    }

    for (std::size_t i = moves_.size(); i > best_prefix; --i) {
      const VertexID v = moves_[i - 1];
      part.move(hg_, v, 1 - part.block(v));
    }

    FmPassResult result;
    result.moves_kept = best_prefix;
    result.improvement = have_best ? initial_cut - best_cut : 0;
    result.became_feasible = !initially_feasible && have_best;
    return result;
  }

  // Applies the best single feasible move with positive gain, if any.
  bool improve_single_move(Partition& part) {
    require_bipartition(part);
    const Weight bound = balance_bound(part);
    if (part.heaviest_block_weight() > bound) {
      return false;
    }
    count_pins(part);
    bool found = false;
    VertexID best = 0;
    Weight best_gain = 0;
    for (const VertexID v : hg_.vertices()) {
      const BlockID to = 1 - part.block(v);
      if (part.block_weight(to) + hg_.vertex_weight(v) > bound) {
        continue;
      }
      const Weight g = gain_from_counts(part, v);
      if (g > best_gain) {
        best_gain = g;
        best = v;
        found = true;
      }
    }
    if (found) {
      part.move(hg_, best, 1 - part.block(best));
    }
    return found;
  }

  // FM passes until a pass stops improving (or max_passes), followed by a
  // greedy single-move sweep; repeated while the sweep finds a move.
  void refine(Partition& part, const FmConfig& cfg) {
    cfg.validate();
    for (;;) {
      for (int p = 0; p < cfg.max_passes; ++p) {
        Rng rng = make_rng({cfg.seed, fingerprint(part)});
        const FmPassResult r = pass(part, rng);
        if (r.improvement <= 0 && !r.became_feasible) {
          break;
        }
      }
      if (!improve_single_move(part)) {
        break;
      }
    }
  }

 private:
  static std::uint64_t fingerprint(const Partition& part) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const BlockID b : part.blocks()) {
      hash = (hash ^ static_cast<std::uint64_t>(b)) * 0x100000001b3ULL;
    }
    return hash;
  }

  void require_bipartition(const Partition& part) const {
    if (part.k() != 2) {
      throw std::invalid_argument("FM refinement supports bipartitions only");
    }
    if (part.size() != hg_.initial_num_vertices()) {
      throw std::invalid_argument("partition size does not match hypergraph");
    }
  }

  Weight count_pins(const Partition& part) {
    Weight cut = 0;
    for (const EdgeID e : hg_.edges()) {
      auto& count = pin_count_[e];
      count = {0, 0};
      for (const VertexID v : hg_.pins(e)) {
        ++count[part.block(v)];
      }
      if (count[0] > 0 && count[1] > 0) {
        cut += hg_.edge_weight(e);
      }
    }
    return cut;
  }

  Weight gain_from_counts(const Partition& part, VertexID v) const {
    const BlockID from = part.block(v);
    Weight g = 0;
    for (const EdgeID e : hg_.incident_edges(v)) {
      if (pin_count_[e][from] == 1) {
        g += hg_.edge_weight(e);
      }
      if (pin_count_[e][1 - from] == 0) {
        g -= hg_.edge_weight(e);
      }
    }
    return g;
  }

  void adjust(VertexID u, Weight delta) {
    gain_[u] += delta;
    auto& pq = pq_[0].contains(u) ? pq_[0] : pq_[1];
    if (pq.contains(u)) {
      pq.update(u, Key{gain_[u], pq.key(u).second});
    }
  }

  bool unlocked(VertexID u) const { return pq_[0].contains(u) || pq_[1].contains(u); }

  void apply_move(Partition& part, VertexID v, BlockID from) {
    const BlockID to = 1 - from;
    for (const EdgeID e : hg_.incident_edges(v)) {
      const Weight w = hg_.edge_weight(e);
      auto& count = pin_count_[e];
      const auto pins = hg_.pins(e);
      if (count[to] == 0) {
        for (const VertexID u : pins) {
          if (u != v && unlocked(u)) {
            adjust(u, w);
          }
        }
      } else if (count[to] == 1) {
        for (const VertexID u : pins) {
          if (part.block(u) == to && unlocked(u)) {
            adjust(u, -w);
          }
        }
      }
      --count[from];
      ++count[to];
      if (count[from] == 0) {
        for (const VertexID u : pins) {
          if (u != v && unlocked(u)) {
            adjust(u, -w);
          }
        }
      } else if (count[from] == 1) {
        for (const VertexID u : pins) {
          if (u != v && part.block(u) == from && unlocked(u)) {
            adjust(u, w);
          }
        }
      }
    }
    part.move(hg_, v, to);
  }

#ifdef HGEVO_HEAVY_ASSERTIONS
  void verify_gains(const Partition& part) const {
    for (const VertexID v : hg_.vertices()) {
      if (unlocked(v) && gain_[v] != gain(hg_, part, v)) {
        throw std::logic_error("incremental FM gain diverged from recomputed gain");
      }
    }
  }
#endif

  const Hypergraph& hg_;
  double epsilon_;
  std::vector<std::array<std::int32_t, 2>> pin_count_;
  std::vector<Weight> gain_;
  std::array<ds::AddressablePQ<VertexID, Key>, 2> pq_;
  std::vector<VertexID> moves_;
};

inline std::pair<Partition, FmPassResult> fm_pass(const Hypergraph& hg, Partition part,
                                                  const FmConfig& cfg) {
  Rng rng = make_rng({cfg.seed});
  TwoWayFmRefiner refiner(hg, cfg.epsilon);
  const FmPassResult result = refiner.pass(part, rng);
  return {std::move(part), result};
}

inline Partition fm_refine(const Hypergraph& hg, Partition part, const FmConfig& cfg) {
  TwoWayFmRefiner refiner(hg, cfg.epsilon);
  refiner.refine(part, cfg);
  return part;
}

}  // namespace hgevo
