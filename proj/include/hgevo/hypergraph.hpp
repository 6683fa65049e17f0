/*******************************************************************************
 * Dynamic hypergraph H = (V, E, c, w) supporting n-level coarsening.
 *
 * Vertices are contracted one pair at a time. Each contraction returns a
 * ContractionMemento from which the exact previous incidence structure can be
 * restored, provided mementos are replayed in LIFO order. Single-pin edges
 * that arise from a contraction are disabled; they can never be cut.
 *
 * Invariant: for every enabled vertex v, incident_edges(v) lists exactly the
 * enabled edges that contain v as a pin.
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hgevo/definitions.hpp"

namespace hgevo {

struct ContractionMemento {
  struct ReplacedEdge {
    EdgeID edge;
    std::size_t pin_position;
  };
  struct ShrunkEdge {
    EdgeID edge;
    std::size_t pin_position;
  };
  struct RemovedEdge {
    EdgeID edge;
    std::vector<VertexID> former_pins;
    std::size_t incidence_position;  // slot the edge held in the survivor's incidence list
  };

  VertexID survivor = 0;
  VertexID absorbed = 0;
  std::vector<ReplacedEdge> replaced_edges;
  std::vector<ShrunkEdge> shrunk_edges;
  std::vector<RemovedEdge> removed_edges;
  std::size_t depth = 0;  // position on the contraction stack
};

class Hypergraph {
 public:
  Hypergraph() = default;

  // Empty weight vectors mean unit weights. Throws std::invalid_argument on
  // out-of-range or duplicate pins and on nonpositive weights.
  Hypergraph(VertexID num_vertices, std::vector<std::vector<VertexID>> edges,
             std::vector<Weight> vertex_weights = {}, std::vector<Weight> edge_weights = {})
      : pins_(std::move(edges)),
        vertex_weights_(std::move(vertex_weights)),
        edge_weights_(std::move(edge_weights)) {
    if (vertex_weights_.empty()) {
      vertex_weights_.assign(num_vertices, 1);
    }
    if (edge_weights_.empty()) {
      edge_weights_.assign(pins_.size(), 1);
    }
    if (vertex_weights_.size() != num_vertices) {
      throw std::invalid_argument("vertex weight count does not match vertex count");
    }
    if (edge_weights_.size() != pins_.size()) {
      throw std::invalid_argument("edge weight count does not match edge count");
    }
    for (const Weight w : vertex_weights_) {
      if (w <= 0) {
        throw std::invalid_argument("vertex weights must be positive");
      }
    }
    for (const Weight w : edge_weights_) {
      if (w <= 0) {
        throw std::invalid_argument("edge weights must be positive");
      }
    }

    incidence_.resize(num_vertices);
    std::vector<EdgeID> last_seen(num_vertices, static_cast<EdgeID>(-1));
    for (EdgeID e = 0; e < pins_.size(); ++e) {
      if (pins_[e].empty()) {
        throw std::invalid_argument("hyperedge " + std::to_string(e) + " has no pins");
      }
      for (const VertexID v : pins_[e]) {
        if (v >= num_vertices) {
          throw std::invalid_argument("pin " + std::to_string(v) + " out of range in hyperedge " +
                                      std::to_string(e));
        }
        if (last_seen[v] == e) {
          throw std::invalid_argument("duplicate pin " + std::to_string(v) + " in hyperedge " +
                                      std::to_string(e));
        }
        last_seen[v] = e;
        incidence_[v].push_back(e);
      }
      num_pins_ += pins_[e].size();
    }
    vertex_enabled_.assign(num_vertices, 1);
    edge_enabled_.assign(pins_.size(), 1);
    num_active_vertices_ = num_vertices;
    num_active_edges_ = static_cast<EdgeID>(pins_.size());
    total_weight_ = std::accumulate(vertex_weights_.begin(), vertex_weights_.end(), Weight{0});
  }

  VertexID initial_num_vertices() const { return static_cast<VertexID>(incidence_.size()); }
  EdgeID initial_num_edges() const { return static_cast<EdgeID>(pins_.size()); }
  VertexID current_num_vertices() const { return num_active_vertices_; }
  EdgeID current_num_edges() const { return num_active_edges_; }
  std::size_t current_num_pins() const { return num_pins_; }
  Weight total_weight() const { return total_weight_; }

  bool vertex_is_enabled(VertexID v) const { return vertex_enabled_[v] != 0; }
  bool edge_is_enabled(EdgeID e) const { return edge_enabled_[e] != 0; }

  std::span<const VertexID> pins(EdgeID e) const { return pins_[e]; }
  std::span<const EdgeID> incident_edges(VertexID v) const { return incidence_[v]; }
  std::size_t edge_size(EdgeID e) const { return pins_[e].size(); }
  std::size_t degree(VertexID v) const { return incidence_[v].size(); }
  Weight vertex_weight(VertexID v) const { return vertex_weights_[v]; }
  Weight edge_weight(EdgeID e) const { return edge_weights_[e]; }
  std::size_t contraction_depth() const { return depth_; }

  auto vertices() const {
    return std::views::iota(VertexID{0}, initial_num_vertices()) |
           std::views::filter([this](VertexID v) { return vertex_is_enabled(v); });
  }

  auto edges() const {
    return std::views::iota(EdgeID{0}, initial_num_edges()) |
           std::views::filter([this](EdgeID e) { return edge_is_enabled(e); });
  }

  std::vector<VertexID> active_vertices() const {
    std::vector<VertexID> result;
    result.reserve(num_active_vertices_);
    for (const VertexID v : vertices()) {
      result.push_back(v);
    }
    return result;
  }

  Weight max_vertex_weight() const {
    Weight result = 0;
    for (const VertexID v : vertices()) {
      result = std::max(result, vertex_weights_[v]);
    }
    return result;
  }

  // Merges `absorbed` into `survivor`. Pins equal to `absorbed` are rewritten
  // to `survivor`, or dropped if `survivor` already is a pin of that edge.
  ContractionMemento contract(VertexID survivor, VertexID absorbed) {
    if (survivor == absorbed) {
      throw std::invalid_argument("cannot contract a vertex with itself");
    }
    if (survivor >= initial_num_vertices() || absorbed >= initial_num_vertices() ||
        !vertex_is_enabled(survivor) || !vertex_is_enabled(absorbed)) {
      throw std::invalid_argument("contraction requires two enabled vertices");
    }

    ContractionMemento memento;
    memento.survivor = survivor;
    memento.absorbed = absorbed;
    memento.depth = depth_;

    for (const EdgeID e : incidence_[absorbed]) {
      auto& edge_pins = pins_[e];
      const auto absorbed_it = std::find(edge_pins.begin(), edge_pins.end(), absorbed);
      const std::size_t absorbed_pos = static_cast<std::size_t>(absorbed_it - edge_pins.begin());
      const bool survivor_present =
          std::find(edge_pins.begin(), edge_pins.end(), survivor) != edge_pins.end();

      if (!survivor_present) {
        *absorbed_it = survivor;
        incidence_[survivor].push_back(e);
        memento.replaced_edges.push_back({e, absorbed_pos});
      } else if (edge_pins.size() == 2) {
        auto& survivor_edges = incidence_[survivor];
        const auto slot = std::find(survivor_edges.begin(), survivor_edges.end(), e);
        memento.removed_edges.push_back(
            {e, edge_pins, static_cast<std::size_t>(slot - survivor_edges.begin())});
        survivor_edges.erase(slot);
        edge_pins.erase(edge_pins.begin() + static_cast<std::ptrdiff_t>(absorbed_pos));
        edge_enabled_[e] = 0;
        --num_active_edges_;
        num_pins_ -= 2;
      } else {
        edge_pins.erase(absorbed_it);
        memento.shrunk_edges.push_back({e, absorbed_pos});
        --num_pins_;
      }
    }

    vertex_weights_[survivor] += vertex_weights_[absorbed];
    vertex_enabled_[absorbed] = 0;
    --num_active_vertices_;
    ++depth_;
    return memento;
  }

  // Reverts the most recent contraction. Throws std::logic_error if `memento`
  // is not the top of the contraction stack.
  void uncontract(const ContractionMemento& memento) {
    if (depth_ == 0 || memento.depth + 1 != depth_ || vertex_is_enabled(memento.absorbed) ||
        !vertex_is_enabled(memento.survivor)) {
      throw std::logic_error("uncontraction out of LIFO order");
    }
    const VertexID survivor = memento.survivor;
    const VertexID absorbed = memento.absorbed;

    auto& survivor_edges = incidence_[survivor];
    survivor_edges.resize(survivor_edges.size() - memento.replaced_edges.size());
    for (const auto& replaced : memento.replaced_edges) {
      pins_[replaced.edge][replaced.pin_position] = absorbed;
    }
    for (const auto& shrunk : memento.shrunk_edges) {
      auto& edge_pins = pins_[shrunk.edge];
      edge_pins.insert(edge_pins.begin() + static_cast<std::ptrdiff_t>(shrunk.pin_position),
                       absorbed);
      ++num_pins_;
    }
    for (auto it = memento.removed_edges.rbegin(); it != memento.removed_edges.rend(); ++it) {
      pins_[it->edge] = it->former_pins;
      edge_enabled_[it->edge] = 1;
      survivor_edges.insert(
          survivor_edges.begin() + static_cast<std::ptrdiff_t>(it->incidence_position), it->edge);
      ++num_active_edges_;
      num_pins_ += 2;
    }

    vertex_weights_[survivor] -= vertex_weights_[absorbed];
    vertex_enabled_[absorbed] = 1;
    ++num_active_vertices_;
    --depth_;
  }

  bool operator==(const Hypergraph&) const = default;

 private:
  std::vector<std::vector<VertexID>> pins_;
  std::vector<std::vector<EdgeID>> incidence_;
  std::vector<Weight> vertex_weights_;
  std::vector<Weight> edge_weights_;
  std::vector<char> vertex_enabled_;
  std::vector<char> edge_enabled_;
  VertexID num_active_vertices_ = 0;
  EdgeID num_active_edges_ = 0;
  std::size_t num_pins_ = 0;
  Weight total_weight_ = 0;
  std::size_t depth_ = 0;
};

// Static copy of the current (coarse) state with dense vertex ids.
struct CompactHypergraph {
  Hypergraph hypergraph;
  std::vector<VertexID> to_original;
};

inline CompactHypergraph compact(const Hypergraph& hg) {
  constexpr VertexID kUnmapped = static_cast<VertexID>(-1);
  std::vector<VertexID> to_compact(hg.initial_num_vertices(), kUnmapped);
  CompactHypergraph result;
  std::vector<Weight> vertex_weights;
  for (const VertexID v : hg.vertices()) {
    to_compact[v] = static_cast<VertexID>(result.to_original.size());
    result.to_original.push_back(v);
    vertex_weights.push_back(hg.vertex_weight(v));
  }
  std::vector<std::vector<VertexID>> edges;
  std::vector<Weight> edge_weights;
  for (const EdgeID e : hg.edges()) {
    std::vector<VertexID> mapped;
    mapped.reserve(hg.edge_size(e));
    for (const VertexID v : hg.pins(e)) {
      mapped.push_back(to_compact[v]);
    }
    edges.push_back(std::move(mapped));
    edge_weights.push_back(hg.edge_weight(e));
  }
  result.hypergraph = Hypergraph(static_cast<VertexID>(result.to_original.size()),
                                 std::move(edges), std::move(vertex_weights),
                                 std::move(edge_weights));
  return result;
}

}  // namespace hgevo
