/*******************************************************************************
 * n-level coarsening with heavy-edge partner selection and an adaptive stop.
 *
 * The adaptive stop watches the pin count |pins| while the hypergraph shrinks.
 * Once fewer than t_max * k vertices remain, |pins| is sampled every t_s
 * contractions into a window of the last t_n samples. When the squared
 * correlation of a straight-line fit over the window drops below t_r, the
 * pin curve has left its linear regime and coarsening stops.
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgevo/definitions.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/partition.hpp"

namespace hgevo {

struct CoarseningConfig {
  VertexID t = 150;
  VertexID t_max = 15000;
  std::size_t t_s = 50;
  std::size_t t_n = 100;
  double t_r = 0.99;
  BlockID k = 2;
  Weight max_node_weight = 0;  // 0: ceil(c(V) / (t * k))
  bool adaptive = false;

  void validate() const {
    if (t_s < 1) {
      throw std::invalid_argument("t_s must be at least 1");
    }
    if (t_n < 3) {
      throw std::invalid_argument("t_n must be at least 3");
    }
    if (!(t_r > 0.0 && t_r <= 1.0)) {
      throw std::invalid_argument("t_r must lie in (0, 1]");
    }
    if (t > t_max) {
      throw std::invalid_argument("t must not exceed t_max");
    }
    if (k < 2) {
      throw std::invalid_argument("k must be at least 2");
    }
  }

  Weight effective_max_node_weight(Weight total_weight) const {
    if (max_node_weight > 0) {
      return max_node_weight;
    }
    const Weight target = std::max<Weight>(1, static_cast<Weight>(t) * k);
    return ceil_div(total_weight, target);
  }
};

enum class StopReason { kThreshold, kAdaptive, kExhausted };

inline std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kThreshold:
      return "threshold";
    case StopReason::kAdaptive:
      return "adaptive";
    case StopReason::kExhausted:
      return "exhausted";
  }
  return "unknown";
}

// Squared Pearson correlation between sample index and sample value.
// A window without variance in its values is perfectly linear.
inline double squared_index_correlation(std::span<const double> samples) {
  const double n = static_cast<double>(samples.size());
  const double mean_x = (n - 1.0) / 2.0;
  const double mean_y = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    const double dy = samples[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (syy == 0.0 || sxx == 0.0) {
    return 1.0;
  }
  return (sxy * sxy) / (sxx * syy);
}

enum class MonitorDecision { kContinue, kStop };

class CoarseningMonitor {
 public:
  CoarseningMonitor(std::size_t t_s, std::size_t t_n, double t_r)
      : t_s_(t_s), t_n_(t_n), t_r_(t_r) {}
  explicit CoarseningMonitor(const CoarseningConfig& cfg)
      : CoarseningMonitor(cfg.t_s, cfg.t_n, cfg.t_r) {}

  // Call once per contraction while monitoring is active.
  MonitorDecision step(std::size_t pins) {
    active_ = true;
    if (++contractions_since_sample_ < t_s_) {
      return MonitorDecision::kContinue;
    }
    contractions_since_sample_ = 0;
    if (window_.size() == t_n_) {
      window_.pop_front();
    }
    window_.push_back(static_cast<double>(pins));
    if (window_.size() < t_n_) {
      return MonitorDecision::kContinue;
    }
    const std::vector<double> samples(window_.begin(), window_.end());
    last_r_squared_ = squared_index_correlation(samples);
    return *last_r_squared_ < t_r_ ? MonitorDecision::kStop : MonitorDecision::kContinue;
  }

  bool active() const { return active_; }
  std::size_t window_size() const { return window_.size(); }
  std::optional<double> last_r_squared() const { return last_r_squared_; }

 private:
  std::size_t t_s_;
  std::size_t t_n_;
  double t_r_;
  std::deque<double> window_;
  std::size_t contractions_since_sample_ = 0;
  bool active_ = false;
  std::optional<double> last_r_squared_;
};

// r(u, v) = sum over edges containing both u and v of w(e) / (|e| - 1).
inline double rate_pair(const Hypergraph& hg, VertexID u, VertexID v) {
  if (!hg.vertex_is_enabled(u) || !hg.vertex_is_enabled(v)) {
    throw std::invalid_argument("rating requires enabled vertices");
  }
  double rating = 0.0;
  for (const EdgeID e : hg.incident_edges(u)) {
    const auto pins = hg.pins(e);
    if (pins.size() > 1 && std::find(pins.begin(), pins.end(), v) != pins.end()) {
      rating += static_cast<double>(hg.edge_weight(e)) / static_cast<double>(pins.size() - 1);
    }
  }
  return rating;
}

// Heavy-edge partner selection with a reusable dense rating buffer.
class HeavyEdgeRater {
 public:
  explicit HeavyEdgeRater(VertexID num_vertices) : ratings_(num_vertices, 0.0) {}

  std::optional<VertexID> select_partner(const Hypergraph& hg, VertexID u,
                                         Weight max_node_weight, Rng& rng) {
    for (const EdgeID e : hg.incident_edges(u)) {
      const auto pins = hg.pins(e);
      if (pins.size() < 2) {
        continue;
      }
      const double score =
          static_cast<double>(hg.edge_weight(e)) / static_cast<double>(pins.size() - 1);
      for (const VertexID v : pins) {
        if (v == u) {
          continue;
        }
        if (ratings_[v] == 0.0) {
          touched_.push_back(v);
        }
        ratings_[v] += score;
      }
    }

    std::optional<VertexID> best;
    double best_rating = 0.0;
    std::size_t ties = 0;
    const Weight u_weight = hg.vertex_weight(u);
    for (const VertexID v : touched_) {
      const double rating = ratings_[v];
      ratings_[v] = 0.0;
      if (u_weight + hg.vertex_weight(v) > max_node_weight) {
        continue;
      }
      if (!best || rating > best_rating) {
        best = v;
        best_rating = rating;
        ties = 1;
      } else if (rating == best_rating && random_index<std::size_t>(rng, ++ties) == 0) {
        best = v;
      }
    }
    touched_.clear();
    return best;
  }

 private:
  std::vector<double> ratings_;
  std::vector<VertexID> touched_;
};

inline std::optional<VertexID> select_contraction_partner(const Hypergraph& hg, VertexID u,
                                                          const CoarseningConfig& cfg, Rng& rng) {
  HeavyEdgeRater rater(hg.initial_num_vertices());
  return rater.select_partner(hg, u, cfg.effective_max_node_weight(hg.total_weight()), rng);
}

struct CoarseningResult {
  std::vector<ContractionMemento> mementos;
  StopReason stop_reason = StopReason::kThreshold;
};

using ContractionObserver = std::function<void(const ContractionMemento&, const Hypergraph&)>;

// Contracts `hg` in place. Each round visits the enabled vertices in a fresh
// random order and contracts every vertex with its best admissible partner.
inline CoarseningResult coarsen(Hypergraph& hg, const CoarseningConfig& cfg, Rng& rng,
                                const ContractionObserver& observer = {}) {
  cfg.validate();
  CoarseningResult result;
  const std::size_t target = static_cast<std::size_t>(cfg.t) * static_cast<std::size_t>(cfg.k);
  const std::size_t monitor_start =
      static_cast<std::size_t>(cfg.t_max) * static_cast<std::size_t>(cfg.k);
  const Weight max_node_weight = cfg.effective_max_node_weight(hg.total_weight());
  if (hg.current_num_vertices() <= target) {
    return result;
  }

  HeavyEdgeRater rater(hg.initial_num_vertices());
  CoarseningMonitor monitor(cfg);
  std::vector<VertexID> order;
  for (;;) {
    order = hg.active_vertices();
    std::shuffle(order.begin(), order.end(), rng);
    bool contracted = false;
    for (const VertexID u : order) {
      if (!hg.vertex_is_enabled(u)) {
        continue;
      }
      const auto partner = rater.select_partner(hg, u, max_node_weight, rng);
      if (!partner) {
        continue;
      }
      result.mementos.push_back(hg.contract(u, *partner));
      contracted = true;
      if (observer) {
        observer(result.mementos.back(), hg);
      }
      if (cfg.adaptive && hg.current_num_vertices() < monitor_start &&
          monitor.step(hg.current_num_pins()) == MonitorDecision::kStop) {
        result.stop_reason = StopReason::kAdaptive;
        return result;
      }
      if (hg.current_num_vertices() <= target) {
        result.stop_reason = StopReason::kThreshold;
        return result;
      }
    }
    if (!contracted) {
      result.stop_reason = StopReason::kExhausted;
      return result;
    }
  }
}

}  // namespace hgevo
