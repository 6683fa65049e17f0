// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hgevo/hgevo.hpp"
#include "oracles.hpp"

namespace {

using namespace hgevo;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(const char* fmt, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

std::vector<BlockID> genes_of(const Partition& part) {
  return {part.blocks().begin(), part.blocks().end()};
}

bool has_improving_move(const Hypergraph& hg, std::vector<BlockID> genes, double eps) {
  const Weight cut = testing::naive_cut(hg, genes);
  for (VertexID v = 0; v < genes.size(); ++v) {
    genes[v] = 1 - genes[v];
    const bool better =
        testing::naive_feasible(hg, genes, eps) && testing::naive_cut(hg, genes) < cut;
    genes[v] = 1 - genes[v];
    if (better) {
      return true;
    }
  }
  return false;
}

Outcome brute_force_optimality() {
  const auto start = Clock::now();
  Rng rng = make_rng({1001});
  testing::FuzzShape shape;
  shape.min_vertices = 4;
  shape.max_vertices = 14;
  shape.max_edges = 30;
  int matched = 0;
  int below = 0;
  const int instances = 50;
  for (int i = 0; i < instances; ++i) {
    const Hypergraph hg = testing::random_hypergraph(rng, shape);
    const Weight optimum = testing::brute_force_min_cut(hg, 0.1);
    DriverConfig cfg;
    cfg.algorithm = InitialAlgorithm::kEa;
    cfg.ea.mu = 8;
    cfg.ea.lambda = 16;
    cfg.ea.seed_multiplier = 0;
    cfg.budget = 2000;
    cfg.seed = static_cast<std::uint64_t>(i);
    const PartitionResult result = partition(hg, cfg);
    const std::vector<BlockID> genes = genes_of(result.partition);
    const bool valid = testing::naive_feasible(hg, genes, 0.1) &&
                       testing::naive_cut(hg, genes) == result.report.final_cut;
    matched += valid && result.report.final_cut == optimum ? 1 : 0;
    below += result.report.final_cut < optimum || !valid ? 1 : 0;
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = matched >= 48 && below == 0 && elapsed < 60.0;
  out.detail = format("%d/%d optimal (need >= 95%%), %d below optimum or invalid, %.2f s (< 60 s)",
                      matched, instances, below, elapsed);
  return out;
}

Outcome projection_invariance() {
  Rng rng = make_rng({1002});
  testing::FuzzShape shape;
  shape.max_vertices = 60;
  shape.max_edges = 120;
  shape.max_edge_weight = 5;
  shape.max_vertex_weight = 3;
  int mismatches = 0;
  const int cases = 100;
  for (int i = 0; i < cases; ++i) {
    const Hypergraph original = testing::random_hypergraph(rng, shape);
    Hypergraph full = original;
    CoarseningConfig cfg;
    cfg.t = 1;
    cfg.max_node_weight = original.total_weight();
    const CoarseningResult coarse = coarsen(full, cfg, rng);
    const std::size_t prefix = random_index<std::size_t>(rng, coarse.mementos.size() + 1);
    Hypergraph hg = original;
    for (std::size_t m = 0; m < prefix; ++m) {
      hg.contract(coarse.mementos[m].survivor, coarse.mementos[m].absorbed);
    }
    const auto genes = testing::random_genes(rng, hg.initial_num_vertices());
    std::vector<BlockID> projected = genes;
    for (std::size_t m = prefix; m-- > 0;) {
      projected[coarse.mementos[m].absorbed] = projected[coarse.mementos[m].survivor];
    }
    mismatches += cut_size(hg, Partition(hg, 2, genes)) != testing::naive_cut(original, projected)
                      ? 1
                      : 0;
  }
  return {mismatches == 0, format("%d/%d prefixes with coarse cut != projected cut (tolerance 0)",
                                  mismatches, cases)};
}

Outcome uncontract_inverse() {
  Rng rng = make_rng({1003});
  testing::FuzzShape shape;
  shape.max_vertices = 30;
  shape.max_edges = 60;
  shape.max_cardinality = 8;
  shape.max_vertex_weight = 4;
  shape.max_edge_weight = 4;
  shape.allow_single_pin = true;
  int failures = 0;
  const int cases = 1000;
  for (int i = 0; i < cases; ++i) {
    const Hypergraph original = testing::random_hypergraph(rng, shape);
    Hypergraph hg = original;
    std::vector<ContractionMemento> stack;
    const std::size_t steps = 1 + random_index<std::size_t>(rng, original.initial_num_vertices() - 1);
    while (stack.size() < steps && hg.current_num_vertices() > 1) {
      const auto active = hg.active_vertices();
      const VertexID a = active[random_index(rng, active.size())];
      const VertexID b = active[random_index(rng, active.size())];
      if (a != b) {
        stack.push_back(hg.contract(a, b));
      }
    }
    while (!stack.empty()) {
      hg.uncontract(stack.back());
      stack.pop_back();
    }
    failures += hg == original ? 0 : 1;
  }
  return {failures == 0, format("%d/%d round trips differ from the original", failures, cases)};
}

Outcome fm_monotonicity() {
  Rng rng = make_rng({1004});
  testing::FuzzShape shape;
  shape.max_vertices = 30;
  shape.max_edges = 60;
  shape.max_vertex_weight = 3;
  shape.max_edge_weight = 5;
  int pairs = 0;
  int increased = 0;
  int improvable = 0;
  while (pairs < 500) {
    const Hypergraph hg = testing::random_hypergraph(rng, shape);
    Partition start(hg, 2, testing::random_genes(rng, hg.initial_num_vertices()));
    if (!repair(hg, start, 0.1, rng)) {
      continue;
    }
    ++pairs;
    const Partition out = fm_refine(hg, start, FmConfig{0.1, 8, static_cast<std::uint64_t>(pairs)});
    const std::vector<BlockID> genes = genes_of(out);
    increased += testing::naive_cut(hg, genes) > cut_size(hg, start) ||
                         !testing::naive_feasible(hg, genes, 0.1)
                     ? 1
                     : 0;
    improvable += has_improving_move(hg, genes, 0.1) ? 1 : 0;
  }
  return {increased == 0 && improvable == 0,
          format("%d pairs: %d cut increases or infeasible outputs, %d with an improving move",
                 pairs, increased, improvable)};
}

Outcome metric_identity() {
  Rng rng = make_rng({1005});
  testing::FuzzShape shape;
  shape.max_vertices = 40;
  shape.max_edges = 80;
  shape.max_cardinality = 10;
  shape.max_edge_weight = 9;
  shape.allow_single_pin = true;
  int differences = 0;
  const int pairs = 500;
  for (int i = 0; i < pairs; ++i) {
    const Hypergraph hg = testing::random_hypergraph(rng, shape);
    const Partition part(hg, 2, testing::random_genes(rng, hg.initial_num_vertices()));
    differences += km1(hg, part) != cut_size(hg, part) ? 1 : 0;
  }
  return {differences == 0, format("%d/%d pairs with km1 != cut", differences, pairs)};
}

Outcome adaptive_stop_calibration() {
  const auto start = Clock::now();
  const std::size_t knee = 100;
  std::vector<std::size_t> curve;
  for (std::size_t i = 0; i < knee; ++i) {
    curve.push_back(1000000 - 1000 * i);
  }
  double pins = static_cast<double>(curve.back());
  while (pins >= 1.0) {
    pins *= 0.7;
    curve.push_back(static_cast<std::size_t>(pins));
  }
  const auto stop_index = [&]() -> long {
    CoarseningMonitor monitor(1, 10, 0.99);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      if (monitor.step(curve[i]) == MonitorDecision::kStop) {
        return static_cast<long>(i);
      }
    }
    return -1;
  };
  const long first = stop_index();
  const long second = stop_index();
  const double elapsed = seconds_since(start);
  const long k = static_cast<long>(knee);
  return {first >= k && first < k + 10 && first == second && elapsed < 1.0,
          format("stopped at sample %ld, knee at %ld (window 10 after), repeat %ld, %.4f s", first,
                 k, second, elapsed)};
}

Outcome planted_recovery() {
  const auto start = Clock::now();
  SyntheticSpec spec;
  spec.vertices = 1000;
  spec.intra_edges = 2000;
  spec.cross_edges = 10;
  spec.epsilon = 0.1;
  spec.seed = 7;
  const SyntheticInstance instance = gen_synthetic(spec);
  int recovered = 0;
  const int runs = 20;
  for (int i = 0; i < runs; ++i) {
    DriverConfig cfg;
    cfg.algorithm = InitialAlgorithm::kEa;
    cfg.coarsening.adaptive = true;
    cfg.coarsening.t = 50;
    cfg.ea.mu = 20;
    cfg.ea.lambda = 40;
    cfg.ea.seed_multiplier = 5;
    cfg.budget = 2000;
    cfg.seed = static_cast<std::uint64_t>(i);
    const PartitionResult result = partition(instance.hypergraph, cfg);
    recovered += result.report.final_cut <= instance.planted_cut ? 1 : 0;
  }
  const double elapsed = seconds_since(start);
  return {instance.planted_cut == 10 && recovered >= 16 && elapsed < 300.0,
          format("%d/%d runs with final cut <= planted cut %lld (need >= 80%%), %.1f s (< 300 s)",
                 recovered, runs, static_cast<long long>(instance.planted_cut), elapsed)};
}

double permutation_rank_sum_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t total = pooled.size();
  std::vector<double> rank(total);
  for (std::size_t i = 0; i < total; ++i) {
    double less = 0;
    double equal = 0;
    for (const double v : pooled) {
      less += v < pooled[i] ? 1 : 0;
      equal += v == pooled[i] ? 1 : 0;
    }
    rank[i] = less + (equal + 1) / 2;
  }
  double observed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    observed += rank[i];
  }
  const double expected = static_cast<double>(a.size() * (total + 1)) / 2.0;
  double extreme = 0;
  double all = 0;
  for (std::uint32_t mask = 0; mask < (1U << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != a.size()) {
      continue;
    }
    double sum = 0;
    for (std::size_t i = 0; i < total; ++i) {
      sum += (mask >> i) & 1U ? rank[i] : 0;
    }
    all += 1;
    extreme += std::abs(sum - expected) >= std::abs(observed - expected) - 1e-9 ? 1 : 0;
  }
  return extreme / all;
}

Outcome statistics_oracles() {
  Rng rng = make_rng({1006});
  std::uniform_real_distribution<double> coefficient(-3.0, 3.0);
  double worst_simpson = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double c[4] = {coefficient(rng), coefficient(rng), coefficient(rng), coefficient(rng)};
    // Unit-scale domains keep rounding below the absolute bound.
    const std::size_t intervals = 1 + random_index<std::size_t>(rng, 30);
    const double x0 = -0.5 * static_cast<double>(random_index(rng, 3));
    const double h = intervals <= 15 ? 0.125 : 0.0625;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t j = 0; j <= intervals; ++j) {
      const double x = x0 + static_cast<double>(j) * h;
      xs.push_back(x);
      ys.push_back(c[0] + x * (c[1] + x * (c[2] + x * c[3])));
    }
    const auto f = [&](double x) {
      return x * (c[0] + x * (c[1] / 2 + x * (c[2] / 3 + x * c[3] / 4)));
    };
    if (intervals == 1) {
      continue;  // a lone interval is integrated by the trapezoid rule
    }
    worst_simpson = std::max(worst_simpson, std::abs(simpson_auc(xs, ys) - (f(xs.back()) - f(x0))));
  }

  int checked = 0;
  int mismatched = 0;
  for (std::size_t n = 1; n <= 9; ++n) {
    for (std::size_t m = 1; n + m <= 10; ++m) {
      for (int rep = 0; rep < 20; ++rep) {
        const int levels = rep % 3 == 0 ? 3 : 1000;
        std::vector<double> a(n);
        std::vector<double> b(m);
        for (double& v : a) {
          v = static_cast<double>(random_index(rng, levels));
        }
        for (double& v : b) {
          v = static_cast<double>(random_index(rng, levels));
        }
        const WilcoxonResult result = wilcoxon(a, b, WilcoxonMode::kRankSum);
        ++checked;
        mismatched += result.exact && result.p_value == permutation_rank_sum_p(a, b) ? 0 : 1;
      }
    }
  }
  return {worst_simpson <= 1e-12 && mismatched == 0,
          format("simpson max error %.3g on cubics (<= 1e-12); %d/%d exact p-values differ from "
                 "the permutation oracle",
                 worst_simpson, mismatched, checked)};
}

Outcome ea_bookkeeping() {
  Rng fuzz = make_rng({1007});
  testing::FuzzShape shape;
  shape.min_vertices = 30;
  shape.max_vertices = 60;
  shape.max_edges = 120;
  std::vector<std::string> problems;
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok && std::find(problems.begin(), problems.end(), what) == problems.end()) {
      problems.push_back(what);
    }
  };

  // mu = 100 and s = 100 give 10000 pool evaluations before the first generation.
  {
    const Hypergraph hg = testing::random_hypergraph(fuzz, shape);
    EaConfig cfg;
    cfg.mu = 100;
    cfg.lambda = 100;
    cfg.seed_multiplier = 100;
    PoolConfig pool;
    pool.repetitions = 20;
    const EaResult run = ea_run(hg, cfg, pool, 10100);
    check(cfg.seeding_evaluations() == 10000, "seeding count");
    check(run.seeding_evaluations == 10000, "seeding consumption");
    check(run.evaluations == 10100 && run.log.size() == 10100, "evaluation count");
    check(run.generations == 1, "generation count");
  }

  for (int i = 0; i < 10; ++i) {
    const Hypergraph hg = testing::random_hypergraph(fuzz, shape);
    EaConfig cfg;
    cfg.mu = 5 + static_cast<std::size_t>(i);
    cfg.lambda = 7 + 2 * static_cast<std::size_t>(i);
    cfg.seed_multiplier = static_cast<std::size_t>(i % 3);
    cfg.seed = static_cast<std::uint64_t>(i);
    const std::size_t budget = 150 + 13 * static_cast<std::size_t>(i);
    const EaResult run = ea_run(hg, cfg, PoolConfig{}, budget);
    const std::size_t seeding = cfg.seed_multiplier == 0 ? cfg.mu : cfg.seeding_evaluations();
    check(run.evaluations == budget && run.log.size() == budget, "evaluation count");
    check(run.seeding_evaluations == seeding, "seeding consumption");
    const std::vector<double> ladder = mutation_ladder(hg.initial_num_vertices());
    Weight best = run.log.records().front().cut;
    for (const EvaluationRecord& record : run.log.records()) {
      best = std::min(best, record.cut);
      check(record.best_so_far == best, "monotone best-so-far");
      const bool unseeded_member = cfg.seed_multiplier == 0 && record.source == "random";
      if (record.source == "ea" || unseeded_member) {
        check(std::find(ladder.begin(), ladder.end(), record.mutation_rate) != ladder.end(),
              "ladder membership");
      }
    }
    check(run.best.fitness == best, "reported best");
    for (std::size_t g = 1; g < run.generation_best.size(); ++g) {
      check(run.generation_best[g] <= run.generation_best[g - 1], "elitist generations");
    }
  }
  std::string detail = "evaluation counts, ladder rates, elitism, 10000-evaluation seeding";
  if (!problems.empty()) {
    detail = "violated:";
    for (const std::string& p : problems) {
      detail += " " + p + ";";
    }
  }
  return {problems.empty(), detail};
}

Outcome fdc_correctness() {
  Rng rng = make_rng({1008});
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double worst_slope = 0.0;
  double worst_r2 = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double c = 0.05 + 20.0 * uniform(rng);
    std::vector<double> x(2 + random_index<std::size_t>(rng, 200));
    std::vector<double> y;
    for (double& v : x) {
      v = uniform(rng);
      y.push_back(c * v);
    }
    const FdcModel model = fdc_fit(x, y);
    worst_slope = std::max(worst_slope, std::abs(model.slope - c));
    worst_r2 = std::max(worst_r2, std::abs(model.r_squared - 1.0));
  }
  int asymmetric = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + random_index<std::size_t>(rng, 64);
    const auto l = testing::random_genes(rng, n);
    const auto g = testing::random_genes(rng, n);
    std::vector<BlockID> inverted = l;
    for (BlockID& b : inverted) {
      b = 1 - b;
    }
    asymmetric += scaled_distance(l, g) == scaled_distance(inverted, g) ? 0 : 1;
  }
  return {worst_slope <= 1e-12 && worst_r2 <= 1e-12 && asymmetric == 0,
          format("max |m - c| %.3g, max |r2 - 1| %.3g (<= 1e-12); %d/1000 asymmetric distances",
                 worst_slope, worst_r2, asymmetric)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"brute-force optimality", brute_force_optimality},
      {"projection invariance", projection_invariance},
      {"uncontract inverse", uncontract_inverse},
      {"fm monotonicity and local optimality", fm_monotonicity},
      {"k=2 metric identity", metric_identity},
      {"adaptive stop calibration", adaptive_stop_calibration},
      {"planted recovery", planted_recovery},
      {"statistics oracles", statistics_oracles},
      {"ea bookkeeping", ea_bookkeeping},
      {"fdc correctness", fdc_correctness},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failed += outcome.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
