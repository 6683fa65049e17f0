#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hgevo/definitions.hpp"
#include "hgevo/hypergraph.hpp"
#include "hgevo/partition.hpp"

namespace hgevo {

// A candidate bipartition together with its evaluated quality.
struct Individual {
  Partition partition;
  double mutation_rate = 0.0;
  Weight fitness = 0;  // cut size
  double imbalance = 0.0;
  bool feasible = true;

  std::span<const BlockID> genes() const { return partition.blocks(); }

  void evaluate(const Hypergraph& hg, double epsilon) {
    fitness = cut_size(hg, partition);
    imbalance = hgevo::imbalance(hg, partition);
    feasible = is_feasible(hg, partition, epsilon);
  }
};

// Feasible before infeasible, then smaller cut, then smaller imbalance.
inline bool fitter(const Individual& a, const Individual& b) {
  if (a.feasible != b.feasible) {
    return a.feasible;
  }
  if (a.fitness != b.fitness) {
    return a.fitness < b.fitness;
  }
  return a.imbalance < b.imbalance;
}

struct EvaluationRecord {
  std::size_t index = 0;  // 1-based
  std::string source;
  Weight cut = 0;
  double imbalance = 0.0;
  double mutation_rate = std::numeric_limits<double>::quiet_NaN();
  Weight best_so_far = 0;
};

class EvaluationLog {
 public:
  const EvaluationRecord& add(std::string source, const Individual& ind, Weight best_so_far,
                              double mutation_rate = std::numeric_limits<double>::quiet_NaN()) {
    records_.push_back({records_.size() + 1, std::move(source), ind.fitness, ind.imbalance,
                        mutation_rate, best_so_far});
    return records_.back();
  }

  void append(const EvaluationLog& other) {
    for (EvaluationRecord record : other.records_) {
      record.index = records_.size() + 1;
      records_.push_back(std::move(record));
    }
  }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::vector<EvaluationRecord>& records() const { return records_; }

  void write_csv(std::ostream& out) const {
    out << "evaluation,source,cut,imbalance,mutation_rate,best_so_far\n";
    for (const auto& r : records_) {
      out << r.index << ',' << r.source << ',' << r.cut << ',' << r.imbalance << ',';
      if (!std::isnan(r.mutation_rate)) {
        out << r.mutation_rate;
      }
      out << ',' << r.best_so_far << '\n';
    }
  }

 private:
  std::vector<EvaluationRecord> records_;
};

}  // namespace hgevo
