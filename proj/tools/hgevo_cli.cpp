#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csv_table.hpp"
#include "hgevo/hgevo.hpp"

namespace {

using namespace hgevo;

// Writes to the named file, or to stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct SharedOptions {
  double epsilon = 0.1;
  VertexID threshold = 150;
  VertexID t_max = 15000;
  std::size_t t_s = 50;
  std::size_t t_n = 100;
  double t_r = 0.99;
  bool adaptive = false;
  std::size_t budget = 30000;
  std::size_t mu = 100;
  std::size_t lambda = 1000;
  std::size_t s = 100;
  double crossover = 0.8;
  double adapt = 0.1;
  std::size_t pool_reps = 20;
  int fm_passes = 8;
  std::size_t batch = 32;
  std::uint64_t seed = 0;
};

void add_coarsening_options(CLI::App* cmd, SharedOptions& o) {
  cmd->add_option("-t,--threshold", o.threshold, "coarsening threshold t (stop at t*k vertices)");
  cmd->add_option("--t-max", o.t_max, "adaptive monitoring starts below t_max*k vertices");
  cmd->add_option("--t-s", o.t_s, "contractions between pin-count samples");
  cmd->add_option("--t-n", o.t_n, "samples in the regression window");
  cmd->add_option("--t-r", o.t_r, "r^2 below which coarsening stops");
  cmd->add_flag("--adaptive,!--no-adaptive", o.adaptive, "enable the adaptive stop");
}

void add_driver_options(CLI::App* cmd, SharedOptions& o) {
  cmd->add_option("-e,--epsilon", o.epsilon, "allowed imbalance");
  add_coarsening_options(cmd, o);
  cmd->add_option("--evals", o.budget, "initial partitioning evaluation budget");
  cmd->add_option("--mu", o.mu, "EA population size");
  cmd->add_option("--lambda", o.lambda, "EA offspring per generation");
  cmd->add_option("-s,--seeding", o.s, "EA seeding multiplier (0: random seeding)");
  cmd->add_option("--crossover", o.crossover, "EA crossover probability");
  cmd->add_option("--adapt", o.adapt, "EA mutation-rate adaptation probability");
  cmd->add_option("--pool-reps", o.pool_reps, "consecutive runs per pool member");
  cmd->add_option("--fm-passes", o.fm_passes, "maximum FM passes per refinement");
  cmd->add_option("--batch", o.batch, "uncontractions between refinements (1: every one)");
  cmd->add_option("--seed", o.seed, "random seed");
}

CoarseningConfig coarsening_config(const SharedOptions& o) {
  CoarseningConfig cfg;
  cfg.t = o.threshold;
  cfg.t_max = std::max(o.t_max, o.threshold);
  cfg.t_s = o.t_s;
  cfg.t_n = o.t_n;
  cfg.t_r = o.t_r;
  cfg.adaptive = o.adaptive;
  return cfg;
}

DriverConfig driver_config(const SharedOptions& o) {
  DriverConfig cfg;
  cfg.partition.epsilon = o.epsilon;
  cfg.coarsening = coarsening_config(o);
  cfg.budget = o.budget;
  cfg.ea.mu = o.mu;
  cfg.ea.lambda = o.lambda;
  cfg.ea.seed_multiplier = o.s;
  cfg.ea.crossover_prob = o.crossover;
  cfg.ea.adapt_prob = o.adapt;
  cfg.pool.repetitions = o.pool_reps;
  cfg.fm_max_passes = o.fm_passes;
  cfg.refine_batch = o.batch;
  cfg.seed = o.seed;
  return cfg;
}

int run_partition(const std::string& input, BlockID k, const std::string& ip,
                  const std::string& output, const std::string& log_path,
                  const SharedOptions& o) {
  const Hypergraph hg = io::read_hmetis_file(input);
  DriverConfig cfg = driver_config(o);
  cfg.partition.k = k;
  cfg.algorithm = parse_initial_algorithm(ip);
  const PartitionResult result = partition(hg, cfg);
  if (!output.empty()) {
    Output out(output);
    io::write_partition(out.stream(), result.partition);
  }
  if (!log_path.empty()) {
    Output out(log_path);
    result.report.log.write_csv(out.stream());
  }
  result.report.write_key_values(std::cout);
  return 0;
}

int run_sweep(const std::string& input, const std::string& grid, std::size_t reps,
              const std::vector<std::string>& algorithms, const std::string& output,
              const std::string& summary, std::size_t workers, const SharedOptions& o) {
  const Hypergraph hg = io::read_hmetis_file(input);
  SweepSpec spec;
  spec.thresholds = parse_threshold_grid(grid);
  spec.repetitions = reps;
  spec.algorithms.clear();
  for (const std::string& name : algorithms) {
    spec.algorithms.push_back(parse_initial_algorithm(name));
  }
  spec.base = driver_config(o);
  spec.seed = o.seed;
  spec.workers = workers;
  const SweepResult result = sweep(hg, spec);
  {
    Output out(output);
    write_sweep_rows(out.stream(), result.rows);
  }
  if (!summary.empty()) {
    Output out(summary);
    write_sweep_summary(out.stream(), result);
  }
  return 0;
}

int run_landscape(const std::string& input, std::size_t samples, const std::string& output,
                  const SharedOptions& o) {
  const Hypergraph hg = io::read_hmetis_file(input);
  LandscapeConfig cfg;
  cfg.coarsening = coarsening_config(o);
  cfg.epsilon = o.epsilon;
  cfg.samples = samples;
  cfg.fm_max_passes = o.fm_passes;
  cfg.seed = o.seed;
  const LandscapeSample sample = sample_local_optima(hg, cfg);
  const std::vector<double> distances = distances_to_quasi_global(sample);
  {
    Output out(output);
    export_landscape(out.stream(), sample.records, distances);
  }
  std::cerr << "coarse_vertices=" << sample.coarse.hypergraph.initial_num_vertices() << '\n'
            << "best_cut=" << sample.best_cut << '\n'
            << "quasi_global=" << sample.quasi_global.size() << '\n';
  bool any_distance = false;
  for (const double d : distances) {
    any_distance = any_distance || d > 0.0;
  }
  if (distances.size() >= 2 && any_distance) {
    const FdcModel fit = fdc_fit(sample.records, distances);
    std::cerr << "fdc_slope=" << fit.slope << '\n'
              << "fdc_r_squared=" << fit.r_squared << '\n'
              << "intercept_fit_slope=" << fit.intercept_fit_slope << '\n'
              << "intercept_fit_intercept=" << fit.intercept_fit_intercept << '\n'
              << "intercept_fit_r_squared=" << fit.intercept_fit_r_squared << '\n';
  }
  return 0;
}

std::vector<double> numeric_column(const std::vector<std::vector<std::string>>& rows,
                                   std::size_t index) {
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& row : rows) {
    values.push_back(tools::to_double(row[index]));
  }
  return values;
}

// Mean of y per distinct x, x ascending.
int run_stats_auc(const std::string& input, const std::string& x, const std::string& y,
                  const std::vector<std::string>& filters) {
  std::ifstream in(input);
  if (!in) {
    throw std::runtime_error("cannot open '" + input + "'");
  }
  const tools::CsvTable table = tools::read_csv(in);
  const auto rows = tools::filter_rows(table, filters);
  const std::size_t xi = table.column(x);
  const std::size_t yi = table.column(y);
  std::map<double, std::pair<double, std::size_t>> grouped;
  for (const auto& row : rows) {
    auto& [sum, count] = grouped[tools::to_double(row[xi])];
    sum += tools::to_double(row[yi]);
    ++count;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [key, acc] : grouped) {
    xs.push_back(key);
    ys.push_back(acc.first / static_cast<double>(acc.second));
  }
  std::cout << "x,y,points,auc\n"
            << x << ',' << y << ',' << xs.size() << ',' << simpson_auc(xs, ys) << '\n';
  return 0;
}

int run_stats_wilcoxon(const std::string& input, const std::string& value,
                       const std::string& group, const std::string& a, const std::string& b,
                       const std::string& mode, const std::vector<std::string>& filters) {
  std::ifstream in(input);
  if (!in) {
    throw std::runtime_error("cannot open '" + input + "'");
  }
  const tools::CsvTable table = tools::read_csv(in);
  auto first_filters = filters;
  first_filters.push_back(group + "=" + a);
  auto second_filters = filters;
  second_filters.push_back(group + "=" + b);
  const std::size_t vi = table.column(value);
  const auto first = numeric_column(tools::filter_rows(table, first_filters), vi);
  const auto second = numeric_column(tools::filter_rows(table, second_filters), vi);
  const WilcoxonResult result = wilcoxon(first, second, parse_wilcoxon_mode(mode));
  std::cout << "mode,n_a,n_b,statistic,p_value,exact\n"
            << mode << ',' << first.size() << ',' << second.size() << ',' << result.statistic
            << ',' << result.p_value << ',' << (result.exact ? 1 : 0) << '\n';
  return 0;
}

int run_gen(const SyntheticSpec& spec, const std::string& output, const std::string& planted) {
  const SyntheticInstance instance = gen_synthetic(spec);
  {
    Output out(output);
    io::write_hmetis(out.stream(), instance.hypergraph);
  }
  if (!planted.empty()) {
    Output out(planted);
    io::write_partition(out.stream(), instance.planted);
  }
  std::cerr << "planted_cut=" << instance.planted_cut << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel hypergraph bipartitioning with a memetic initial partitioner"};
  app.require_subcommand(1);
  SharedOptions o;

  std::string input;
  std::string output;
  std::string log_path;
  std::string ip = "ea";
  BlockID k = 2;
  auto* partition_cmd = app.add_subcommand("partition", "partition an hMetis hypergraph");
  partition_cmd->add_option("-i,--input", input, "hMetis input file")->required();
  partition_cmd->add_option("-k", k, "number of blocks (only 2 is supported)");
  partition_cmd->add_option("--ip", ip, "initial partitioner: pool or ea");
  partition_cmd->add_option("-o,--output", output, "partition output file");
  partition_cmd->add_option("--log", log_path, "evaluation log CSV");
  add_driver_options(partition_cmd, o);

  std::string grid = "250:250:5000,10000:5000:30000";
  std::size_t reps = 20;
  std::vector<std::string> algorithms = {"pool", "ea"};
  std::string summary;
  std::size_t workers = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a coarsening-threshold sweep");
  sweep_cmd->add_option("-i,--input", input, "hMetis input file")->required();
  sweep_cmd->add_option("--thresholds", grid, "grid such as 250:250:5000,10000:5000:30000");
  sweep_cmd->add_option("--reps", reps, "repetitions per cell");
  sweep_cmd->add_option("--algorithms", algorithms, "algorithms to compare")->delimiter(',');
  sweep_cmd->add_option("-o,--output", output, "per-run table (CSV)");
  sweep_cmd->add_option("--summary", summary, "AUC and rank-sum summary (CSV)");
  sweep_cmd->add_option("--workers", workers, "concurrent runs");
  add_driver_options(sweep_cmd, o);

  std::size_t samples = 10000;
  auto* landscape_cmd = app.add_subcommand("landscape", "sample FM local optima of the coarse hypergraph");
  landscape_cmd->add_option("-i,--input", input, "hMetis input file")->required();
  landscape_cmd->add_option("-n,--samples", samples, "random starting points");
  landscape_cmd->add_option("-o,--output", output, "landscape table (CSV)");
  landscape_cmd->add_option("-e,--epsilon", o.epsilon, "allowed imbalance");
  landscape_cmd->add_option("--fm-passes", o.fm_passes, "maximum FM passes");
  landscape_cmd->add_option("--seed", o.seed, "random seed");
  add_coarsening_options(landscape_cmd, o);

  std::string x = "threshold";
  std::string y = "final_cut";
  std::vector<std::string> filters;
  auto* stats_cmd = app.add_subcommand("stats", "statistics over a CSV table");
  stats_cmd->require_subcommand(1);
  auto* auc_cmd = stats_cmd->add_subcommand("auc", "Simpson AUC of mean y over x");
  auc_cmd->add_option("-i,--input", input, "CSV table")->required();
  auc_cmd->add_option("-x", x, "abscissa column");
  auc_cmd->add_option("-y", y, "value column");
  auc_cmd->add_option("--where", filters, "column=value filter (repeatable)");

  std::string value = "final_cut";
  std::string group = "algorithm";
  std::string first = "pool";
  std::string second = "ea";
  std::string mode = "rank-sum";
  auto* wilcoxon_cmd = stats_cmd->add_subcommand("wilcoxon", "Wilcoxon test between two groups");
  wilcoxon_cmd->add_option("-i,--input", input, "CSV table")->required();
  wilcoxon_cmd->add_option("--value", value, "value column");
  wilcoxon_cmd->add_option("--group", group, "grouping column");
  wilcoxon_cmd->add_option("-a", first, "first group");
  wilcoxon_cmd->add_option("-b", second, "second group");
  wilcoxon_cmd->add_option("--mode", mode, "rank-sum or signed-rank");
  wilcoxon_cmd->add_option("--where", filters, "column=value filter (repeatable)");

  SyntheticSpec spec;
  std::string planted;
  auto* gen_cmd = app.add_subcommand("gen", "generate a planted-bipartition hypergraph");
  gen_cmd->add_option("-n,--vertices", spec.vertices, "vertex count");
  gen_cmd->add_option("--block0", spec.block0_size, "size of the first planted block (0: half)");
  gen_cmd->add_option("--intra", spec.intra_edges, "intra-block edges");
  gen_cmd->add_option("--cross", spec.cross_edges, "cross-block edges");
  gen_cmd->add_option("--min-card", spec.min_cardinality, "minimum edge cardinality");
  gen_cmd->add_option("--max-card", spec.max_cardinality, "maximum edge cardinality");
  gen_cmd->add_option("--weight", spec.edge_weight, "edge weight");
  gen_cmd->add_option("-e,--epsilon", spec.epsilon, "imbalance the planted split must satisfy");
  gen_cmd->add_option("--seed", spec.seed, "random seed");
  gen_cmd->add_option("-o,--output", output, "hMetis output file");
  gen_cmd->add_option("--planted", planted, "planted partition output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*partition_cmd) {
      return run_partition(input, k, ip, output, log_path, o);
    }
    if (*sweep_cmd) {
      return run_sweep(input, grid, reps, algorithms, output, summary, workers, o);
    }
    if (*landscape_cmd) {
      return run_landscape(input, samples, output, o);
    }
    if (*auc_cmd) {
      return run_stats_auc(input, x, y, filters);
    }
    if (*wilcoxon_cmd) {
      return run_stats_wilcoxon(input, value, group, first, second, mode, filters);
    }
    if (*gen_cmd) {
      return run_gen(spec, output, planted);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
