// labelrank: command-line front end for the LabelRank library.
//
//   labelrank detect    <edge-list> [options]    communities of one graph
//   labelrank sweep     <edge-list> [options]    grid over inflation x q
//   labelrank bench     [edge-lists] [options]   runtime vs. edge count
//   labelrank stability <edge-list> [options]    run-to-run variation
//
// Exit codes: 0 success, 1 usage or parse error, 2 runtime failure.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "labelrank/generators.hpp"
#include "labelrank/graph.hpp"
#include "labelrank/ground_truth.hpp"
#include "labelrank/labelrank.hpp"
#include "labelrank/lpa.hpp"
#include "labelrank/metrics.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace labelrank;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr std::size_t kLpaDefaultMaxIterations = 100;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(v);
}

struct Options {
  std::string input;
  std::vector<std::string> inputs;
  std::string algorithm = "labelrank";
  std::vector<double> inflation{2.0};
  std::vector<double> q{0.5};
  std::vector<double> grid_inflation{1.0, 1.5, 2.0};
  std::vector<double> grid_q{0.5, 0.6};
  double cutoff = 0.1;
  std::size_t stop_frequency = 5;
  std::optional<std::size_t> max_iterations;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string format = "tsv";
  bool trace = false;
  bool timing = false;
  std::string truth;
  std::string output;
  std::vector<std::size_t> synthetic;
  std::size_t repetitions = 3;
};

Params params_for(const Options& o, double inflation, double q) {
  Params p;
  p.inflation = inflation;
  p.update_fraction = q;
  p.cutoff = o.cutoff;
  p.stop_frequency = o.stop_frequency;
  if (o.max_iterations) p.max_iterations = *o.max_iterations;
  p.validate();
  return p;
}

Params single_params(const Options& o) {
  if (o.inflation.size() != 1 || o.q.size() != 1) {
    throw usage_error("--inflation and --q take a single value outside sweep");
  }
  return params_for(o, o.inflation.front(), o.q.front());
}

RunOptions run_options(bool trace) {
  RunOptions r;
  r.threads = threads_from_env();
  r.trace_modularity = trace;
  return r;
}

/// Writes to --output when given, stdout otherwise.
void emit(const Options& o, const std::string& body) {
  if (o.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw error("cannot write '" + o.output + "'");
  out << body;
}

std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

json params_json(const Params& p) {
  return json{{"inflation", p.inflation},
              {"cutoff", p.cutoff},
              {"q", p.update_fraction},
              {"stop_frequency", p.stop_frequency},
              {"max_iterations", p.max_iterations}};
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

std::optional<double> quality(const Graph& g, const Partition& p) {
  if (g.edge_count() == 0) {
    std::cerr << "labelrank: warning: graph has no edges, modularity undefined\n";
    return std::nullopt;
  }
  return modularity(g, p);
}

int cmd_detect(const Options& o) {
  if (o.format != "tsv" && o.format != "json") throw usage_error("unknown format " + o.format);
  const Graph g = load_edge_list_file(o.input);
  std::optional<Partition> truth;
  if (!o.truth.empty()) truth = load_ground_truth_file(o.truth, g);

  const auto start = std::chrono::steady_clock::now();
  Partition partition;
  json summary;
  summary["algorithm"] = o.algorithm;
  summary["nodes"] = g.node_count();
  summary["edges"] = g.edge_count();
  std::optional<LabelRankResult> lr;
  if (o.algorithm == "labelrank") {
    const Params params = single_params(o);
    lr = run_labelrank(g, params, run_options(o.trace));
    partition = lr->partition;
    summary["params"] = params_json(params);
    summary["iterations"] = lr->iterations;
    summary["converged"] = lr->converged;
  } else if (o.algorithm == "lpa") {
    if (o.trace) throw usage_error("--trace is only available for labelrank");
    auto r = run_lpa(g, o.seed, o.max_iterations.value_or(kLpaDefaultMaxIterations));
    partition = r.partition;
    summary["seed"] = o.seed;
    summary["iterations"] = r.iterations;
    summary["converged"] = r.converged;
  } else {
    throw usage_error("unknown algorithm " + o.algorithm);
  }
  const double wall = elapsed_ms(start);

  summary["communities"] = partition.community_count();
  if (auto q = quality(g, partition)) summary["modularity"] = *q;
  if (truth) {
    auto cmp = compare_partitions(partition, *truth);
    summary["truth_communities"] = truth->community_count();
    summary["identical_to_truth"] = cmp.identical;
    summary["agreement"] = cmp.agreement;
  }
  if (o.timing) summary["wall_time_ms"] = wall;

  const auto ids = partition.dense_ids();
  std::ostringstream body;
  if (o.format == "json") {
    json doc;
    doc["summary"] = summary;
    json assignment = json::array();
    for (node_id i = 0; i < g.node_count(); ++i) {
      assignment.push_back({{"node", g.name(i)}, {"community", ids[i]}});
    }
    doc["assignment"] = std::move(assignment);
    if (lr && o.trace) {
      json rows = json::array();
      for (const auto& r : lr->trace.rows) {
        json row{{"iteration", r.iteration},
                 {"num_change", r.num_change},
                 {"average_labels", r.average_labels}};
        if (r.modularity) row["modularity"] = *r.modularity;
        rows.push_back(std::move(row));
      }
      doc["trace"] = std::move(rows);
      doc["initial_average_labels"] = lr->trace.initial_average_labels;
    }
    body << render_json(doc);
  } else {
    body << "node\tcommunity\n";
    for (node_id i = 0; i < g.node_count(); ++i) body << g.name(i) << '\t' << ids[i] << '\n';
    for (const auto& [key, value] : summary.items()) {
      std::cerr << "# " << key << '\t' << (value.is_string() ? value.get<std::string>() : value.dump())
                << '\n';
    }
    if (lr && o.trace) {
      std::cerr << "iteration\tnum_change\taverage_labels\tmodularity\n";
      for (const auto& r : lr->trace.rows) {
        std::cerr << r.iteration << '\t' << r.num_change << '\t' << format_double(r.average_labels)
                  << '\t' << (r.modularity ? format_double(*r.modularity) : "") << '\n';
      }
    }
  }
  emit(o, body.str());
  return 0;
}

int cmd_sweep(const Options& o) {
  if (o.format != "tsv" && o.format != "json") throw usage_error("unknown format " + o.format);
  if (o.grid_inflation.empty() || o.grid_q.empty()) throw usage_error("sweep grid is empty");
  const Graph g = load_edge_list_file(o.input);
  std::optional<Partition> truth;
  if (!o.truth.empty()) truth = load_ground_truth_file(o.truth, g);

  json rows = json::array();
  std::optional<std::size_t> best;
  double best_q = 0.0;
  for (double in : o.grid_inflation) {
    for (double q : o.grid_q) {
      const Params params = params_for(o, in, q);
      auto r = run_labelrank(g, params, run_options(false));
      const double mod = modularity(g, r.partition);
      json row{{"inflation", in},
               {"q", q},
               {"modularity", mod},
               {"communities", r.partition.community_count()},
               {"iterations", r.iterations},
               {"converged", r.converged}};
      if (truth) row["agreement"] = compare_partitions(r.partition, *truth).agreement;
      if (!best || mod > best_q) {
        best = rows.size();
        best_q = mod;
      }
      rows.push_back(std::move(row));
    }
  }

  std::ostringstream body;
  if (o.format == "json") {
    json doc{{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"rows", rows}};
    doc["best"] = rows[*best];
    body << render_json(doc);
  } else {
    auto line = [&](const json& row) {
      std::string out = format_double(row["inflation"].get<double>()) + '\t' +
                        format_double(row["q"].get<double>()) + '\t' +
                        format_double(row["modularity"].get<double>()) + '\t' +
                        row["communities"].dump() + '\t' + row["iterations"].dump() + '\t' +
                        row["converged"].dump();
      if (truth) out += '\t' + format_double(row["agreement"].get<double>());
      return out;
    };
    body << "inflation\tq\tmodularity\tcommunities\titerations\tconverged"
         << (truth ? "\tagreement" : "") << '\n';
    for (const auto& row : rows) body << line(row) << '\n';
    body << "# best\t" << line(rows[*best]) << '\n';
  }
  emit(o, body.str());
  return 0;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LinearFit f;
  const double var_x = n * sxx - sx * sx;
  if (var_x == 0.0) return f;
  f.slope = (n * sxy - sx * sy) / var_x;
  f.intercept = (sy - f.slope * sx) / n;
  const double var_y = n * syy - sy * sy;
  const double cov = n * sxy - sx * sy;
  f.r2 = var_y == 0.0 ? 1.0 : std::min(1.0, (cov * cov) / (var_x * var_y));
  return f;
}

int cmd_bench(const Options& o) {
  if (o.format != "tsv" && o.format != "json") throw usage_error("unknown format " + o.format);
  if (o.repetitions == 0) throw usage_error("--repetitions must be positive");
  if (o.inputs.empty() && o.synthetic.empty()) throw usage_error("bench needs inputs or --synthetic");
  const Params params = single_params(o);

  struct Case {
    std::string name;
    Graph graph;
  };
  std::vector<Case> cases;
  std::size_t failed = 0;
  for (const auto& path : o.inputs) {
    try {
      cases.push_back({path, load_edge_list_file(path)});
    } catch (const std::exception& e) {
      std::cerr << "labelrank: warning: skipping " << path << ": " << e.what() << '\n';
      ++failed;
    }
  }
  for (std::size_t m : o.synthetic) {
    constexpr std::size_t kGroup = 50;
    const std::size_t groups = std::max<std::size_t>(2, m / 5 / kGroup);
    cases.push_back({"synthetic-m" + std::to_string(m),
                     planted_partition(groups, kGroup, m, 0.8, m)});
  }
  if (cases.empty()) {
    std::cerr << "labelrank: no readable inputs (" << failed << " failed)\n";
    return kExitRuntime;
  }

  json rows = json::array();
  std::vector<double> xs, ys;
  for (const auto& c : cases) {
    double total = 0.0;
    std::size_t iterations = 0;
    for (std::size_t rep = 0; rep < o.repetitions; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      auto r = run_labelrank(c.graph, params, run_options(false));
      total += elapsed_ms(start);
      iterations = r.iterations;
    }
    const double mean = total / static_cast<double>(o.repetitions);
    xs.push_back(static_cast<double>(c.graph.edge_count()));
    ys.push_back(mean);
    rows.push_back({{"input", c.name},
                    {"nodes", c.graph.node_count()},
                    {"edges", c.graph.edge_count()},
                    {"mean_ms", mean},
                    {"iterations", iterations}});
  }

  std::optional<LinearFit> fit;
  if (rows.size() >= 2) fit = fit_line(xs, ys);

  std::ostringstream body;
  if (o.format == "json") {
    json doc{{"repetitions", o.repetitions}, {"params", params_json(params)}, {"rows", rows}};
    if (fit) doc["fit"] = {{"slope_ms_per_edge", fit->slope}, {"intercept_ms", fit->intercept},
                           {"r2", fit->r2}};
    body << render_json(doc);
  } else {
    body << "input\tnodes\tedges\tmean_ms\titerations\n";
    for (const auto& row : rows) {
      body << row["input"].get<std::string>() << '\t' << row["nodes"].dump() << '\t'
           << row["edges"].dump() << '\t' << format_double(row["mean_ms"].get<double>()) << '\t'
           << row["iterations"].dump() << '\n';
    }
    if (fit) {
      body << "# fit\tslope_ms_per_edge=" << format_double(fit->slope)
           << "\tintercept_ms=" << format_double(fit->intercept)
           << "\tr2=" << format_double(fit->r2) << '\n';
    }
  }
  emit(o, body.str());
  return 0;
}

int cmd_stability(const Options& o) {
  if (o.format != "tsv" && o.format != "json") throw usage_error("unknown format " + o.format);
  const Graph g = load_edge_list_file(o.input);
  json doc{{"algorithm", o.algorithm}};

  if (o.algorithm == "labelrank") {
    const Params params = single_params(o);
    RunOptions serial;
    const auto first = run_labelrank(g, params, serial);
    const auto second = run_labelrank(g, params, run_options(false));
    const bool same = first.partition == second.partition && first.trace == second.trace;
    doc["runs"] = 2;
    doc["distinct_partitions"] = same ? 1 : 2;
    doc["modularity"] = modularity(g, first.partition);
    doc["communities"] = first.partition.community_count();
    if (!same) {
      std::cerr << "labelrank: repeated runs disagree\n";
      emit(o, render_json(doc));
      return kExitRuntime;
    }
  } else if (o.algorithm == "lpa") {
    if (o.seeds.size() < 2) throw usage_error("stability needs at least two --seeds");
    auto report =
        lpa_stability_report(g, o.seeds, o.max_iterations.value_or(kLpaDefaultMaxIterations));
    json runs = json::array();
    for (const auto& r : report.runs) {
      runs.push_back({{"seed", r.seed},
                      {"modularity", r.modularity},
                      {"communities", r.communities},
                      {"iterations", r.iterations},
                      {"converged", r.converged}});
    }
    doc["runs"] = std::move(runs);
    doc["distinct_partitions"] = report.distinct_partitions;
    doc["min_modularity"] = report.min_modularity;
    doc["max_modularity"] = report.max_modularity;
    doc["mean_modularity"] = report.mean_modularity;
    doc["best_seed"] = report.best_seed;
  } else {
    throw usage_error("unknown algorithm " + o.algorithm);
  }

  std::ostringstream body;
  if (o.format == "json") {
    body << render_json(doc);
  } else {
    if (doc["runs"].is_array()) {
      body << "seed\tmodularity\tcommunities\titerations\tconverged\n";
      for (const auto& r : doc["runs"]) {
        body << r["seed"].dump() << '\t' << format_double(r["modularity"].get<double>()) << '\t'
             << r["communities"].dump() << '\t' << r["iterations"].dump() << '\t'
             << r["converged"].dump() << '\n';
      }
    }
    for (const auto& [key, value] : doc.items()) {
      if (key == "runs" && value.is_array()) continue;
      body << "# " << key << '\t'
           << (value.is_string() ? value.get<std::string>()
               : value.is_number_float() ? format_double(value.get<double>())
                                         : value.dump())
           << '\n';
    }
  }
  emit(o, body.str());
  return 0;
}

void add_labelrank_flags(CLI::App* cmd, Options& o, bool grid) {
  if (grid) {
    cmd->add_option("--inflation", o.grid_inflation, "Inflation values to sweep (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--q", o.grid_q, "q values to sweep (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
  } else {
    cmd->add_option("--inflation", o.inflation, "Inflation exponent (>= 1)")
        ->expected(1)
        ->capture_default_str();
    cmd->add_option("--q", o.q, "Conditional-update fraction in [0, 1]")
        ->expected(1)
        ->capture_default_str();
  }
  cmd->add_option("--cutoff", o.cutoff, "Cutoff threshold r in [0, 1]")->capture_default_str();
  cmd->add_option("--stop-freq", o.stop_frequency, "Stop when a change count repeats this often")
      ->capture_default_str();
  cmd->add_option("--max-iters", o.max_iterations,
                  "Iteration cap (default 1000 for labelrank, 100 for lpa)");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", o.output, "Write the result here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LabelRank community detection"};
  app.require_subcommand(1);
  Options o;

  auto* detect = app.add_subcommand("detect", "Detect communities in one graph");
  detect->add_option("input", o.input, "Edge-list file")->required();
  detect->add_option("--algorithm", o.algorithm, "labelrank or lpa")
      ->check(CLI::IsMember({"labelrank", "lpa"}))
      ->capture_default_str();
  add_labelrank_flags(detect, o, false);
  detect->add_option("--seed", o.seed, "LPA random seed")->capture_default_str();
  detect->add_flag("--trace", o.trace, "Emit per-iteration change count, labels and modularity");
  detect->add_flag("--timing", o.timing, "Include wall time in the summary");
  detect->add_option("--truth", o.truth, "Ground-truth file (node community)");
  add_output_flags(detect, o);

  auto* sweep = app.add_subcommand("sweep", "Run LabelRank over an inflation x q grid");
  sweep->add_option("input", o.input, "Edge-list file")->required();
  add_labelrank_flags(sweep, o, true);
  sweep->add_option("--truth", o.truth, "Ground-truth file (node community)");
  add_output_flags(sweep, o);

  auto* bench = app.add_subcommand("bench", "Time LabelRank against graph size");
  bench->add_option("inputs", o.inputs, "Edge-list files");
  bench->add_option("--synthetic", o.synthetic,
                    "Also time generated planted-partition graphs with these edge counts")
      ->delimiter(',');
  bench->add_option("--repetitions", o.repetitions, "Runs per graph")->capture_default_str();
  add_labelrank_flags(bench, o, false);
  add_output_flags(bench, o);

  auto* stability = app.add_subcommand("stability", "Compare partitions across repeated runs");
  stability->add_option("input", o.input, "Edge-list file")->required();
  stability->add_option("--algorithm", o.algorithm, "labelrank or lpa")
      ->check(CLI::IsMember({"labelrank", "lpa"}))
      ->capture_default_str();
  stability->add_option("--seeds", o.seeds, "LPA seeds (comma separated)")->delimiter(',');
  add_labelrank_flags(stability, o, false);
  add_output_flags(stability, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*detect) return cmd_detect(o);
    if (*sweep) return cmd_sweep(o);
    if (*bench) return cmd_bench(o);
    if (*stability) return cmd_stability(o);
  } catch (const usage_error& e) {
    std::cerr << "labelrank: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "labelrank: " << e.what() << '\n';
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "labelrank: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "labelrank: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
