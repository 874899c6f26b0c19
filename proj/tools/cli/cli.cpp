// Copyright 2026 The hmcts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hmcts/hmcts.hpp"

namespace hmcts::cli {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  }
}

// Writes to `path`, or to `out` when the path is empty or "-".
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    WriteText(path, text);
  }
}

bool IsInstanceFile(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".tsp" || ext == ".txt";
}

// Reads a file, or every instance file of a directory. A manifest.csv fixes
// the order; otherwise files are taken in name order.
std::vector<Instance> LoadInstances(const std::string& where) {
  const fs::path root(where);
  if (!fs::exists(root)) throw Error(ErrorKind::kIo, "no such path '" + where + "'");
  if (!fs::is_directory(root)) return {ReadInstanceFile(root.string())};

  std::vector<fs::path> files;
  const auto manifest = root / "manifest.csv";
  if (fs::exists(manifest)) {
    std::istringstream in(ReadText(manifest));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream cells(line);
      std::string id;
      std::string file;
      std::getline(cells, id, ',');
      std::getline(cells, file, ',');
      files.push_back(root / file);
    }
  } else {
    for (const auto& e : fs::directory_iterator(root)) {
      if (e.is_regular_file() && IsInstanceFile(e.path())) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  }
  std::vector<Instance> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(ReadInstanceFile(f.string()));
  return out;
}

std::optional<std::vector<int>> FindTour(const std::string& dir, const Instance& inst) {
  if (dir.empty()) return std::nullopt;
  for (const auto& name : {inst.id() + ".tour", inst.id() + ".opt.tour"}) {
    const auto p = fs::path(dir) / name;
    if (fs::exists(p)) {
      auto order = ReadTourFile(p.string());
      ValidatePermutation(order, inst.n());
      return order;
    }
  }
  return std::nullopt;
}

std::vector<std::optional<std::vector<int>>> LoadReferences(const std::string& dir,
                                                            const std::vector<Instance>& insts) {
  std::vector<std::optional<std::vector<int>>> refs;
  refs.reserve(insts.size());
  for (const auto& inst : insts) refs.push_back(FindTour(dir, inst));
  return refs;
}

HeatmapSpec ParseHeatmapArg(const std::string& text) {
  try {
    return HeatmapSpec::Parse(text);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParameter) throw UsageError(e.what());
    throw;
  }
}

// Solver flags shared by solve and tune.
struct SolverFlags {
  std::string config_path;
  MctsParams params;
  std::optional<double> time_factor;
  std::optional<long long> max_iters;
  std::uint64_t seed = 0;
  int jobs = 1;

  void Register(CLI::App* app) {
    app->add_option("--config", config_path, "key=value solver config file");
    app->add_option("--alpha", params.alpha, "exploration coefficient");
    app->add_option("--beta", params.beta, "weight update rate");
    app->add_option("--max-depth", params.max_depth, "max reconnections per move");
    app->add_option("--max-candidate-num", params.max_candidate_num, "candidates per city");
    app->add_option("--param-h", params.param_h, "chain samples per move");
    app->add_option("--use-heatmap", params.use_heatmap, "rank candidates by heatmap (true|false)");
    app->add_option("--time-factor", time_factor, "wall budget in seconds per city");
    app->add_option("--max-iters", max_iters, "deterministic iteration cap");
    app->add_option("--seed", seed, "base seed");
    app->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
  }

  // Config file first, explicit flags on top.
  MctsParams Resolve(const CLI::App* app) const {
    MctsParams p;
    if (!config_path.empty()) p = ParseParamsConfig(ReadText(config_path));
    if (app->count("--alpha")) p.alpha = params.alpha;
    if (app->count("--beta")) p.beta = params.beta;
    if (app->count("--max-depth")) p.max_depth = params.max_depth;
    if (app->count("--max-candidate-num")) p.max_candidate_num = params.max_candidate_num;
    if (app->count("--param-h")) p.param_h = params.param_h;
    if (app->count("--use-heatmap")) p.use_heatmap = params.use_heatmap;
    if (time_factor) p.time_limit_factor = *time_factor;
    ValidateParams(p);
    return p;
  }

  Budget ResolveBudget() const {
    if (time_factor.has_value() == max_iters.has_value()) {
      throw UsageError("exactly one of --time-factor or --max-iters is required");
    }
    if (max_iters && *max_iters < 0) throw UsageError("--max-iters must be >= 0");
    return max_iters ? Budget::Iterations(*max_iters) : Budget::WallClock();
  }
};

int CmdGen(int n, int count, const std::string& dist, std::uint64_t seed,
           const std::string& out_dir, const StructuredParams& sp, const std::string& format,
           std::ostream& out) {
  const auto kind = ParseDistributionKind(dist);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create '" + out_dir + "'");
  std::ostringstream manifest;
  manifest << "id,file,n,dist,seed\n";
  for (int k = 0; k < count; ++k) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    const auto inst = GenerateStructured(n, s, kind, sp);
    const bool tsplib = format == "tsplib";
    const auto file = inst.id() + (tsplib ? ".tsp" : ".txt");
    WriteText(fs::path(out_dir) / file, tsplib ? WriteTsplib(inst) : WriteNative(inst));
    manifest << inst.id() << "," << file << "," << n << "," << dist << "," << s << "\n";
  }
  WriteText(fs::path(out_dir) / "manifest.csv", manifest.str());
  out << "wrote " << count << " instances to " << out_dir << "\n";
  return kOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heatmap-guided MCTS for the Euclidean TSP"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate random instances");
  int gen_n = 0;
  int gen_count = 1;
  std::string gen_dist = "uniform";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::string gen_format = "native";
  StructuredParams sp;
  gen->add_option("--n", gen_n, "cities per instance")->required();
  gen->add_option("--count", gen_count, "number of instances")->check(CLI::NonNegativeNumber);
  gen->add_option("--dist", gen_dist, "uniform|cluster|explosion|implosion");
  gen->add_option("--seed", gen_seed, "seed of the first instance");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--format", gen_format, "native|tsplib")
      ->check(CLI::IsMember({"native", "tsplib"}));
  gen->add_option("--clusters", sp.n_clusters, "cluster count");
  gen->add_option("--spread", sp.spread, "cluster standard deviation");
  gen->add_option("--radius", sp.radius, "explosion/implosion radius");
  gen->add_option("--center-x", sp.center.x, "explosion/implosion center x");
  gen->add_option("--center-y", sp.center.y, "explosion/implosion center y");

  // solve
  auto* solve = app.add_subcommand("solve", "run the solver on a set of instances");
  SolverFlags solve_flags;
  std::string solve_instances;
  std::string solve_heatmap;
  std::string solve_refs;
  std::string solve_out;
  std::string solve_config_id = "default";
  std::string solve_tours_out;
  solve->add_option("--instances", solve_instances, "instance file or directory")->required();
  solve->add_option("--heatmap", solve_heatmap,
                    "zero | softdist:tau[:k] | gtprior:name-or-file | file:path")
      ->required();
  solve->add_option("--refs", solve_refs, "directory of <id>.tour reference tours");
  solve->add_option("--out", solve_out, "results CSV path (default stdout)");
  solve->add_option("--config-id", solve_config_id, "label for the config column");
  solve->add_option("--tours-out", solve_tours_out, "directory for best tours");
  solve_flags.Register(solve);

  // tune
  auto* tune = app.add_subcommand("tune", "grid-search solver hyperparameters");
  SolverFlags tune_flags;
  std::string tune_instances;
  std::string tune_heatmap;
  std::string tune_refs;
  std::string tune_out = ".";
  std::optional<size_t> tune_subset;
  SearchSpace space = SearchSpace::Builtin();
  std::vector<double> sp_alpha;
  std::vector<double> sp_beta;
  std::vector<int> sp_depth;
  std::vector<int> sp_mcn;
  std::vector<int> sp_h;
  std::vector<std::string> sp_uh;
  tune->add_option("--instances", tune_instances, "tuning instance directory")->required();
  tune->add_option("--heatmap", tune_heatmap, "heatmap spec")->required();
  tune->add_option("--refs", tune_refs, "directory of reference tours");
  tune->add_option("--out-dir", tune_out, "where tuning.csv, shapley.csv, best.cfg go");
  tune->add_option("--subset", tune_subset, "evaluate a random sample of configs");
  tune->add_option("--alpha-values", sp_alpha)->delimiter(',');
  tune->add_option("--beta-values", sp_beta)->delimiter(',');
  tune->add_option("--max-depth-values", sp_depth)->delimiter(',');
  tune->add_option("--mcn-values", sp_mcn)->delimiter(',');
  tune->add_option("--param-h-values", sp_h)->delimiter(',');
  tune->add_option("--use-heatmap-values", sp_uh)->delimiter(',');
  tune_flags.Register(tune);

  // analyze-knn
  auto* knn = app.add_subcommand("analyze-knn", "neighbour-rank statistics of tours");
  std::string knn_instances;
  std::string knn_tours;
  bool knn_oracle = false;
  std::string knn_out;
  std::string knn_prior;
  knn->add_option("--instances", knn_instances, "instance file or directory")->required();
  knn->add_option("--tours", knn_tours, "directory of <id>.tour files");
  knn->add_flag("--oracle", knn_oracle, "solve instances exactly (n <= 18)");
  knn->add_option("--out", knn_out, "distribution CSV (default stdout)");
  knn->add_option("--emit-prior", knn_prior, "write the distribution as a prior file");

  // report
  auto* report = app.add_subcommand("report", "summarise result CSVs as Markdown");
  std::vector<std::string> report_in;
  std::string report_out;
  report->add_option("--in", report_in, "results CSV files")->required();
  report->add_option("--out", report_out, "Markdown path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kUsage;
  }

  try {
    if (*gen) {
      return CmdGen(gen_n, gen_count, gen_dist, gen_seed, gen_out, sp, gen_format, out);
    }

    if (*solve) {
      const auto heatmap = ParseHeatmapArg(solve_heatmap);
      const auto budget = solve_flags.ResolveBudget();
      const auto params = solve_flags.Resolve(solve);
      const auto insts = LoadInstances(solve_instances);
      const auto refs = LoadReferences(solve_refs, insts);
      BenchmarkOptions bo;
      bo.seed = solve_flags.seed;
      bo.jobs = solve_flags.jobs;
      bo.config_id = solve_config_id;
      const auto table = RunBenchmark(insts, refs, heatmap, params, budget, bo);
      Emit(solve_out, ResultsCsv(table), out);
      if (!solve_tours_out.empty()) {
        fs::create_directories(solve_tours_out);
        for (const auto& row : table.rows) {
          WriteTourFile(row.best_order,
                        (fs::path(solve_tours_out) / (row.instance_id + ".tour")).string());
        }
      }
      return kOk;
    }

    if (*tune) {
      const auto heatmap = ParseHeatmapArg(tune_heatmap);
      const auto budget = tune_flags.ResolveBudget();
      space.base = tune_flags.Resolve(tune);
      if (!sp_alpha.empty()) space.alpha = sp_alpha;
      if (!sp_beta.empty()) space.beta = sp_beta;
      if (!sp_depth.empty()) space.max_depth = sp_depth;
      if (!sp_mcn.empty()) space.max_candidate_num = sp_mcn;
      if (!sp_h.empty()) space.param_h = sp_h;
      if (!sp_uh.empty()) {
        space.use_heatmap.clear();
        for (const auto& v : sp_uh) {
          if (v != "true" && v != "false") throw UsageError("--use-heatmap-values takes true,false");
          space.use_heatmap.push_back(v == "true");
        }
      }
      const auto insts = LoadInstances(tune_instances);
      const auto refs = LoadReferences(tune_refs, insts);
      TuneOptions to;
      to.seed = tune_flags.seed;
      to.jobs = tune_flags.jobs;
      to.subset = tune_subset;
      const auto rep = Tune(insts, refs, heatmap, space, budget, to);

      fs::create_directories(tune_out);
      WriteText(fs::path(tune_out) / "tuning.csv", TuningCsv(rep));
      if (rep.full_grid) {
        WriteText(fs::path(tune_out) / "shapley.csv", ShapleyCsv(space, rep));
      } else {
        err << "warning: --subset evaluated " << rep.results.size() << " of " << space.size()
            << " configurations; Shapley attribution needs the full grid and was skipped\n";
        fs::remove(fs::path(tune_out) / "shapley.csv");
      }
      const auto& best = rep.best_config();
      WriteText(fs::path(tune_out) / "best.cfg", WriteParamsConfig(best.params));
      out << "best config " << best.config_id << " mean gap " << best.mean_gap << "%\n"
          << WriteParamsConfig(best.params);
      return kOk;
    }

    if (*knn) {
      if (knn_tours.empty() && !knn_oracle) {
        throw UsageError("analyze-knn needs --tours or --oracle");
      }
      const auto insts = LoadInstances(knn_instances);
      std::vector<EmpiricalDistribution> dists;
      dists.reserve(insts.size());
      for (const auto& inst : insts) {
        const DistanceMatrix dm(inst, DefaultMetric(inst));
        auto tour = FindTour(knn_tours, inst);
        if (!tour) {
          if (!knn_oracle) {
            throw Error(ErrorKind::kMissingReference, "no tour for '" + inst.id() + "'");
          }
          tour = ExactSolve(dm).order();
        }
        dists.push_back(PerInstanceDistribution(RankTable(dm), *tour));
      }
      const auto agg = Aggregate(dists);
      Emit(knn_out, DistributionCsv(agg), out);
      if (!knn_prior.empty()) WriteText(knn_prior, WritePrior(PriorVector{agg.masses}));
      return kOk;
    }

    if (*report) {
      ResultTable all;
      for (const auto& path : report_in) {
        auto t = ParseResultsCsv(ReadText(path));
        all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
      }
      Emit(report_out, MarkdownReport(all), out);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kIo ? kIoFailure : kConfigFailure;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  }
  return kUsage;
}

}  // namespace hmcts::cli
