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

#include "hmcts/eval.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <sstream>

#include "hmcts/error.hpp"
#include "hmcts/parallel.hpp"
#include "hmcts/tour.hpp"
#include "text_util.hpp"

namespace hmcts {
namespace {

constexpr std::string_view kCsvHeader =
    "instance,config,heatmap,length,ref_length,gap_pct,time_s,seed";

template <typename Pick>
std::optional<double> Reduce(const ResultTable& t, Pick pick) {
  if (t.rows.empty()) return std::nullopt;
  double acc = t.rows.front().gap_percent;
  for (const auto& r : t.rows) acc = pick(acc, r.gap_percent);
  return acc;
}

}  // namespace

double OptimalityGap(double length, double reference) {
  if (!(reference > 0.0)) {
    throw Error(ErrorKind::kReference, "reference length must be positive");
  }
  return (length / reference - 1.0) * 100.0;
}

HeatmapSpec HeatmapSpec::Parse(std::string_view text) {
  HeatmapSpec spec;
  spec.text = std::string(text);
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto usage = [&] {
    return Error(ErrorKind::kParameter, "unknown heatmap spec '" + std::string(text) +
                                            "' (zero | softdist:tau[:k] | "
                                            "gtprior:name-or-file | file:path)");
  };
  if (kind == "zero" && arg.empty()) {
    spec.source = Zero{};
  } else if (kind == "softdist") {
    const auto parts = internal::Tokens(arg, ":");
    if (parts.empty() || parts.size() > 2) throw usage();
    SoftDist sd;
    const auto tau = internal::ParseDouble(parts[0]);
    if (!tau || !(*tau > 0.0)) throw Error(ErrorKind::kParameter, "softdist tau must be > 0");
    sd.tau = *tau;
    if (parts.size() == 2) {
      const auto k = internal::ParseInt(parts[1]);
      if (!k || *k < 1) throw Error(ErrorKind::kParameter, "softdist k must be >= 1");
      sd.k_keep = static_cast<int>(*k);
    }
    spec.source = sd;
  } else if (kind == "gtprior" && !arg.empty()) {
    const auto names = BuiltinPriorNames();
    if (std::find(names.begin(), names.end(), arg) != names.end()) {
      spec.source = GtPrior{BuiltinPrior(arg), std::string(arg)};
    } else {
      spec.source = GtPrior{ParsePrior(internal::ReadFile(std::string(arg))),
                            std::filesystem::path(arg).stem().string()};
    }
  } else if (kind == "file" && !arg.empty()) {
    spec.source = File{std::string(arg)};
  } else {
    throw usage();
  }
  return spec;
}

std::string HeatmapSpec::label() const {
  struct Visitor {
    std::string operator()(const Zero&) const { return "zero"; }
    std::string operator()(const SoftDist& s) const {
      return "softdist:" + internal::FormatDouble(s.tau);
    }
    std::string operator()(const GtPrior& g) const { return "gtprior:" + g.label; }
    std::string operator()(const File& f) const {
      return "file:" + std::filesystem::path(f.path).filename().string();
    }
  };
  return std::visit(Visitor{}, source);
}

Heatmap BuildHeatmap(const HeatmapSpec& spec, const Instance& inst, const DistanceMatrix& dm,
                     const RankTable& ranks) {
  struct Visitor {
    const Instance& inst;
    const DistanceMatrix& dm;
    const RankTable& ranks;
    Heatmap operator()(const HeatmapSpec::Zero&) const { return ZeroHeatmap(inst.n()); }
    Heatmap operator()(const HeatmapSpec::SoftDist& s) const {
      return SoftDistHeatmap(dm, s.tau, s.k_keep);
    }
    Heatmap operator()(const HeatmapSpec::GtPrior& g) const {
      return PriorToHeatmap(g.prior, ranks);
    }
    Heatmap operator()(const HeatmapSpec::File& f) const {
      std::filesystem::path p(f.path);
      if (std::filesystem::is_directory(p)) p /= inst.id() + ".heatmap";
      return LoadHeatmap(p.string());
    }
  };
  return std::visit(Visitor{inst, dm, ranks}, spec.source);
}

Metric DefaultMetric(const Instance& inst) {
  return std::holds_alternative<TsplibSource>(inst.source()) ? Metric::kEuc2dInt
                                                             : Metric::kEuc2dReal;
}

std::optional<double> ResultTable::mean_gap() const {
  if (rows.empty()) return std::nullopt;
  double total = 0.0;
  for (const auto& r : rows) total += r.gap_percent;
  return total / static_cast<double>(rows.size());
}

std::optional<double> ResultTable::min_gap() const {
  return Reduce(*this, [](double a, double b) { return std::min(a, b); });
}

std::optional<double> ResultTable::max_gap() const {
  return Reduce(*this, [](double a, double b) { return std::max(a, b); });
}

bool ResultTable::SameResults(const ResultTable& other) const {
  if (rows.size() != other.rows.size()) return false;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = other.rows[i];
    if (a.instance_id != b.instance_id || a.config_id != b.config_id ||
        a.heatmap != b.heatmap || a.solver_length != b.solver_length ||
        a.reference_length != b.reference_length || a.gap_percent != b.gap_percent ||
        a.seed != b.seed) {
      return false;
    }
  }
  return true;
}

ResultTable RunBenchmark(std::span<const Instance> instances,
                         std::span<const std::optional<std::vector<int>>> reference_tours,
                         const HeatmapSpec& heatmap, const MctsParams& params,
                         const Budget& budget, const BenchmarkOptions& options) {
  if (!reference_tours.empty() && reference_tours.size() != instances.size()) {
    throw Error(ErrorKind::kAlignment, "reference tour list does not match instances");
  }
  ValidateParams(params);
  for (size_t i = 0; i < instances.size(); ++i) {
    const bool has_ref = !reference_tours.empty() && reference_tours[i].has_value();
    if (!has_ref && instances[i].n() > kExactSolveMaxN) {
      throw Error(ErrorKind::kMissingReference,
                  "instance '" + instances[i].id() + "' has no reference tour and n > " +
                      std::to_string(kExactSolveMaxN));
    }
  }

  ResultTable table;
  table.rows.resize(instances.size());
  const auto label = heatmap.label();
  ParallelFor(instances.size(), options.jobs, [&](size_t i) {
    const auto& inst = instances[i];
    const DistanceMatrix dm(inst, options.metric.value_or(DefaultMetric(inst)));
    const RankTable ranks(dm);
    const double ref_length =
        !reference_tours.empty() && reference_tours[i].has_value()
            ? TourLength(*reference_tours[i], dm)
            : ExactSolve(dm).length();
    const auto hm = BuildHeatmap(heatmap, inst, dm, ranks);
    const std::uint64_t seed = options.seed + i;
    const auto result = Solve(dm, ranks, hm, params, seed, budget);

    auto& row = table.rows[i];
    row.instance_id = inst.id();
    row.config_id = options.config_id;
    row.heatmap = label;
    row.solver_length = result.best_tour.length();
    row.reference_length = ref_length;
    row.gap_percent = OptimalityGap(row.solver_length, ref_length);
    row.wall_time = result.wall_time;
    row.seed = seed;
    row.best_order = result.best_tour.order();
  });
  return table;
}

std::string ResultsCsv(const ResultTable& table) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : table.rows) {
    out << r.instance_id << "," << r.config_id << "," << r.heatmap << ","
        << internal::FormatDouble(r.solver_length) << ","
        << internal::FormatDouble(r.reference_length) << ","
        << internal::FormatDouble(r.gap_percent) << "," << internal::FormatDouble(r.wall_time)
        << "," << r.seed << "\n";
  }
  return out.str();
}

ResultTable ParseResultsCsv(std::string_view text) {
  const auto lines = internal::SplitLines(text);
  ResultTable table;
  bool header = false;
  for (size_t li = 0; li < lines.size(); ++li) {
    const auto line = internal::Trim(lines[li]);
    if (line.empty()) continue;
    if (!header) {
      if (line != kCsvHeader) {
        throw Error(ErrorKind::kFormat, "results CSV header must be '" +
                                            std::string(kCsvHeader) + "'");
      }
      header = true;
      continue;
    }
    std::vector<std::string_view> cells;
    size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    auto bad = [&] {
      return Error(ErrorKind::kFormat, "results CSV line " + std::to_string(li + 1));
    };
    if (cells.size() != 8) throw bad();
    GapReport r;
    r.instance_id = std::string(cells[0]);
    r.config_id = std::string(cells[1]);
    r.heatmap = std::string(cells[2]);
    const auto len = internal::ParseDouble(cells[3]);
    const auto ref = internal::ParseDouble(cells[4]);
    const auto gap = internal::ParseDouble(cells[5]);
    const auto time = internal::ParseDouble(cells[6]);
    const auto seed = internal::ParseInt(cells[7]);
    if (!len || !ref || !gap || !time || !seed) throw bad();
    r.solver_length = *len;
    r.reference_length = *ref;
    r.gap_percent = *gap;
    r.wall_time = *time;
    r.seed = static_cast<std::uint64_t>(*seed);
    table.rows.push_back(std::move(r));
  }
  if (!header) throw Error(ErrorKind::kFormat, "results CSV is empty");
  return table;
}

std::string MarkdownReport(const ResultTable& table) {
  struct Acc {
    int count = 0;
    double length = 0.0;
    double ref = 0.0;
    double gap = 0.0;
    double time = 0.0;
  };
  // Keyed by first appearance so the summary follows input order.
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, Acc> groups;
  for (const auto& r : table.rows) {
    const auto key = std::make_pair(r.heatmap, r.config_id);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) keys.push_back(key);
    auto& a = it->second;
    ++a.count;
    a.length += r.solver_length;
    a.ref += r.reference_length;
    a.gap += r.gap_percent;
    a.time += r.wall_time;
  }
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out << "| Method | Config | Instances | Length | Ref. length | Gap (%) | Time (s) |\n";
  out << "|---|---|---:|---:|---:|---:|---:|\n";
  for (const auto& key : keys) {
    const auto& a = groups[key];
    const double c = a.count;
    out.precision(2);
    out << "| " << key.first << " | " << key.second << " | " << a.count << " | "
        << a.length / c << " | " << a.ref / c << " | ";
    out.precision(3);
    out << a.gap / c << " | ";
    out.precision(2);
    out << a.time / c << " |\n";
  }
  return out.str();
}

}  // namespace hmcts
