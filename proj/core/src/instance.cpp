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

#include "hmcts/instance.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "hmcts/error.hpp"
#include "text_util.hpp"

namespace hmcts {
namespace {

using internal::FormatDouble;
using internal::ParseDouble;
using internal::ParseInt;
using internal::SplitLines;
using internal::Tokens;
using internal::Trim;

double Clip01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string GeneratedId(std::string_view kind, int n, std::uint64_t seed) {
  std::ostringstream ss;
  ss << kind << "-n" << n << "-s" << seed;
  return ss.str();
}

std::vector<Point> UniformPoints(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts(static_cast<size_t>(n));
  for (auto& p : pts) {
    p.x = unit(rng);
    p.y = unit(rng);
  }
  return pts;
}

void CheckSize(int n) {
  if (n < 3) {
    throw Error(ErrorKind::kInvalidSize,
                "an instance needs at least 3 cities, got " + std::to_string(n));
  }
}

}  // namespace

std::string_view ToString(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kUniform: return "uniform";
    case DistributionKind::kCluster: return "cluster";
    case DistributionKind::kExplosion: return "explosion";
    case DistributionKind::kImplosion: return "implosion";
  }
  return "uniform";
}

DistributionKind ParseDistributionKind(std::string_view name) {
  for (auto k : {DistributionKind::kUniform, DistributionKind::kCluster,
                 DistributionKind::kExplosion, DistributionKind::kImplosion}) {
    if (ToString(k) == name) return k;
  }
  throw Error(ErrorKind::kParameter,
              "unknown distribution '" + std::string(name) + "'");
}

std::string_view ToString(Metric metric) {
  return metric == Metric::kEuc2dInt ? "euc2d_int" : "euc2d_real";
}

Instance::Instance(std::string id, std::vector<Point> points,
                   InstanceSource source)
    : id_(std::move(id)), points_(std::move(points)), source_(std::move(source)) {
  CheckSize(static_cast<int>(points_.size()));
}

Instance GenerateUniform(int n, std::uint64_t seed) {
  CheckSize(n);
  std::mt19937_64 rng(seed);
  return Instance(GeneratedId("uniform", n, seed), UniformPoints(n, rng),
                  GeneratedSource{DistributionKind::kUniform, seed});
}

Instance GenerateStructured(int n, std::uint64_t seed, DistributionKind kind,
                            const StructuredParams& params) {
  CheckSize(n);
  if (kind == DistributionKind::kUniform) return GenerateUniform(n, seed);

  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  if (kind == DistributionKind::kCluster) {
    if (params.n_clusters < 1 || !(params.spread > 0.0)) {
      throw Error(ErrorKind::kParameter,
                  "cluster generator needs n_clusters >= 1 and spread > 0");
    }
    const auto centers = UniformPoints(params.n_clusters, rng);
    std::normal_distribution<double> noise(0.0, params.spread);
    pts.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto& c = centers[static_cast<size_t>(i % params.n_clusters)];
      const double dx = noise(rng);
      const double dy = noise(rng);
      pts[static_cast<size_t>(i)] = {Clip01(c.x + dx), Clip01(c.y + dy)};
    }
  } else {
    const auto& c = params.center;
    if (c.x < 0.0 || c.x > 1.0 || c.y < 0.0 || c.y > 1.0 ||
        !(params.radius > 0.0) || params.radius > 0.5) {
      throw Error(ErrorKind::kParameter,
                  "explosion/implosion need center in [0,1]^2 and radius in "
                  "(0, 0.5]");
    }
    pts = UniformPoints(n, rng);
    for (auto& p : pts) {
      const double dx = p.x - c.x;
      const double dy = p.y - c.y;
      const double dist = std::hypot(dx, dy);
      if (dist >= params.radius) continue;
      if (kind == DistributionKind::kExplosion) {
        // Nudge past the boundary so rounding never leaves a point inside.
        const double target = params.radius * (1.0 + 1e-12);
        const double ux = dist > 0.0 ? dx / dist : 1.0;
        const double uy = dist > 0.0 ? dy / dist : 0.0;
        p = {Clip01(c.x + ux * target), Clip01(c.y + uy * target)};
      } else {
        p = {Clip01(c.x + 0.5 * dx), Clip01(c.y + 0.5 * dy)};
      }
    }
  }
  return Instance(GeneratedId(ToString(kind), n, seed), std::move(pts),
                  GeneratedSource{kind, seed});
}

Instance ParseTsplib(std::string_view text) {
  std::string name;
  std::optional<long long> dimension;
  std::string weight_type;
  bool saw_coords = false;
  std::vector<Point> pts;
  std::vector<bool> seen;

  const auto lines = SplitLines(text);
  size_t li = 0;
  for (; li < lines.size(); ++li) {
    const auto line = Trim(lines[li]);
    if (line.empty()) continue;
    if (line == "EOF") break;
    if (line.rfind("NODE_COORD_SECTION", 0) == 0) {
      saw_coords = true;
      ++li;
      break;
    }
    const auto colon = line.find(':');
    std::string_view key;
    std::string_view value;
    if (colon != std::string_view::npos) {
      key = Trim(line.substr(0, colon));
      value = Trim(line.substr(colon + 1));
    } else {
      const auto toks = Tokens(line);
      key = toks.front();
      value = toks.size() > 1 ? Trim(line.substr(key.size())) : "";
    }
    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "DIMENSION") {
      dimension = ParseInt(value);
      if (!dimension) {
        throw Error(ErrorKind::kParse,
                    "bad DIMENSION value '" + std::string(value) + "'");
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = std::string(value);
      if (weight_type != "EUC_2D") {
        throw Error(ErrorKind::kUnsupportedMetric,
                    "EDGE_WEIGHT_TYPE " + weight_type + " (only EUC_2D)");
      }
    }
    // TYPE, COMMENT and other header keywords are accepted and ignored.
  }

  if (!dimension) throw Error(ErrorKind::kParse, "missing DIMENSION");
  if (weight_type.empty()) throw Error(ErrorKind::kParse, "missing EDGE_WEIGHT_TYPE");
  if (!saw_coords) throw Error(ErrorKind::kParse, "missing NODE_COORD_SECTION");

  const auto n = static_cast<size_t>(*dimension);
  pts.resize(n);
  seen.assign(n, false);
  size_t count = 0;
  for (; li < lines.size(); ++li) {
    const auto line = Trim(lines[li]);
    if (line.empty()) continue;
    if (line == "EOF") break;
    const auto toks = Tokens(line);
    if (toks.size() != 3) {
      throw Error(ErrorKind::kParse, "bad NODE_COORD_SECTION line '" +
                                         std::string(line) + "'");
    }
    const auto id = ParseInt(toks[0]);
    const auto x = ParseDouble(toks[1]);
    const auto y = ParseDouble(toks[2]);
    if (!id || !x || !y) {
      throw Error(ErrorKind::kParse,
                  "bad NODE_COORD_SECTION line '" + std::string(line) + "'");
    }
    if (*id < 1 || static_cast<size_t>(*id) > n || seen[*id - 1]) {
      throw Error(ErrorKind::kParse,
                  "node id " + std::to_string(*id) + " out of range or repeated");
    }
    seen[*id - 1] = true;
    pts[*id - 1] = {*x, *y};
    ++count;
  }
  if (count != n) {
    throw Error(ErrorKind::kParse, "NODE_COORD_SECTION has " +
                                       std::to_string(count) + " entries, DIMENSION is " +
                                       std::to_string(n));
  }
  auto id = name.empty() ? std::string("tsplib") : name;
  return Instance(std::move(id), std::move(pts), TsplibSource{name});
}

std::string WriteTsplib(const Instance& inst) {
  std::ostringstream out;
  out << "NAME : " << inst.id() << "\n";
  out << "TYPE : TSP\n";
  out << "DIMENSION : " << inst.n() << "\n";
  out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  out << "NODE_COORD_SECTION\n";
  for (int i = 0; i < inst.n(); ++i) {
    out << (i + 1) << " " << FormatDouble(inst.point(i).x) << " "
        << FormatDouble(inst.point(i).y) << "\n";
  }
  out << "EOF\n";
  return out.str();
}

Instance ParseNative(std::string_view text, std::string id) {
  const auto toks = Tokens(text);
  if (toks.size() < 2 || toks[0] != "n") {
    throw Error(ErrorKind::kParse, "native instance must start with 'n <count>'");
  }
  const auto n = ParseInt(toks[1]);
  if (!n || *n < 0) throw Error(ErrorKind::kParse, "bad city count");
  if (toks.size() != 2 + 2 * static_cast<size_t>(*n)) {
    throw Error(ErrorKind::kParse, "expected " + std::to_string(*n) +
                                       " coordinate pairs");
  }
  std::vector<Point> pts(static_cast<size_t>(*n));
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto x = ParseDouble(toks[2 + 2 * i]);
    const auto y = ParseDouble(toks[3 + 2 * i]);
    if (!x || !y) {
      throw Error(ErrorKind::kParse, "bad coordinate for city " + std::to_string(i));
    }
    pts[i] = {*x, *y};
  }
  return Instance(std::move(id), std::move(pts), FileSource{});
}

std::string WriteNative(const Instance& inst) {
  std::ostringstream out;
  out << "n " << inst.n() << "\n";
  for (const auto& p : inst.points()) {
    out << FormatDouble(p.x) << " " << FormatDouble(p.y) << "\n";
  }
  return out.str();
}

Instance ReadInstanceFile(const std::string& path) {
  const auto text = internal::ReadFile(path);
  if (text.find("NODE_COORD_SECTION") != std::string::npos ||
      text.find("EDGE_WEIGHT_TYPE") != std::string::npos) {
    return ParseTsplib(text);
  }
  return ParseNative(text, std::filesystem::path(path).stem().string());
}

void WriteInstanceFile(const Instance& inst, const std::string& path) {
  internal::WriteFile(path, WriteNative(inst));
}

DistanceMatrix::DistanceMatrix(const Instance& inst, Metric metric)
    : points_(inst.points().begin(), inst.points().end()), metric_(metric) {}

double DistanceMatrix::operator()(int i, int j) const {
  if (i == j) return 0.0;
  const auto& a = points_[static_cast<size_t>(i)];
  const auto& b = points_[static_cast<size_t>(j)];
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double d = std::sqrt(dx * dx + dy * dy);
  if (metric_ == Metric::kEuc2dInt) return std::floor(d + 0.5);
  return d;
}

RankTable::RankTable(const DistanceMatrix& dm) : n_(dm.n()) {
  const auto n = static_cast<size_t>(n_);
  order_.resize(n * (n - 1));
  rank_.assign(n * n, 0);
  std::vector<int> row;
  std::vector<double> dist(n);
  for (int i = 0; i < n_; ++i) {
    row.clear();
    for (int j = 0; j < n_; ++j) {
      dist[static_cast<size_t>(j)] = dm(i, j);
      if (j != i) row.push_back(j);
    }
    std::stable_sort(row.begin(), row.end(), [&](int a, int b) {
      return dist[static_cast<size_t>(a)] < dist[static_cast<size_t>(b)];
    });
    std::copy(row.begin(), row.end(), order_.begin() + static_cast<long>(i * (n - 1)));
    for (size_t k = 0; k < row.size(); ++k) {
      rank_[i * n + static_cast<size_t>(row[k])] = static_cast<int>(k) + 1;
    }
  }
}

}  // namespace hmcts
