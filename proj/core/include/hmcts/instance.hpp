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

#ifndef HMCTS_INSTANCE_HPP_
#define HMCTS_INSTANCE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hmcts {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class DistributionKind { kUniform, kCluster, kExplosion, kImplosion };

std::string_view ToString(DistributionKind kind);
DistributionKind ParseDistributionKind(std::string_view name);

struct GeneratedSource {
  DistributionKind kind = DistributionKind::kUniform;
  std::uint64_t seed = 0;
  friend bool operator==(const GeneratedSource&,
                         const GeneratedSource&) = default;
};

struct TsplibSource {
  std::string name;
  friend bool operator==(const TsplibSource&, const TsplibSource&) = default;
};

// Files in the native format carry no provenance.
struct FileSource {
  friend bool operator==(const FileSource&, const FileSource&) = default;
};

using InstanceSource = std::variant<GeneratedSource, TsplibSource, FileSource>;

// A set of labelled planar cities. Immutable once built.
class Instance {
 public:
  // Throws kInvalidSize when fewer than three points are given.
  Instance(std::string id, std::vector<Point> points, InstanceSource source);

  const std::string& id() const { return id_; }
  std::span<const Point> points() const { return points_; }
  const Point& point(int i) const { return points_[static_cast<size_t>(i)]; }
  int n() const { return static_cast<int>(points_.size()); }
  const InstanceSource& source() const { return source_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::string id_;
  std::vector<Point> points_;
  InstanceSource source_;
};

// Parameters for the structured generators. Only the fields relevant to the
// chosen kind are read.
struct StructuredParams {
  int n_clusters = 5;
  double spread = 0.05;
  Point center{0.5, 0.5};
  double radius = 0.2;
};

Instance GenerateUniform(int n, std::uint64_t seed);

// cluster: round-robin assignment to uniformly drawn centers plus isotropic
// Gaussian noise; explosion: points inside the radius are pushed out to its
// boundary; implosion: points inside the radius are contracted toward the
// center by a factor 0.5. Results are clipped to the unit square.
Instance GenerateStructured(int n, std::uint64_t seed, DistributionKind kind,
                            const StructuredParams& params);

// TSPLIB subset: NAME, TYPE, COMMENT, DIMENSION, EDGE_WEIGHT_TYPE (EUC_2D only),
// NODE_COORD_SECTION, EOF.
Instance ParseTsplib(std::string_view text);
std::string WriteTsplib(const Instance& inst);

// Native format: `n <count>` followed by one `<x> <y>` line per city.
Instance ParseNative(std::string_view text, std::string id);
std::string WriteNative(const Instance& inst);

// Dispatches on content: TSPLIB when a NODE_COORD_SECTION keyword is present,
// otherwise native. The id defaults to the file stem.
Instance ReadInstanceFile(const std::string& path);
void WriteInstanceFile(const Instance& inst, const std::string& path);

enum class Metric { kEuc2dReal, kEuc2dInt };

std::string_view ToString(Metric metric);

// Euclidean distances over an instance's coordinates. Entries are computed on
// demand so large instances do not pay for an n*n table.
class DistanceMatrix {
 public:
  DistanceMatrix(const Instance& inst, Metric metric);

  int n() const { return static_cast<int>(points_.size()); }
  Metric metric() const { return metric_; }

  double operator()(int i, int j) const;

 private:
  std::vector<Point> points_;
  Metric metric_;
};

inline DistanceMatrix MakeDistanceMatrix(const Instance& inst, Metric metric) {
  return DistanceMatrix(inst, metric);
}

// For each city, every other city ordered by ascending distance; ties go to
// the smaller index. Ranks are 1-based.
class RankTable {
 public:
  explicit RankTable(const DistanceMatrix& dm);

  int n() const { return n_; }
  std::span<const int> row(int i) const {
    return {order_.data() + static_cast<size_t>(i) * (n_ - 1),
            static_cast<size_t>(n_ - 1)};
  }
  // The k-th nearest neighbour of i, k in [1, n-1].
  int neighbor(int i, int k) const { return row(i)[static_cast<size_t>(k - 1)]; }
  // Rank of j among i's neighbours, in [1, n-1]. Requires i != j.
  int rank_of(int i, int j) const {
    return rank_[static_cast<size_t>(i) * n_ + static_cast<size_t>(j)];
  }

 private:
  int n_;
  std::vector<int> order_;
  std::vector<int> rank_;
};

inline RankTable NearestNeighborRanks(const DistanceMatrix& dm) {
  return RankTable(dm);
}

}  // namespace hmcts

#endif  // HMCTS_INSTANCE_HPP_
