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

#include "hmcts/heatmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "hmcts/error.hpp"
#include "hmcts/knn_stats.hpp"
#include "text_util.hpp"

namespace hmcts {
namespace {

bool RowOrder(const HeatEntry& a, const HeatEntry& b) {
  if (a.p != b.p) return a.p > b.p;
  return a.neighbor < b.neighbor;
}

// Returns an empty string when the entry is acceptable.
std::string CheckEntry(int n, int i, int j, double p) {
  if (i < 0 || i >= n || j < 0 || j >= n) return "index out of range";
  if (i == j) return "self-edge " + std::to_string(i);
  if (!(p >= 0.0 && p <= 1.0)) return "probability outside [0,1]";
  return {};
}

const std::array<double, 24> kTsp500 = {
    4.40078125e-01, 2.56265625e-01, 1.32750000e-01, 7.32656250e-02,
    4.08125000e-02, 2.35937500e-02, 1.34062500e-02, 7.75000000e-03,
    4.48437500e-03, 2.73437500e-03, 1.78125000e-03, 1.18750000e-03,
    6.87500000e-04, 3.75000000e-04, 3.75000000e-04, 1.87500000e-04,
    7.81250000e-05, 1.56250000e-05, 4.68750000e-05, 1.56250000e-05,
    4.68750000e-05, 3.12500000e-05, 1.56250000e-05, 1.56250000e-05};

const std::array<double, 23> kTsp1000 = {
    4.37554687e-01, 2.54718750e-01, 1.37671875e-01, 7.41093750e-02,
    3.97890625e-02, 2.35156250e-02, 1.32265625e-02, 7.45312500e-03,
    4.73437500e-03, 3.00781250e-03, 1.59375000e-03, 1.08593750e-03,
    5.62500000e-04, 2.96875000e-04, 2.65625000e-04, 1.71875000e-04,
    1.01562500e-04, 4.68750000e-05, 1.56250000e-05, 3.12500000e-05,
    2.34375000e-05, 7.81250000e-06, 1.56250000e-05};

const std::array<double, 30> kTsp10000 = {
    4.4175625e-01, 2.5409375e-01, 1.3292500e-01, 7.1950000e-02,
    3.9518750e-02, 2.3750000e-02, 1.4143750e-02, 8.0937500e-03,
    4.9125000e-03, 3.3312500e-03, 1.8437500e-03, 1.1125000e-03,
    8.3750000e-04, 5.5625000e-04, 3.7500000e-04, 2.6250000e-04,
    1.8125000e-04, 8.7500000e-05, 6.8750000e-05, 5.0000000e-05,
    5.0000000e-05, 2.5000000e-05, 2.5000000e-05, 6.2500000e-06,
    1.2500000e-05, 6.2500000e-06, 6.2500000e-06, 6.2500000e-06,
    6.2500000e-06, 6.2500000e-06};

}  // namespace

Heatmap::Heatmap(int n, std::vector<std::vector<HeatEntry>> rows)
    : rows_(std::move(rows)) {
  if (static_cast<int>(rows_.size()) != n) {
    throw Error(ErrorKind::kFormat, "heatmap has " + std::to_string(rows_.size()) +
                                        " rows, expected " + std::to_string(n));
  }
  std::vector<int> stamp(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    auto& row = rows_[static_cast<size_t>(i)];
    for (const auto& e : row) {
      if (auto why = CheckEntry(n, i, e.neighbor, e.p); !why.empty()) {
        throw Error(ErrorKind::kFormat, "row " + std::to_string(i) + ": " + why);
      }
      if (stamp[static_cast<size_t>(e.neighbor)] == i) {
        throw Error(ErrorKind::kFormat, "row " + std::to_string(i) +
                                            ": duplicate neighbour " +
                                            std::to_string(e.neighbor));
      }
      stamp[static_cast<size_t>(e.neighbor)] = i;
    }
    std::sort(row.begin(), row.end(), RowOrder);
  }
}

double Heatmap::value(int i, int j) const {
  for (const auto& e : row(i)) {
    if (e.neighbor == j) return e.p;
  }
  return 0.0;
}

size_t Heatmap::entry_count() const {
  size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

std::vector<double> Heatmap::Dense() const {
  if (n() > kDenseMaxN) {
    throw Error(ErrorKind::kSizeLimit, "dense export limited to n <= " +
                                           std::to_string(kDenseMaxN));
  }
  const auto sz = static_cast<size_t>(n());
  std::vector<double> out(sz * sz, 0.0);
  for (size_t i = 0; i < sz; ++i) {
    for (const auto& e : rows_[i]) out[i * sz + static_cast<size_t>(e.neighbor)] = e.p;
  }
  return out;
}

void ValidatePrior(const PriorVector& prior) {
  double total = 0.0;
  for (const double m : prior.masses) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw Error(ErrorKind::kParameter, "prior mass outside [0,1]");
    }
    total += m;
  }
  if (total > 1.0 + 1e-9) throw Error(ErrorKind::kParameter, "prior masses sum above 1");
}

PriorVector BuildGtPrior(std::span<const RankTable> rank_tables,
                         std::span<const std::vector<int>> tours) {
  if (rank_tables.size() != tours.size()) {
    throw Error(ErrorKind::kAlignment,
                std::to_string(rank_tables.size()) + " rank tables vs " +
                    std::to_string(tours.size()) + " tours");
  }
  std::vector<EmpiricalDistribution> dists;
  dists.reserve(tours.size());
  for (size_t i = 0; i < tours.size(); ++i) {
    dists.push_back(PerInstanceDistribution(rank_tables[i], tours[i]));
  }
  return PriorVector{Aggregate(dists).masses};
}

Heatmap PriorToHeatmap(const PriorVector& prior, const RankTable& ranks) {
  const int n = ranks.n();
  const int kmax = std::min(prior.K(), n - 1);
  std::vector<std::vector<HeatEntry>> rows(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = rows[static_cast<size_t>(i)];
    row.reserve(static_cast<size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
      row.push_back({ranks.neighbor(i, k), prior.masses[static_cast<size_t>(k - 1)]});
    }
  }
  return Heatmap(n, std::move(rows));
}

Heatmap ZeroHeatmap(int n) { return Heatmap(n); }

Heatmap SoftDistHeatmap(const DistanceMatrix& dm, double tau, int k_keep) {
  if (!(tau > 0.0)) throw Error(ErrorKind::kParameter, "softdist tau must be > 0");
  if (k_keep < 1) throw Error(ErrorKind::kParameter, "softdist k_keep must be >= 1");
  const int n = dm.n();
  std::vector<std::vector<HeatEntry>> rows(static_cast<size_t>(n));
  std::vector<double> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j != i) dmin = std::min(dmin, dm(i, j));
    }
    double z = 0.0;
    for (int j = 0; j < n; ++j) {
      w[static_cast<size_t>(j)] = j == i ? 0.0 : std::exp(-(dm(i, j) - dmin) / tau);
      z += w[static_cast<size_t>(j)];
    }
    auto& row = rows[static_cast<size_t>(i)];
    for (int j = 0; j < n; ++j) {
      if (j != i) row.push_back({j, w[static_cast<size_t>(j)] / z});
    }
    std::sort(row.begin(), row.end(), RowOrder);
    if (static_cast<int>(row.size()) > k_keep) row.resize(static_cast<size_t>(k_keep));
  }
  return Heatmap(n, std::move(rows));
}

Heatmap SparsifyTopK(const Heatmap& hm, int k) {
  if (k < 1) throw Error(ErrorKind::kParameter, "top-k needs k >= 1");
  std::vector<std::vector<HeatEntry>> rows(static_cast<size_t>(hm.n()));
  for (int i = 0; i < hm.n(); ++i) {
    const auto row = hm.row(i);
    const auto keep = std::min(row.size(), static_cast<size_t>(k));
    rows[static_cast<size_t>(i)].assign(row.begin(), row.begin() + static_cast<long>(keep));
  }
  return Heatmap(hm.n(), std::move(rows));
}

Heatmap ParseHeatmap(std::string_view text) {
  using internal::ParseDouble;
  using internal::ParseInt;
  const auto lines = internal::SplitLines(text);
  size_t li = 0;
  auto fail = [&](size_t line_no, const std::string& why) -> Error {
    return Error(ErrorKind::kFormat, "heatmap line " + std::to_string(line_no) + ": " + why);
  };
  while (li < lines.size() && internal::Trim(lines[li]).empty()) ++li;
  if (li == lines.size()) throw fail(1, "missing header 'n m'");
  const auto header = internal::Tokens(lines[li]);
  if (header.size() != 2) throw fail(li + 1, "header must be 'n m'");
  const auto n = ParseInt(header[0]);
  const auto m = ParseInt(header[1]);
  if (!n || !m || *n < 0 || *m < 0) throw fail(li + 1, "bad header values");

  std::vector<std::vector<HeatEntry>> rows(static_cast<size_t>(*n));
  std::vector<std::vector<int>> seen(static_cast<size_t>(*n));
  long long count = 0;
  for (++li; li < lines.size(); ++li) {
    const auto line = internal::Trim(lines[li]);
    if (line.empty()) continue;
    const auto toks = internal::Tokens(line);
    if (toks.size() != 3) throw fail(li + 1, "expected 'i j p'");
    const auto i = ParseInt(toks[0]);
    const auto j = ParseInt(toks[1]);
    const auto p = ParseDouble(toks[2]);
    if (!i || !j || !p) throw fail(li + 1, "unparseable entry");
    const auto ii = static_cast<int>(*i);
    const auto jj = static_cast<int>(*j);
    if (auto why = CheckEntry(static_cast<int>(*n), ii, jj, *p); !why.empty()) {
      throw fail(li + 1, why);
    }
    auto& s = seen[static_cast<size_t>(ii)];
    if (std::find(s.begin(), s.end(), jj) != s.end()) throw fail(li + 1, "duplicate entry");
    s.push_back(jj);
    rows[static_cast<size_t>(ii)].push_back({jj, *p});
    ++count;
  }
  if (count != *m) {
    throw fail(lines.size(), "header declares " + std::to_string(*m) +
                                 " entries, found " + std::to_string(count));
  }
  return Heatmap(static_cast<int>(*n), std::move(rows));
}

std::string WriteHeatmap(const Heatmap& hm) {
  std::ostringstream out;
  out << hm.n() << " " << hm.entry_count() << "\n";
  for (int i = 0; i < hm.n(); ++i) {
    for (const auto& e : hm.row(i)) {
      out << i << " " << e.neighbor << " " << internal::FormatDouble(e.p) << "\n";
    }
  }
  return out.str();
}

Heatmap LoadHeatmap(const std::string& path) { return ParseHeatmap(internal::ReadFile(path)); }

void SaveHeatmap(const Heatmap& hm, const std::string& path) {
  internal::WriteFile(path, WriteHeatmap(hm));
}

const PriorVector& BuiltinPrior(std::string_view name) {
  static const PriorVector tsp500{{kTsp500.begin(), kTsp500.end()}};
  static const PriorVector tsp1000{{kTsp1000.begin(), kTsp1000.end()}};
  static const PriorVector tsp10000{{kTsp10000.begin(), kTsp10000.end()}};
  if (name == "tsp500") return tsp500;
  if (name == "tsp1000") return tsp1000;
  if (name == "tsp10000") return tsp10000;
  throw Error(ErrorKind::kParameter, "no built-in prior named '" + std::string(name) + "'");
}

std::vector<std::string_view> BuiltinPriorNames() { return {"tsp500", "tsp1000", "tsp10000"}; }

PriorVector ParsePrior(std::string_view text) {
  PriorVector prior;
  for (const auto raw : internal::SplitLines(text)) {
    auto line = raw.substr(0, raw.find('#'));
    for (const auto tok : internal::Tokens(line, ",[]")) {
      const auto v = internal::ParseDouble(tok);
      if (!v) throw Error(ErrorKind::kFormat, "bad prior mass '" + std::string(tok) + "'");
      prior.masses.push_back(*v);
    }
  }
  if (prior.masses.empty()) throw Error(ErrorKind::kFormat, "prior file has no masses");
  ValidatePrior(prior);
  return prior;
}

std::string WritePrior(const PriorVector& prior) {
  std::ostringstream out;
  out << "# neighbour-rank prior, K=" << prior.K() << "\n";
  for (const double m : prior.masses) out << internal::FormatDouble(m) << "\n";
  return out.str();
}

}  // namespace hmcts
