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

#include "hmcts/mcts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "hmcts/error.hpp"
#include "text_util.hpp"

namespace hmcts {
namespace {

Edge MakeEdge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

bool Contains(const std::vector<Edge>& edges, Edge e) {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

// Relative tolerance below which a length change counts as no change.
double ImprovementEps(double length) { return 1e-12 * std::max(1.0, length); }

// The tour with one edge removed, held as a Hamiltonian path whose first city
// is the free end and whose last city is the fixed chain start.
class Chain {
 public:
  Chain(std::span<const int> order, int start)
      : path_(order.size()), pos_(order.size()) {
    const auto n = order.size();
    const auto at = static_cast<size_t>(std::find(order.begin(), order.end(), start) -
                                        order.begin());
    for (size_t k = 0; k < n; ++k) {
      path_[k] = order[(at + 1 + k) % n];
      pos_[static_cast<size_t>(path_[k])] = static_cast<int>(k);
    }
  }

  int head() const { return path_.front(); }
  int start() const { return path_.back(); }
  int n() const { return static_cast<int>(path_.size()); }
  int pos(int city) const { return pos_[static_cast<size_t>(city)]; }
  int before(int city) const { return path_[static_cast<size_t>(pos(city) - 1)]; }

  // Joining the head to `city` keeps a Hamiltonian path only for cities that
  // are neither the head's path neighbour nor the chain start.
  bool CanAttach(int city) const {
    const int j = pos(city);
    return j >= 2 && j <= n() - 2;
  }

  // Adds (head, city), removes (before(city), city). Returns the new head.
  int Attach(int city) {
    const int j = pos(city);
    std::reverse(path_.begin(), path_.begin() + j);
    for (int k = 0; k < j; ++k) pos_[static_cast<size_t>(path_[static_cast<size_t>(k)])] = k;
    return head();
  }

  std::vector<int> TakeOrder() && { return std::move(path_); }

 private:
  std::vector<int> path_;
  std::vector<int> pos_;
};

// Drops edges that appear in both lists.
void CancelCommon(std::vector<Edge>& removed, std::vector<Edge>& added) {
  for (auto it = added.begin(); it != added.end();) {
    auto r = std::find(removed.begin(), removed.end(), *it);
    if (r != removed.end()) {
      removed.erase(r);
      it = added.erase(it);
    } else {
      ++it;
    }
  }
}

std::optional<Move> BuildChain(const MctsState& state, const Tour& tour, int start) {
  const auto& dm = state.distances();
  const int max_depth = state.params().max_depth;
  Chain chain(tour.order(), start);

  std::vector<Edge> removed{MakeEdge(start, chain.head())};
  std::vector<Edge> added;
  std::vector<int> targets;
  double removed_sum = dm(start, chain.head());
  double added_sum = 0.0;

  double best_delta = std::numeric_limits<double>::infinity();
  int best_depth = 0;
  int best_head = -1;
  for (int depth = 1; depth <= max_depth; ++depth) {
    const int head = chain.head();
    int pick = -1;
    double pick_z = -std::numeric_limits<double>::infinity();
    for (const int c : state.candidates(head)) {
      if (!chain.CanAttach(c)) continue;
      if (Contains(removed, MakeEdge(head, c))) continue;
      if (Contains(added, MakeEdge(chain.before(c), c))) continue;
      const double z = state.Potential(head, c);
      if (z > pick_z || (z == pick_z && c < pick)) {
        pick_z = z;
        pick = c;
      }
    }
    if (pick < 0) break;

    const int cut = chain.before(pick);
    added.push_back(MakeEdge(head, pick));
    removed.push_back(MakeEdge(cut, pick));
    added_sum += dm(head, pick);
    removed_sum += dm(cut, pick);
    targets.push_back(pick);
    const int new_head = chain.Attach(pick);

    const double closed = added_sum + dm(new_head, start) - removed_sum;
    if (closed < best_delta) {
      best_delta = closed;
      best_depth = depth;
      best_head = new_head;
    }
    if (closed < -ImprovementEps(tour.length())) break;
  }
  if (best_depth == 0) return std::nullopt;

  Move move;
  move.start = start;
  move.targets.assign(targets.begin(), targets.begin() + best_depth);
  move.delta = best_delta;
  move.removed.assign(removed.begin(), removed.begin() + best_depth + 1);
  move.added.assign(added.begin(), added.begin() + best_depth);
  move.added.push_back(MakeEdge(best_head, start));
  CancelCommon(move.removed, move.added);
  return move;
}

}  // namespace

void ValidateParams(const MctsParams& p) {
  if (!(p.alpha >= 0.0)) throw Error(ErrorKind::kParameter, "alpha must be >= 0");
  if (!(p.beta > 0.0)) throw Error(ErrorKind::kParameter, "beta must be > 0");
  if (p.max_depth < 1 || p.max_candidate_num < 1 || p.param_h < 1) {
    throw Error(ErrorKind::kParameter,
                "max_depth, max_candidate_num and param_h must be >= 1");
  }
  if (!(p.time_limit_factor > 0.0)) {
    throw Error(ErrorKind::kParameter, "time_limit_factor must be > 0");
  }
}

MctsParams ParseParamsConfig(std::string_view text, MctsParams base) {
  for (const auto raw : internal::SplitLines(text)) {
    const auto line = internal::Trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kParse, "expected key=value, got '" + std::string(line) + "'");
    }
    const auto key = internal::Trim(line.substr(0, eq));
    const auto value = internal::Trim(line.substr(eq + 1));
    auto bad = [&] {
      return Error(ErrorKind::kParse,
                   "bad value '" + std::string(value) + "' for " + std::string(key));
    };
    auto real = [&] {
      const auto v = internal::ParseDouble(value);
      if (!v) throw bad();
      return *v;
    };
    auto count = [&] {
      const auto v = internal::ParseInt(value);
      if (!v) throw bad();
      return static_cast<int>(*v);
    };
    if (key == "alpha") {
      base.alpha = real();
    } else if (key == "beta") {
      base.beta = real();
    } else if (key == "max_depth") {
      base.max_depth = count();
    } else if (key == "max_candidate_num") {
      base.max_candidate_num = count();
    } else if (key == "param_h") {
      base.param_h = count();
    } else if (key == "use_heatmap") {
      if (value == "true" || value == "1") {
        base.use_heatmap = true;
      } else if (value == "false" || value == "0") {
        base.use_heatmap = false;
      } else {
        throw bad();
      }
    } else if (key == "time_limit_factor") {
      base.time_limit_factor = real();
    } else {
      throw Error(ErrorKind::kParse, "unknown key '" + std::string(key) + "'");
    }
  }
  ValidateParams(base);
  return base;
}

std::string WriteParamsConfig(const MctsParams& p) {
  std::ostringstream out;
  out << "alpha=" << internal::FormatDouble(p.alpha) << "\n"
      << "beta=" << internal::FormatDouble(p.beta) << "\n"
      << "max_depth=" << p.max_depth << "\n"
      << "max_candidate_num=" << p.max_candidate_num << "\n"
      << "param_h=" << p.param_h << "\n"
      << "use_heatmap=" << (p.use_heatmap ? "true" : "false") << "\n"
      << "time_limit_factor=" << internal::FormatDouble(p.time_limit_factor) << "\n";
  return out.str();
}

double PotentialValue(double w, double omega, double alpha, long long moves, int q) {
  if (!(omega > 0.0)) throw Error(ErrorKind::kDegenerateRow, "omega is zero");
  return w / omega +
         alpha * std::sqrt(std::log(static_cast<double>(moves) + 1.0) / (q + 1.0));
}

double WeightIncrement(double beta, double old_length, double new_length) {
  return beta * (std::exp((old_length - new_length) / old_length) - 1.0);
}

MctsState::MctsState(const DistanceMatrix& dm, const RankTable& ranks, const Heatmap& hm,
                     const MctsParams& params, std::uint64_t seed)
    : dm_(dm), params_(params), rng_(seed) {
  ValidateParams(params);
  const int n = dm.n();
  if (hm.n() != n || ranks.n() != n) {
    throw Error(ErrorKind::kDimension, "heatmap has " + std::to_string(hm.n()) +
                                           " cities, instance has " + std::to_string(n));
  }
  const int keep = std::min(params.max_candidate_num, n - 1);
  candidates_.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& cand = candidates_[static_cast<size_t>(i)];
    cand.reserve(static_cast<size_t>(keep));
    if (params.use_heatmap) {
      // Heatmap rows are already ordered by probability then index; ties are
      // re-ordered by distance, and the remainder is filled nearest first.
      std::vector<std::pair<HeatEntry, int>> ranked;
      for (const auto& e : hm.row(i)) {
        if (e.p > 0.0) ranked.push_back({e, ranks.rank_of(i, e.neighbor)});
      }
      std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first.p != b.first.p) return a.first.p > b.first.p;
        return a.second < b.second;
      });
      for (const auto& [e, r] : ranked) {
        if (static_cast<int>(cand.size()) == keep) break;
        cand.push_back(e.neighbor);
      }
      for (int k = 1; k <= n - 1 && static_cast<int>(cand.size()) < keep; ++k) {
        const int j = ranks.neighbor(i, k);
        if (hm.value(i, j) > 0.0) continue;
        cand.push_back(j);
      }
    } else {
      for (int k = 1; k <= keep; ++k) cand.push_back(ranks.neighbor(i, k));
    }
  }

  edges_.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (const int j : candidates_[static_cast<size_t>(i)]) {
      edges_[static_cast<size_t>(i)].push_back({j, 0.0, 0, 0.0});
      edges_[static_cast<size_t>(j)].push_back({i, 0.0, 0, 0.0});
    }
  }
  omega_.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    auto& row = edges_[static_cast<size_t>(i)];
    std::sort(row.begin(), row.end(), [](const EdgeStat& a, const EdgeStat& b) {
      return a.to < b.to;
    });
    row.erase(std::unique(row.begin(), row.end(),
                          [](const EdgeStat& a, const EdgeStat& b) { return a.to == b.to; }),
              row.end());
    for (auto& e : row) {
      e.p = std::max(hm.value(i, e.to), hm.value(e.to, i));
      e.w = e.p > 0.0 ? 100.0 * e.p : kZeroPriorWeight;
      omega_[static_cast<size_t>(i)] += e.w;
    }
  }
}

const MctsState::EdgeStat* MctsState::Find(int i, int j) const {
  const auto& row = edges_[static_cast<size_t>(i)];
  const auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const EdgeStat& e, int v) { return e.to < v; });
  return it != row.end() && it->to == j ? &*it : nullptr;
}

MctsState::EdgeStat* MctsState::Find(int i, int j) {
  return const_cast<EdgeStat*>(std::as_const(*this).Find(i, j));
}

double MctsState::weight(int i, int j) const {
  const auto* e = Find(i, j);
  return e ? e->w : 0.0;
}

int MctsState::visits(int i, int j) const {
  const auto* e = Find(i, j);
  return e ? e->q : 0;
}

double MctsState::prior(int i, int j) const {
  const auto* e = Find(i, j);
  return e ? e->p : 0.0;
}

double MctsState::Potential(int i, int j) const {
  const auto* e = Find(i, j);
  const double w = e ? e->w : 0.0;
  const int q = e ? e->q : 0;
  if (!(omega(i) > 0.0)) {
    throw Error(ErrorKind::kDegenerateRow, "omega of city " + std::to_string(i) + " is zero");
  }
  return PotentialValue(w, omega(i), params_.alpha, moves_, q);
}

void MctsState::UpdateWeight(int i, int j, double old_length, double new_length) {
  auto* ij = Find(i, j);
  if (ij == nullptr) return;
  auto* ji = Find(j, i);
  const double inc = WeightIncrement(params_.beta, old_length, new_length);
  const double w = std::max(ij->w + inc, kWeightFloor);
  omega_[static_cast<size_t>(i)] += w - ij->w;
  omega_[static_cast<size_t>(j)] += w - ji->w;
  ij->w = w;
  ji->w = w;
}

void MctsState::AddVisit(int i, int j) {
  auto* ij = Find(i, j);
  if (ij == nullptr) return;
  ++ij->q;
  ++Find(j, i)->q;
}

bool MctsState::OfferBest(const Tour& t) {
  if (best_ && t.length() >= best_->length()) return false;
  best_ = t;
  return true;
}

MctsState InitState(const DistanceMatrix& dm, const RankTable& ranks, const Heatmap& hm,
                    const MctsParams& params, std::uint64_t seed) {
  return MctsState(dm, ranks, hm, params, seed);
}

Tour SampleInitialTour(MctsState& state) {
  const int n = state.n();
  const auto& dm = state.distances();
  auto& rng = state.rng();
  std::vector<bool> visited(static_cast<size_t>(n), false);
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));

  int cur = std::uniform_int_distribution<int>(0, n - 1)(rng);
  visited[static_cast<size_t>(cur)] = true;
  order.push_back(cur);
  double length = 0.0;

  std::vector<int> pool;
  std::vector<double> weights;
  for (int step = 1; step < n; ++step) {
    pool.clear();
    weights.clear();
    double total = 0.0;
    for (const int c : state.candidates(cur)) {
      if (visited[static_cast<size_t>(c)]) continue;
      pool.push_back(c);
      weights.push_back(std::exp(state.prior(cur, c)));
      total += weights.back();
    }
    int next = -1;
    if (!pool.empty()) {
      const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
      double acc = 0.0;
      next = pool.back();
      for (size_t k = 0; k < pool.size(); ++k) {
        acc += weights[k];
        if (u < acc) {
          next = pool[k];
          break;
        }
      }
    } else {
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < n; ++c) {
        if (visited[static_cast<size_t>(c)]) continue;
        const double d = dm(cur, c);
        if (d < best) {
          best = d;
          next = c;
        }
      }
    }
    length += dm(cur, next);
    visited[static_cast<size_t>(next)] = true;
    order.push_back(next);
    cur = next;
  }
  length += dm(cur, order.front());
  return Tour::FromTrusted(std::move(order), length);
}

double Potential(const MctsState& state, int i, int j) { return state.Potential(i, j); }

std::optional<Move> GenerateKoptMove(MctsState& state, const Tour& tour) {
  const int n = tour.n();
  std::optional<Move> best;
  std::uniform_int_distribution<int> pick_start(0, n - 1);
  for (int h = 0; h < state.params().param_h; ++h) {
    const int start = pick_start(state.rng());
    auto move = BuildChain(state, tour, start);
    if (move && (!best || move->delta < best->delta)) best = std::move(move);
  }
  return best;
}

Tour ApplyMove(const Tour& tour, const Move& move, const DistanceMatrix& dm) {
  if (move.start < 0 || move.start >= tour.n()) {
    throw Error(ErrorKind::kInvalidTour, "move start outside the tour");
  }
  Chain chain(tour.order(), move.start);
  for (const int c : move.targets) {
    if (c < 0 || c >= tour.n() || !chain.CanAttach(c)) {
      throw Error(ErrorKind::kInvalidTour, "move target " + std::to_string(c) +
                                               " does not fit the tour");
    }
    chain.Attach(c);
  }
  return Tour(std::move(chain).TakeOrder(), dm);
}

void WeightUpdate(MctsState& state, int i, int j, double old_length, double new_length) {
  state.UpdateWeight(i, j, old_length, new_length);
}

Tour AcceptOrRestart(MctsState& state, const Tour& tour, const std::optional<Move>& move) {
  if (move && move->delta < -ImprovementEps(tour.length())) {
    Tour next = ApplyMove(tour, *move, state.distances());
    state.CountMove();
    for (const auto& e : move->added) {
      state.AddVisit(e.a, e.b);
      WeightUpdate(state, e.a, e.b, tour.length(), next.length());
    }
    for (const auto& e : move->removed) state.AddVisit(e.a, e.b);
    state.OfferBest(next);
    return next;
  }
  state.CountRestart();
  return SampleInitialTour(state);
}

SolveResult Solve(const DistanceMatrix& dm, const RankTable& ranks, const Heatmap& hm,
                  const MctsParams& params, std::uint64_t seed, const Budget& budget,
                  const SolveObserver& observer) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const double limit = params.time_limit_factor * dm.n();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  MctsState state(dm, ranks, hm, params, seed);
  Tour current = SampleInitialTour(state);
  state.OfferBest(current);

  long long iters = 0;
  while (budget.is_wall() ? elapsed() < limit : iters < *budget.max_iters) {
    const auto move = GenerateKoptMove(state, current);
    current = AcceptOrRestart(state, current, move);
    ++iters;
    if (observer) observer(current, state);
  }

  SolveResult result;
  // The incumbent length was maintained incrementally; report it exactly.
  result.best_tour = Tour(state.best()->order(), dm);
  result.wall_time = elapsed();
  result.restarts = state.restarts();
  result.moves_accepted = state.moves();
  result.iterations = iters;
  return result;
}

}  // namespace hmcts
