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

#ifndef HMCTS_MCTS_HPP_
#define HMCTS_MCTS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmcts/heatmap.hpp"
#include "hmcts/instance.hpp"
#include "hmcts/tour.hpp"

namespace hmcts {

struct MctsParams {
  double alpha = 1.0;             // exploration coefficient
  double beta = 10.0;             // weight update rate
  int max_depth = 10;             // max reconnections per k-opt move
  int max_candidate_num = 1000;   // candidate list length per city
  int param_h = 10;               // chain samples per move decision
  bool use_heatmap = true;        // rank candidates by heatmap, else distance
  double time_limit_factor = 0.1; // wall seconds per city

  friend bool operator==(const MctsParams&, const MctsParams&) = default;
};

// Throws kParameter when a count is below 1, alpha < 0, or beta or the time
// factor is not positive.
void ValidateParams(const MctsParams& params);

// `key=value` lines; '#' starts a comment. Keys: alpha, beta, max_depth,
// max_candidate_num, param_h, use_heatmap, time_limit_factor. Unset keys
// keep their value from `base`.
MctsParams ParseParamsConfig(std::string_view text, MctsParams base = {});
std::string WriteParamsConfig(const MctsParams& params);

struct Edge {
  int a = 0;
  int b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// A sequential k-opt move: break the tour edge leaving `start`, then for each
// target c attach the current free end to c and break the edge that keeps the
// remainder a Hamiltonian path; finally close the path back to `start`.
struct Move {
  int start = -1;
  std::vector<int> targets;
  double delta = 0.0;
  std::vector<Edge> removed;
  std::vector<Edge> added;

  int depth() const { return static_cast<int>(targets.size()); }
};

inline constexpr double kWeightFloor = 1e-6;
inline constexpr double kZeroPriorWeight = 1.0;

// Z = w / omega + alpha * sqrt(ln(M + 1) / (q + 1)).
double PotentialValue(double w, double omega, double alpha, long long moves, int q);
// beta * (exp((L_old - L_new) / L_old) - 1).
double WeightIncrement(double beta, double old_length, double new_length);

// Search statistics for one solver run: symmetric edge weights W and visit
// counts Q over candidate edges, the accepted-move counter M, candidate lists,
// the generator, and the best tour so far.
class MctsState {
 public:
  MctsState(const DistanceMatrix& dm, const RankTable& ranks, const Heatmap& hm,
            const MctsParams& params, std::uint64_t seed);

  int n() const { return dm_.n(); }
  const DistanceMatrix& distances() const { return dm_; }
  const MctsParams& params() const { return params_; }
  std::span<const int> candidates(int i) const { return candidates_[static_cast<size_t>(i)]; }

  // Zero for non-candidate edges.
  double weight(int i, int j) const;
  int visits(int i, int j) const;
  double prior(int i, int j) const;
  bool is_candidate_edge(int i, int j) const { return Find(i, j) != nullptr; }
  double omega(int i) const { return omega_[static_cast<size_t>(i)]; }
  long long moves() const { return moves_; }
  long long restarts() const { return restarts_; }

  const std::optional<Tour>& best() const { return best_; }
  std::mt19937_64& rng() { return rng_; }

  // Z_ij; throws kDegenerateRow when omega(i) is zero.
  double Potential(int i, int j) const;

  void UpdateWeight(int i, int j, double old_length, double new_length);
  void AddVisit(int i, int j);
  void CountMove() { ++moves_; }
  void CountRestart() { ++restarts_; }
  // Records `t` when it beats the incumbent. Returns true if it did.
  bool OfferBest(const Tour& t);

 private:
  struct EdgeStat {
    int to = 0;
    double w = 0.0;
    int q = 0;
    double p = 0.0;
  };

  const EdgeStat* Find(int i, int j) const;
  EdgeStat* Find(int i, int j);

  DistanceMatrix dm_;
  MctsParams params_;
  std::vector<std::vector<int>> candidates_;
  std::vector<std::vector<EdgeStat>> edges_;  // sorted by `to`
  std::vector<double> omega_;
  long long moves_ = 0;
  long long restarts_ = 0;
  std::mt19937_64 rng_;
  std::optional<Tour> best_;
};

// Throws kDimension when the heatmap size differs from the instance.
MctsState InitState(const DistanceMatrix& dm, const RankTable& ranks, const Heatmap& hm,
                    const MctsParams& params, std::uint64_t seed);

// Grows a tour from a random city, drawing each next city among unvisited
// candidates with probability proportional to exp(P); falls back to the
// nearest unvisited city.
Tour SampleInitialTour(MctsState& state);

double Potential(const MctsState& state, int i, int j);

// Samples param_h chains from random start cities and returns the one with
// the smallest exact length change, or nullopt if no chain could be built.
std::optional<Move> GenerateKoptMove(MctsState& state, const Tour& tour);

// Replays `move` on `tour`. Throws kInvalidTour if the move does not fit.
Tour ApplyMove(const Tour& tour, const Move& move, const DistanceMatrix& dm);

// Applies an improving move and updates M, Q, W and the incumbent; otherwise
// restarts from a freshly sampled tour.
Tour AcceptOrRestart(MctsState& state, const Tour& tour, const std::optional<Move>& move);

void WeightUpdate(MctsState& state, int i, int j, double old_length, double new_length);

// Exactly one of the two limits applies: an iteration cap makes the run
// reproducible, the wall budget is time_limit_factor * n seconds.
struct Budget {
  std::optional<long long> max_iters;

  static Budget Iterations(long long n) { return Budget{n}; }
  static Budget WallClock() { return Budget{}; }
  bool is_wall() const { return !max_iters.has_value(); }
};

struct SolveResult {
  Tour best_tour;
  double wall_time = 0.0;
  long long restarts = 0;
  long long moves_accepted = 0;
  long long iterations = 0;
};

// Called after every iteration with the current tour.
using SolveObserver = std::function<void(const Tour& current, const MctsState& state)>;

SolveResult Solve(const DistanceMatrix& dm, const RankTable& ranks, const Heatmap& hm,
                  const MctsParams& params, std::uint64_t seed, const Budget& budget,
                  const SolveObserver& observer = {});

}  // namespace hmcts

#endif  // HMCTS_MCTS_HPP_
