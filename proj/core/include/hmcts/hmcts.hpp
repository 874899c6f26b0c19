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

#ifndef HMCTS_HMCTS_HPP_
#define HMCTS_HMCTS_HPP_

#include "hmcts/error.hpp"
#include "hmcts/eval.hpp"
#include "hmcts/heatmap.hpp"
#include "hmcts/instance.hpp"
#include "hmcts/knn_stats.hpp"
#include "hmcts/mcts.hpp"
#include "hmcts/tour.hpp"
#include "hmcts/tuner.hpp"

#endif  // HMCTS_HMCTS_HPP_
