// Copyright 2026 The Empeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMPEQ_DOCUMENT_H_
#define EMPEQ_DOCUMENT_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "empeq/game.h"

namespace empeq {

using Json = nlohmann::ordered_json;

// Malformed or inconsistent document content.
class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Game document layout (rationals are "p/q" or integer strings):
//   agents: [agent, ...]
//   outcomes: [outcome, ...]
//   type_spaces: {agent: [type, ...]}
//   utilities: {agent: {type: {outcome: rational}}}
//   prior: {"t1,t2,...": rational}          zero weights omitted
//   mechanism: {message_spaces: {agent: [message, ...]},
//               outcome_fn: {"m1,m2,...": {outcome: rational}}}
Json GameToJson(const BayesianGame& game);
BayesianGame GameFromJson(const Json& doc);

// Pretty-printed document with a trailing newline.
std::string EmitGame(const BayesianGame& game);
BayesianGame ParseGame(const std::string& text);

// Strategy profile file: {agent: {type: {message: probability}}}, with
// probabilities given as rational strings or JSON numbers. Types outside the
// prior support may be omitted; omitted messages get probability 0.
StrategyProfile ProfileFromJson(const BayesianGame& game, const Json& doc);
Json ProfileToJson(const BayesianGame& game, const StrategyProfile& profile);

// "t1,t2,..." keys in agent order.
std::string ProfileKey(const std::vector<IdList>& spaces,
                       const ProfileSpace& space, int64_t profile);

// Full-support prior with independent uniform integer weights in [1, 100].
Prior RandomFullSupportPrior(const ProfileSpace& space, std::mt19937_64& rng);

}  // namespace empeq

#endif  // EMPEQ_DOCUMENT_H_
