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

#ifndef EMPEQ_SCF_H_
#define EMPEQ_SCF_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "empeq/game.h"

namespace empeq {

// A social choice function g on a finite payoff-type space, lottery valued so
// that uniform tie-breaking is representable.
class Scf {
 public:
  Scf() = default;
  Scf(IdList agents, std::vector<IdList> type_spaces, IdList outcomes,
      std::vector<Lottery> outcome_map, UtilityTable utilities);

  const IdList& agents() const { return agents_; }
  int num_agents() const { return agents_.size(); }
  const std::vector<IdList>& type_spaces() const { return type_spaces_; }
  const IdList& types(int agent) const { return type_spaces_.at(agent); }
  const IdList& outcomes() const { return outcomes_; }
  const ProfileSpace& profiles() const { return profiles_; }
  const Lottery& outcome(int64_t profile) const {
    return outcome_map_.at(profile);
  }
  const std::vector<Lottery>& outcome_map() const { return outcome_map_; }
  const UtilityTable& utilities() const { return utilities_; }

  // u_i(g(profile) | theta_i = type).
  const Rational& Welfare(int agent, int type, int64_t profile) const {
    return welfare_[agent][type][profile];
  }

  // The direct revelation mechanism (Theta, g).
  Mechanism RevelationMechanism() const;

 private:
  IdList agents_;
  std::vector<IdList> type_spaces_;
  IdList outcomes_;
  ProfileSpace profiles_;
  std::vector<Lottery> outcome_map_;
  UtilityTable utilities_;
  std::vector<std::vector<std::vector<Rational>>> welfare_;
};

// A counterexample to one of the scf properties. For the unilateral
// properties it is (theta, i, tau_i); for the outcome rectangular property it
// is the ordered pair (theta, tau).
struct Witness {
  int64_t profile = -1;
  int agent = -1;
  int report = -1;
  int64_t other_profile = -1;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
};

struct PropertyReport {
  Verdict strategy_proof;
  Verdict essentially_unique_dominant;
  Verdict non_bossy_welfare_outcome;
  Verdict outcome_rectangular;

  // "+"/"-" in the order SP, EUDS, NBWO, ORP, comma separated.
  std::string Signs() const;
};

Verdict IsStrategyProof(const Scf& scf);
Verdict IsNonBossyWelfareOutcome(const Scf& scf);
Verdict HasEssentiallyUniqueDominantStrategies(const Scf& scf);
Verdict SatisfiesOutcomeRectangular(const Scf& scf);
PropertyReport Classify(const Scf& scf);

// (Theta, g, p).
BayesianGame DirectRevelationGame(const Scf& scf, const Prior& prior);

// Recovers the scf from a game whose message spaces equal its type spaces.
// Throws std::invalid_argument for non-revelation games.
Scf ScfFromRevelationGame(const BayesianGame& game);

// Human-readable "(A=M,B=H)".
std::string DescribeProfile(const std::vector<IdList>& spaces,
                            const IdList& agents, int64_t profile);
std::string DescribeWitness(const Scf& scf, const Witness& witness);

}  // namespace empeq

#endif  // EMPEQ_SCF_H_
