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

#include "empeq/scf.h"

#include <stdexcept>

namespace empeq {

Scf::Scf(IdList agents, std::vector<IdList> type_spaces, IdList outcomes,
         std::vector<Lottery> outcome_map, UtilityTable utilities)
    : agents_(std::move(agents)),
      type_spaces_(std::move(type_spaces)),
      outcomes_(std::move(outcomes)),
      outcome_map_(std::move(outcome_map)),
      utilities_(std::move(utilities)) {
  if (static_cast<int>(type_spaces_.size()) != agents_.size()) {
    throw std::invalid_argument("one type space per agent required");
  }
  std::vector<int> sizes;
  for (const auto& types : type_spaces_) sizes.push_back(types.size());
  profiles_ = ProfileSpace(sizes);
  if (static_cast<int64_t>(outcome_map_.size()) != profiles_.total()) {
    throw std::invalid_argument("scf must be defined on every type profile");
  }
  if (utilities_.num_agents() != num_agents() ||
      utilities_.num_outcomes() != outcomes_.size()) {
    throw std::invalid_argument("utility table does not match the scf");
  }
  welfare_.resize(num_agents());
  for (int agent = 0; agent < num_agents(); ++agent) {
    if (utilities_.num_types(agent) != sizes[agent]) {
      throw std::invalid_argument("utility table does not match type space");
    }
    welfare_[agent].resize(sizes[agent]);
    for (int type = 0; type < sizes[agent]; ++type) {
      auto& row = welfare_[agent][type];
      row.reserve(profiles_.total());
      for (int64_t profile = 0; profile < profiles_.total(); ++profile) {
        const auto& lottery = outcome_map_[profile];
        for (const auto& entry : lottery.weights()) {
          if (entry.first >= outcomes_.size()) {
            throw std::invalid_argument("outcome index out of range");
          }
        }
        row.push_back(utilities_.Expected(agent, type, lottery));
      }
    }
  }
}

Mechanism Scf::RevelationMechanism() const {
  return Mechanism(agents_, type_spaces_, outcomes_, outcome_map_);
}

std::string PropertyReport::Signs() const {
  auto sign = [](const Verdict& v) { return v.holds ? "+" : "-"; };
  return std::string(sign(strategy_proof)) + "," +
         sign(essentially_unique_dominant) + "," +
         sign(non_bossy_welfare_outcome) + "," + sign(outcome_rectangular);
}

Verdict IsStrategyProof(const Scf& scf) {
  const auto& space = scf.profiles();
  for (int64_t theta = 0; theta < space.total(); ++theta) {
    for (int i = 0; i < scf.num_agents(); ++i) {
      const int own = space.Component(theta, i);
      for (int report = 0; report < space.size(i); ++report) {
        if (report == own) continue;
        const int64_t lie = space.Replace(theta, i, report);
        if (scf.Welfare(i, own, theta) < scf.Welfare(i, own, lie)) {
          return {false, Witness{theta, i, report}};
        }
      }
    }
  }
  return {};
}

Verdict IsNonBossyWelfareOutcome(const Scf& scf) {
  const auto& space = scf.profiles();
  for (int64_t theta = 0; theta < space.total(); ++theta) {
    for (int i = 0; i < scf.num_agents(); ++i) {
      const int own = space.Component(theta, i);
      for (int report = 0; report < space.size(i); ++report) {
        if (report == own) continue;
        const int64_t lie = space.Replace(theta, i, report);
        if (scf.Welfare(i, own, theta) == scf.Welfare(i, own, lie) &&
            !(scf.outcome(theta) == scf.outcome(lie))) {
          return {false, Witness{theta, i, report}};
        }
      }
    }
  }
  return {};
}

Verdict HasEssentiallyUniqueDominantStrategies(const Scf& scf) {
  const auto& space = scf.profiles();
  for (int64_t theta = 0; theta < space.total(); ++theta) {
    for (int i = 0; i < scf.num_agents(); ++i) {
      const int own = space.Component(theta, i);
      for (int report = 0; report < space.size(i); ++report) {
        if (report == own) continue;
        const int64_t lie = space.Replace(theta, i, report);
        if (!(scf.Welfare(i, own, theta) == scf.Welfare(i, own, lie)) ||
            scf.outcome(theta) == scf.outcome(lie)) {
          continue;
        }
        // Search tau_{-i} with u_i(g(tau_{-i}, theta_i)) > u_i(g(tau)).
        bool punished = false;
        for (int64_t truthful = 0; truthful < space.total() && !punished;
             ++truthful) {
          if (space.Component(truthful, i) != own) continue;
          const int64_t deviated = space.Replace(truthful, i, report);
          punished = scf.Welfare(i, own, truthful) >
                     scf.Welfare(i, own, deviated);
        }
        if (!punished) return {false, Witness{theta, i, report}};
      }
    }
  }
  return {};
}

Verdict SatisfiesOutcomeRectangular(const Scf& scf) {
  const auto& space = scf.profiles();
  for (int64_t theta = 0; theta < space.total(); ++theta) {
    for (int64_t tau = 0; tau < space.total(); ++tau) {
      if (theta == tau || scf.outcome(theta) == scf.outcome(tau)) continue;
      bool premise = true;
      for (int i = 0; i < scf.num_agents() && premise; ++i) {
        const int64_t mixed =
            space.Replace(tau, i, space.Component(theta, i));
        premise = scf.outcome(mixed) == scf.outcome(tau);
      }
      if (premise) return {false, Witness{theta, -1, -1, tau}};
    }
  }
  return {};
}

PropertyReport Classify(const Scf& scf) {
  PropertyReport report;
  report.strategy_proof = IsStrategyProof(scf);
  report.essentially_unique_dominant =
      HasEssentiallyUniqueDominantStrategies(scf);
  report.non_bossy_welfare_outcome = IsNonBossyWelfareOutcome(scf);
  report.outcome_rectangular = SatisfiesOutcomeRectangular(scf);
  return report;
}

BayesianGame DirectRevelationGame(const Scf& scf, const Prior& prior) {
  if (!(prior.space() == scf.profiles())) {
    throw std::invalid_argument("prior is not over the scf's type space");
  }
  return BayesianGame(scf.RevelationMechanism(), scf.type_spaces(), prior,
                      scf.utilities());
}

Scf ScfFromRevelationGame(const BayesianGame& game) {
  const auto& mechanism = game.mechanism();
  if (mechanism.message_spaces() != game.type_spaces()) {
    throw std::invalid_argument(
        "not a revelation game: message spaces differ from type spaces");
  }
  return Scf(mechanism.agents(), game.type_spaces(), mechanism.outcomes(),
             mechanism.outcome_fn(), game.utilities());
}

std::string DescribeProfile(const std::vector<IdList>& spaces,
                            const IdList& agents, int64_t profile) {
  std::vector<int> sizes;
  for (const auto& s : spaces) sizes.push_back(s.size());
  const ProfileSpace space(sizes);
  std::string text = "(";
  for (int i = 0; i < agents.size(); ++i) {
    if (i > 0) text += ",";
    text += agents.name(i) + "=" +
            spaces[i].name(space.Component(profile, i));
  }
  return text + ")";
}

std::string DescribeWitness(const Scf& scf, const Witness& witness) {
  std::string text =
      "theta=" +
      DescribeProfile(scf.type_spaces(), scf.agents(), witness.profile);
  if (witness.agent >= 0) {
    text += " agent=" + scf.agents().name(witness.agent) +
            " report=" + scf.types(witness.agent).name(witness.report);
  }
  if (witness.other_profile >= 0) {
    text += " tau=" + DescribeProfile(scf.type_spaces(), scf.agents(),
                                      witness.other_profile);
  }
  return text;
}

}  // namespace empeq
