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

#ifndef EMPEQ_MECHANISMS_H_
#define EMPEQ_MECHANISMS_H_

#include <string>
#include <vector>

#include "empeq/game.h"
#include "empeq/scf.h"

namespace empeq {

struct AuctionSpec {
  int n_bidders = 2;
  std::vector<Rational> value_grid;  // strictly increasing, length >= 2
};

struct ExchangeSpec {
  int n_agents = 2;  // agent k is endowed with house k
};

struct SchoolChoiceSpec {
  int n_students = 3;
  int n_schools = 3;
  std::vector<int> capacities;               // per school, each >= 1
  std::vector<std::vector<int>> priorities;  // per school, strict order of students
  // When set, each student's domain also contains truncated lists; schools
  // left off the list rank below staying unassigned.
  bool outside_option = false;
};

// Agent names used by the builders: A, B, C, ...
std::vector<std::string> AgentNames(int n);

// Second-price auction. Types are bids on the grid (labelled L, M, H for a
// three-point grid, otherwise by value). Ties are broken uniformly and the
// winner pays the highest losing bid; quasi-linear utilities.
Scf BuildSecondPrice(const AuctionSpec& spec);

// First-price variant (winner pays own bid). Not strategy-proof; used as a
// negative control.
Scf BuildFirstPrice(const AuctionSpec& spec);

// Top trading cycles for housing markets with rank utilities.
Scf BuildTtc(const ExchangeSpec& spec);

// Pivotal (Clarke) mechanism for a binary public project whose cost is shared
// equally. Types are gross values on the grid.
Scf BuildPivotal(int n_agents, const std::vector<Rational>& value_grid,
                 const Rational& cost = Rational(0));

// Student-proposing deferred acceptance with rank utilities.
Scf BuildSpda(const SchoolChoiceSpec& spec);
SchoolChoiceSpec DefaultSchoolChoice();

// Uniform rule for rationing `amount` among agents with single-peaked
// preferences; utilities are -|allocation - peak|.
Scf BuildUniformRule(int n_agents, const Rational& amount,
                     const std::vector<Rational>& peak_grid);
// Allocation of the uniform rule for reported peaks.
std::vector<Rational> UniformAllocation(const std::vector<Rational>& peaks,
                                        const Rational& amount);

// Median voting without phantoms. Throws std::invalid_argument
// ("phantom configuration required") for an even voter count.
Scf BuildMedianVoting(int n_voters, const std::vector<Rational>& alternatives);

// Constant scf used by tests and sanity checks.
Scf BuildConstant(int n_agents, int n_types);

// Dictatorship of agent 0 over `n_outcomes` alternatives with strict rank
// preferences: each type names the dictator's favourite.
Scf BuildDictatorship(int n_agents, int n_outcomes);

// Efficient dictatorship of agent 2 in which agent 2's first type is
// indifferent, together with the mechanism that offers agent 2 k copies of
// the message selecting outcome a.
struct Example1 {
  Scf revelation;
  Mechanism enlarged;
};
Example1 BuildExample1(int k);
// Game on the enlarged mechanism with the example's type space.
BayesianGame Example1EnlargedGame(const Example1& example, const Prior& prior);

// Admissible outcome set of a correspondence at one type profile: either the
// listed outcomes as singletons or every mixture over them.
struct AdmissibleSet {
  std::vector<int> outcomes;
  bool mixtures = false;

  bool Contains(const Lottery& lottery) const;
};

struct Example5 {
  Rational eps;
  std::vector<IdList> type_spaces;
  UtilityTable utilities;
  Mechanism mechanism;
  std::vector<AdmissibleSet> correspondence;  // indexed by type profile
};
// Requires 0 < eps < 1.
Example5 BuildExample5(const Rational& eps);

// Every selection from the correspondence whose mixture cells lie on the grid
// {0, step, 2 step, ..., 1} and that is strategy-proof.
std::vector<Scf> StrategyProofSelections(const Example5& example,
                                         const Rational& step);

// Outcomes reachable under the messages that survive iterated elimination of
// weakly dominated messages, per type profile.
std::vector<std::vector<int>> SurvivingOutcomes(const Example5& example);

// Named finite instances for the property table: second-price (3 bidders,
// 3 values), TTC (2 and 3 agents), pivotal (3 agents, symmetric 4-value
// grid), SPDA (3x3, capacity 1), uniform (3 agents, 4 peaks), median
// (3 voters, 5 alternatives).
struct NamedScf {
  std::string name;
  Scf scf;
};
std::vector<NamedScf> DefaultInstances();

}  // namespace empeq

#endif  // EMPEQ_MECHANISMS_H_
