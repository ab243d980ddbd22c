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

#ifndef EMPEQ_GAME_H_
#define EMPEQ_GAME_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "empeq/ids.h"
#include "empeq/rational.h"

namespace empeq {

// Default tolerance for float-mode best-response comparisons.
inline constexpr double kPayoffTolerance = 1e-9;
// Normalization tolerance for float distributions.
inline constexpr double kDistributionTolerance = 1e-12;

// A probability distribution over outcome indices with exact weights. Stored
// sorted by outcome with zero weights dropped, so equality of lotteries is
// equality of distributions.
class Lottery {
 public:
  using Entry = std::pair<int, Rational>;

  Lottery() = default;
  // Merges duplicate outcomes. Throws if a weight is negative, the weights do
  // not sum to one, or the support is empty.
  explicit Lottery(std::vector<Entry> weights);

  static Lottery Degenerate(int outcome);
  static Lottery Uniform(std::span<const int> outcomes);

  const std::vector<Entry>& weights() const { return weights_; }
  Rational Probability(int outcome) const;
  bool IsDegenerate() const { return weights_.size() == 1; }

  bool operator==(const Lottery& other) const {
    return weights_ == other.weights_;
  }

 private:
  std::vector<Entry> weights_;
};

// u_i(x | theta_i) for every agent, type and outcome.
class UtilityTable {
 public:
  UtilityTable() = default;
  UtilityTable(std::vector<int> types_per_agent, int num_outcomes);

  int num_agents() const { return static_cast<int>(values_.size()); }
  int num_types(int agent) const {
    return static_cast<int>(values_.at(agent).size());
  }
  int num_outcomes() const { return num_outcomes_; }

  const Rational& at(int agent, int type, int outcome) const {
    return values_.at(agent).at(type).at(outcome);
  }
  void set(int agent, int type, int outcome, Rational value) {
    values_.at(agent).at(type).at(outcome) = std::move(value);
  }

  Rational Expected(int agent, int type, const Lottery& lottery) const;

  bool operator==(const UtilityTable& other) const {
    return values_ == other.values_;
  }

 private:
  std::vector<std::vector<std::vector<Rational>>> values_;
  int num_outcomes_ = 0;
};

// A finite mechanism (M, phi): message spaces and an outcome function from
// message profiles into lotteries.
class Mechanism {
 public:
  Mechanism() = default;
  Mechanism(IdList agents, std::vector<IdList> message_spaces, IdList outcomes,
            std::vector<Lottery> outcome_fn);

  const IdList& agents() const { return agents_; }
  int num_agents() const { return agents_.size(); }
  const IdList& messages(int agent) const { return message_spaces_.at(agent); }
  const std::vector<IdList>& message_spaces() const { return message_spaces_; }
  const IdList& outcomes() const { return outcomes_; }
  const ProfileSpace& profiles() const { return profiles_; }
  const Lottery& outcome(int64_t message_profile) const {
    return outcome_fn_.at(message_profile);
  }
  const std::vector<Lottery>& outcome_fn() const { return outcome_fn_; }

  bool operator==(const Mechanism& other) const;

 private:
  IdList agents_;
  std::vector<IdList> message_spaces_;
  IdList outcomes_;
  ProfileSpace profiles_;
  std::vector<Lottery> outcome_fn_;
};

// Common prior over type profiles.
class Prior {
 public:
  Prior() = default;
  Prior(ProfileSpace types, std::vector<Rational> weights);

  static Prior Degenerate(ProfileSpace types, int64_t profile);
  static Prior Uniform(ProfileSpace types);

  const ProfileSpace& space() const { return space_; }
  const Rational& weight(int64_t profile) const { return weights_.at(profile); }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<int64_t>& support() const { return support_; }
  bool full_support() const {
    return static_cast<int64_t>(support_.size()) == space_.total();
  }
  bool degenerate() const { return support_.size() == 1; }
  Rational Marginal(int agent, int type) const;

  bool operator==(const Prior& other) const {
    return space_ == other.space_ && weights_ == other.weights_;
  }

 private:
  ProfileSpace space_;
  std::vector<Rational> weights_;
  std::vector<int64_t> support_;
};

// Gamma = (M, phi, p) together with the payoff environment.
class BayesianGame {
 public:
  // An opponent type profile theta (full profile, theta_i fixed) with its
  // conditional probability p(theta_{-i} | theta_i).
  struct Conditional {
    int64_t type_profile;
    Rational weight;
    double weight_double;
  };

  BayesianGame() = default;
  BayesianGame(Mechanism mechanism, std::vector<IdList> type_spaces,
               Prior prior, UtilityTable utilities);

  const Mechanism& mechanism() const { return mechanism_; }
  const std::vector<IdList>& type_spaces() const { return type_spaces_; }
  const IdList& types(int agent) const { return type_spaces_.at(agent); }
  const ProfileSpace& type_profiles() const { return prior_.space(); }
  const Prior& prior() const { return prior_; }
  const UtilityTable& utilities() const { return utilities_; }
  int num_agents() const { return mechanism_.num_agents(); }
  int num_messages(int agent) const { return mechanism_.messages(agent).size(); }

  bool InSupport(int agent, int type) const {
    return !conditionals_.at(agent).at(type).empty();
  }
  const std::vector<Conditional>& Conditionals(int agent, int type) const {
    return conditionals_.at(agent).at(type);
  }

  // u_i(phi(m) | theta_i), cached for every message profile.
  const Rational& Payoff(int agent, int type, int64_t message_profile) const {
    return payoffs_[agent][type][message_profile];
  }
  double PayoffDouble(int agent, int type, int64_t message_profile) const {
    return payoffs_double_[agent][type][message_profile];
  }
  // max - min of all cached payoffs.
  double PayoffRange() const { return payoff_range_; }

  bool operator==(const BayesianGame& other) const {
    return mechanism_ == other.mechanism_ &&
           type_spaces_ == other.type_spaces_ && prior_ == other.prior_ &&
           utilities_ == other.utilities_;
  }

 private:
  Mechanism mechanism_;
  std::vector<IdList> type_spaces_;
  Prior prior_;
  UtilityTable utilities_;
  std::vector<std::vector<std::vector<Conditional>>> conditionals_;
  std::vector<std::vector<std::vector<Rational>>> payoffs_;
  std::vector<std::vector<std::vector<double>>> payoffs_double_;
  double payoff_range_ = 0.0;
};

// Behavior strategies: for each agent and type, a distribution over that
// agent's messages. Types outside the prior support may carry an empty
// distribution. The scalar type tags the profile as float or exact.
template <typename T>
class BasicStrategyProfile {
 public:
  using Distribution = std::vector<T>;

  BasicStrategyProfile() = default;
  explicit BasicStrategyProfile(std::vector<std::vector<Distribution>> dists)
      : dists_(std::move(dists)) {}

  // Uniform play for every type of every agent.
  static BasicStrategyProfile Uniform(const BayesianGame& game);
  // Pure play: messages[agent][type] is a message index, or -1 to leave the
  // type unspecified.
  static BasicStrategyProfile Pure(const BayesianGame& game,
                                   const std::vector<std::vector<int>>& messages);

  int num_agents() const { return static_cast<int>(dists_.size()); }
  int num_types(int agent) const {
    return static_cast<int>(dists_.at(agent).size());
  }
  const Distribution& at(int agent, int type) const {
    return dists_.at(agent).at(type);
  }
  Distribution& at(int agent, int type) { return dists_.at(agent).at(type); }
  const std::vector<std::vector<Distribution>>& data() const { return dists_; }

  bool operator==(const BasicStrategyProfile& other) const = default;

 private:
  std::vector<std::vector<Distribution>> dists_;
};

using StrategyProfile = BasicStrategyProfile<double>;
using ExactStrategyProfile = BasicStrategyProfile<Rational>;

StrategyProfile ToDouble(const ExactStrategyProfile& profile);

// Max-norm distance over all coordinates present in both profiles.
double MaxDistance(const StrategyProfile& a, const StrategyProfile& b);

// U(sigma_{-i}, delta_m | p, theta_i) for every message m of `agent`.
// Throws std::invalid_argument("type outside prior support") when theta_i
// has zero prior marginal.
template <typename T>
std::vector<T> MessagePayoffs(const BayesianGame& game,
                              const BasicStrategyProfile<T>& profile, int agent,
                              int type);

// U(sigma_{-i}, mu_i | p, theta_i); multilinear in the distributions.
template <typename T>
T ExpectedUtility(const BayesianGame& game,
                  const BasicStrategyProfile<T>& profile, int agent, int type,
                  std::span<const T> action_dist);

// Game with the degenerate prior at `type_profile`.
BayesianGame ToCompleteInfo(const BayesianGame& game, int64_t type_profile);

// Messages m_i with u_i(phi(m_{-i}, m_i)|theta_i) >= u_i(phi(m_{-i}, r_i)|theta_i)
// for all r_i and m_{-i}, compared exactly.
std::vector<int> WeaklyDominantMessages(const Mechanism& mechanism,
                                        const UtilityTable& utilities,
                                        int agent, int type);

// True iff `message` does strictly better than every other message against
// every opponent message profile.
bool IsStrictlyDominant(const Mechanism& mechanism,
                        const UtilityTable& utilities, int agent, int type,
                        int message);

// Iterated elimination of weakly dominated messages. Each round removes, for
// every agent and type, the messages weakly dominated by another surviving
// message against all profiles of surviving opponent messages (pooled over
// opponent types). Returns surviving[agent][type] as message indices.
std::vector<std::vector<std::vector<int>>> IteratedWeakDominance(
    const Mechanism& mechanism, const UtilityTable& utilities);

// True iff delta_message is within `tolerance` of the best pure reply.
template <typename T>
bool IsBestResponse(const BayesianGame& game,
                    const BasicStrategyProfile<T>& profile, int agent, int type,
                    int message, double tolerance = kPayoffTolerance);

struct ProfileViolation {
  enum class Kind { kShape, kNegative, kNormalization, kCoverage };
  Kind kind;
  int agent;
  int type;
  std::string detail;
};

template <typename T>
std::vector<ProfileViolation> ValidateProfile(
    const BayesianGame& game, const BasicStrategyProfile<T>& profile);

}  // namespace empeq

#endif  // EMPEQ_GAME_H_
