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

#include "empeq/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace empeq {
namespace {

template <typename T>
struct Scalar;

template <>
struct Scalar<double> {
  static double Weight(const BayesianGame::Conditional& c) {
    return c.weight_double;
  }
  static double Payoff(const BayesianGame& g, int agent, int type,
                       int64_t m) {
    return g.PayoffDouble(agent, type, m);
  }
  static bool Exceeds(double a, double b, double tolerance) {
    return a > b + tolerance;
  }
};

template <>
struct Scalar<Rational> {
  static const Rational& Weight(const BayesianGame::Conditional& c) {
    return c.weight;
  }
  static const Rational& Payoff(const BayesianGame& g, int agent, int type,
                                int64_t m) {
    return g.Payoff(agent, type, m);
  }
  static bool Exceeds(const Rational& a, const Rational& b, double) {
    return a > b;
  }
};

// Advances a mixed-radix counter (last agent fastest).
bool Increment(std::vector<int>& digits, const std::vector<int>& sizes) {
  for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
    if (++digits[k] < sizes[k]) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace

Lottery::Lottery(std::vector<Entry> weights) {
  std::map<int, Rational> merged;
  for (auto& [outcome, weight] : weights) {
    if (outcome < 0) throw std::invalid_argument("negative outcome index");
    if (weight < 0) throw std::invalid_argument("negative lottery weight");
    merged[outcome] += weight;
  }
  Rational total = 0;
  for (auto& [outcome, weight] : merged) {
    total += weight;
    if (weight != 0) weights_.emplace_back(outcome, weight);
  }
  if (weights_.empty()) throw std::invalid_argument("lottery has empty support");
  if (total != 1) {
    throw std::invalid_argument("lottery weights sum to " + ToString(total));
  }
}

Lottery Lottery::Degenerate(int outcome) {
  return Lottery({{outcome, Rational(1)}});
}

Lottery Lottery::Uniform(std::span<const int> outcomes) {
  std::vector<Entry> entries;
  const Rational share(1, static_cast<long>(outcomes.size()));
  for (int outcome : outcomes) entries.emplace_back(outcome, share);
  return Lottery(std::move(entries));
}

Rational Lottery::Probability(int outcome) const {
  auto it = std::lower_bound(
      weights_.begin(), weights_.end(), outcome,
      [](const Entry& entry, int value) { return entry.first < value; });
  if (it == weights_.end() || it->first != outcome) return 0;
  return it->second;
}

UtilityTable::UtilityTable(std::vector<int> types_per_agent, int num_outcomes)
    : num_outcomes_(num_outcomes) {
  values_.resize(types_per_agent.size());
  for (size_t agent = 0; agent < types_per_agent.size(); ++agent) {
    values_[agent].assign(types_per_agent[agent],
                          std::vector<Rational>(num_outcomes, Rational(0)));
  }
}

Rational UtilityTable::Expected(int agent, int type,
                                const Lottery& lottery) const {
  Rational total = 0;
  for (const auto& [outcome, weight] : lottery.weights()) {
    total += weight * at(agent, type, outcome);
  }
  return total;
}

Mechanism::Mechanism(IdList agents, std::vector<IdList> message_spaces,
                     IdList outcomes, std::vector<Lottery> outcome_fn)
    : agents_(std::move(agents)),
      message_spaces_(std::move(message_spaces)),
      outcomes_(std::move(outcomes)),
      outcome_fn_(std::move(outcome_fn)) {
  if (agents_.empty()) throw std::invalid_argument("mechanism has no agents");
  if (static_cast<int>(message_spaces_.size()) != agents_.size()) {
    throw std::invalid_argument("one message space per agent required");
  }
  std::vector<int> sizes;
  for (const auto& space : message_spaces_) {
    if (space.empty()) throw std::invalid_argument("empty message space");
    sizes.push_back(space.size());
  }
  profiles_ = ProfileSpace(std::move(sizes));
  if (static_cast<int64_t>(outcome_fn_.size()) != profiles_.total()) {
    throw std::invalid_argument(
        "outcome function must cover every message profile");
  }
  for (const auto& lottery : outcome_fn_) {
    if (lottery.weights().empty()) {
      throw std::invalid_argument("outcome function has an undefined profile");
    }
    for (const auto& entry : lottery.weights()) {
      if (entry.first >= outcomes_.size()) {
        throw std::invalid_argument("outcome index out of range");
      }
    }
  }
}

bool Mechanism::operator==(const Mechanism& other) const {
  return agents_ == other.agents_ &&
         message_spaces_ == other.message_spaces_ &&
         outcomes_ == other.outcomes_ && outcome_fn_ == other.outcome_fn_;
}

Prior::Prior(ProfileSpace types, std::vector<Rational> weights)
    : space_(std::move(types)), weights_(std::move(weights)) {
  if (static_cast<int64_t>(weights_.size()) != space_.total()) {
    throw std::invalid_argument("prior must weight every type profile");
  }
  Rational total = 0;
  for (int64_t i = 0; i < space_.total(); ++i) {
    if (weights_[i] < 0) throw std::invalid_argument("negative prior weight");
    if (weights_[i] > 0) support_.push_back(i);
    total += weights_[i];
  }
  if (total != 1) {
    throw std::invalid_argument("prior weights sum to " + ToString(total));
  }
}

Prior Prior::Degenerate(ProfileSpace types, int64_t profile) {
  std::vector<Rational> weights(types.total(), Rational(0));
  weights.at(profile) = 1;
  return Prior(std::move(types), std::move(weights));
}

Prior Prior::Uniform(ProfileSpace types) {
  const Rational share(1, types.total());
  std::vector<Rational> weights(types.total(), share);
  return Prior(std::move(types), std::move(weights));
}

Rational Prior::Marginal(int agent, int type) const {
  Rational total = 0;
  for (int64_t profile : support_) {
    if (space_.Component(profile, agent) == type) total += weights_[profile];
  }
  return total;
}

BayesianGame::BayesianGame(Mechanism mechanism, std::vector<IdList> type_spaces,
                           Prior prior, UtilityTable utilities)
    : mechanism_(std::move(mechanism)),
      type_spaces_(std::move(type_spaces)),
      prior_(std::move(prior)),
      utilities_(std::move(utilities)) {
  const int n = mechanism_.num_agents();
  if (static_cast<int>(type_spaces_.size()) != n) {
    throw std::invalid_argument("one type space per agent required");
  }
  std::vector<int> sizes;
  for (const auto& types : type_spaces_) {
    if (types.empty()) throw std::invalid_argument("empty type space");
    sizes.push_back(types.size());
  }
  if (prior_.space().sizes() != sizes) {
    throw std::invalid_argument("prior does not range over the type space");
  }
  if (utilities_.num_agents() != n ||
      utilities_.num_outcomes() != mechanism_.outcomes().size()) {
    throw std::invalid_argument("utility table does not match the mechanism");
  }
  for (int agent = 0; agent < n; ++agent) {
    if (utilities_.num_types(agent) != sizes[agent]) {
      throw std::invalid_argument("utility table does not match type space");
    }
  }

  conditionals_.resize(n);
  for (int agent = 0; agent < n; ++agent) {
    conditionals_[agent].resize(sizes[agent]);
    std::vector<Rational> marginal(sizes[agent], Rational(0));
    for (int64_t profile : prior_.support()) {
      marginal[prior_.space().Component(profile, agent)] +=
          prior_.weight(profile);
    }
    for (int64_t profile : prior_.support()) {
      const int type = prior_.space().Component(profile, agent);
      Rational weight = prior_.weight(profile) / marginal[type];
      const double as_double = ToDouble(weight);
      conditionals_[agent][type].push_back(
          {profile, std::move(weight), as_double});
    }
  }

  const int64_t total = mechanism_.profiles().total();
  payoffs_.resize(n);
  payoffs_double_.resize(n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int agent = 0; agent < n; ++agent) {
    payoffs_[agent].resize(sizes[agent]);
    payoffs_double_[agent].resize(sizes[agent]);
    for (int type = 0; type < sizes[agent]; ++type) {
      auto& exact = payoffs_[agent][type];
      auto& approx = payoffs_double_[agent][type];
      exact.reserve(total);
      approx.reserve(total);
      for (int64_t m = 0; m < total; ++m) {
        exact.push_back(
            utilities_.Expected(agent, type, mechanism_.outcome(m)));
        approx.push_back(ToDouble(exact.back()));
        lo = std::min(lo, approx.back());
        hi = std::max(hi, approx.back());
      }
    }
  }
  payoff_range_ = hi - lo;
}

template <typename T>
BasicStrategyProfile<T> BasicStrategyProfile<T>::Uniform(
    const BayesianGame& game) {
  std::vector<std::vector<Distribution>> dists(game.num_agents());
  for (int agent = 0; agent < game.num_agents(); ++agent) {
    const int n = game.num_messages(agent);
    dists[agent].assign(game.types(agent).size(),
                        Distribution(n, T(1) / T(n)));
  }
  return BasicStrategyProfile(std::move(dists));
}

template <typename T>
BasicStrategyProfile<T> BasicStrategyProfile<T>::Pure(
    const BayesianGame& game, const std::vector<std::vector<int>>& messages) {
  std::vector<std::vector<Distribution>> dists(game.num_agents());
  for (int agent = 0; agent < game.num_agents(); ++agent) {
    dists[agent].resize(game.types(agent).size());
    for (int type = 0; type < game.types(agent).size(); ++type) {
      const int message = messages.at(agent).at(type);
      if (message < 0) continue;
      dists[agent][type].assign(game.num_messages(agent), T(0));
      dists[agent][type].at(message) = T(1);
    }
  }
  return BasicStrategyProfile(std::move(dists));
}

template class BasicStrategyProfile<double>;
template class BasicStrategyProfile<Rational>;

StrategyProfile ToDouble(const ExactStrategyProfile& profile) {
  std::vector<std::vector<std::vector<double>>> dists(profile.num_agents());
  for (int agent = 0; agent < profile.num_agents(); ++agent) {
    for (const auto& dist : profile.data()[agent]) {
      std::vector<double> converted;
      converted.reserve(dist.size());
      for (const auto& p : dist) converted.push_back(ToDouble(p));
      dists[agent].push_back(std::move(converted));
    }
  }
  return StrategyProfile(std::move(dists));
}

double MaxDistance(const StrategyProfile& a, const StrategyProfile& b) {
  double distance = 0.0;
  const int n = std::min(a.num_agents(), b.num_agents());
  for (int agent = 0; agent < n; ++agent) {
    const int types = std::min(a.num_types(agent), b.num_types(agent));
    for (int type = 0; type < types; ++type) {
      const auto& x = a.at(agent, type);
      const auto& y = b.at(agent, type);
      if (x.size() != y.size()) continue;
      for (size_t m = 0; m < x.size(); ++m) {
        distance = std::max(distance, std::fabs(x[m] - y[m]));
      }
    }
  }
  return distance;
}

template <typename T>
std::vector<T> MessagePayoffs(const BayesianGame& game,
                              const BasicStrategyProfile<T>& profile, int agent,
                              int type) {
  if (!game.InSupport(agent, type)) {
    throw std::invalid_argument("type outside prior support");
  }
  const int n = game.num_agents();
  const auto& messages = game.mechanism().profiles();
  const auto& type_space = game.type_profiles();
  std::vector<T> result(game.num_messages(agent), T(0));

  std::vector<const std::vector<T>*> opponent(n, nullptr);
  std::vector<int> digits(n, 0);
  for (const auto& conditional : game.Conditionals(agent, type)) {
    for (int j = 0; j < n; ++j) {
      if (j == agent) continue;
      const int theta_j = type_space.Component(conditional.type_profile, j);
      const auto& dist = profile.at(j, theta_j);
      if (static_cast<int>(dist.size()) != game.num_messages(j)) {
        throw std::invalid_argument("profile missing a supported type");
      }
      opponent[j] = &dist;
    }
    const auto& weight = Scalar<T>::Weight(conditional);
    std::fill(digits.begin(), digits.end(), 0);
    int64_t m = 0;
    do {
      T prob = weight;
      bool zero = false;
      for (int j = 0; j < n && !zero; ++j) {
        if (j == agent) continue;
        const T& pj = (*opponent[j])[digits[j]];
        if (pj == 0) {
          zero = true;
        } else {
          prob *= pj;
        }
      }
      if (!zero) {
        result[digits[agent]] += prob * Scalar<T>::Payoff(game, agent, type, m);
      }
      ++m;
    } while (Increment(digits, messages.sizes()));
  }
  return result;
}

template std::vector<double> MessagePayoffs(const BayesianGame&,
                                            const StrategyProfile&, int, int);
template std::vector<Rational> MessagePayoffs(const BayesianGame&,
                                              const ExactStrategyProfile&, int,
                                              int);

template <typename T>
T ExpectedUtility(const BayesianGame& game,
                  const BasicStrategyProfile<T>& profile, int agent, int type,
                  std::span<const T> action_dist) {
  if (static_cast<int>(action_dist.size()) != game.num_messages(agent)) {
    throw std::invalid_argument("action distribution has wrong length");
  }
  const auto payoffs = MessagePayoffs(game, profile, agent, type);
  T total(0);
  for (size_t m = 0; m < payoffs.size(); ++m) {
    total += payoffs[m] * action_dist[m];
  }
  return total;
}

template double ExpectedUtility(const BayesianGame&, const StrategyProfile&,
                                int, int, std::span<const double>);
template Rational ExpectedUtility(const BayesianGame&,
                                  const ExactStrategyProfile&, int, int,
                                  std::span<const Rational>);

BayesianGame ToCompleteInfo(const BayesianGame& game, int64_t type_profile) {
  return BayesianGame(game.mechanism(), game.type_spaces(),
                      Prior::Degenerate(game.type_profiles(), type_profile),
                      game.utilities());
}

namespace {

// Exact payoff of every message profile for (agent, type).
std::vector<Rational> ProfilePayoffs(const Mechanism& mechanism,
                                     const UtilityTable& utilities, int agent,
                                     int type) {
  std::vector<Rational> payoffs;
  payoffs.reserve(mechanism.profiles().total());
  for (int64_t m = 0; m < mechanism.profiles().total(); ++m) {
    payoffs.push_back(utilities.Expected(agent, type, mechanism.outcome(m)));
  }
  return payoffs;
}

// Compares message `a` against `b` over all opponent profiles. Returns
// {a >= b everywhere, a > b everywhere}.
std::pair<bool, bool> Compare(const Mechanism& mechanism,
                              const std::vector<Rational>& payoffs, int agent,
                              int a, int b) {
  const auto& space = mechanism.profiles();
  bool weak = true;
  bool strict = true;
  for (int64_t m = 0; m < space.total(); ++m) {
    if (space.Component(m, agent) != a) continue;
    const auto& ua = payoffs[m];
    const auto& ub = payoffs[space.Replace(m, agent, b)];
    if (ua < ub) weak = false;
    if (!(ua > ub)) strict = false;
    if (!weak) break;
  }
  return {weak, strict};
}

}  // namespace

std::vector<int> WeaklyDominantMessages(const Mechanism& mechanism,
                                        const UtilityTable& utilities,
                                        int agent, int type) {
  const auto payoffs = ProfilePayoffs(mechanism, utilities, agent, type);
  const int count = mechanism.messages(agent).size();
  std::vector<int> dominant;
  for (int m = 0; m < count; ++m) {
    bool ok = true;
    for (int r = 0; r < count && ok; ++r) {
      if (r != m) ok = Compare(mechanism, payoffs, agent, m, r).first;
    }
    if (ok) dominant.push_back(m);
  }
  return dominant;
}

bool IsStrictlyDominant(const Mechanism& mechanism,
                        const UtilityTable& utilities, int agent, int type,
                        int message) {
  const auto payoffs = ProfilePayoffs(mechanism, utilities, agent, type);
  for (int r = 0; r < mechanism.messages(agent).size(); ++r) {
    if (r == message) continue;
    if (!Compare(mechanism, payoffs, agent, message, r).second) return false;
  }
  return true;
}

template <typename T>
bool IsBestResponse(const BayesianGame& game,
                    const BasicStrategyProfile<T>& profile, int agent, int type,
                    int message, double tolerance) {
  const auto payoffs = MessagePayoffs(game, profile, agent, type);
  for (const auto& other : payoffs) {
    if (Scalar<T>::Exceeds(other, payoffs.at(message), tolerance)) {
      return false;
    }
  }
  return true;
}

template bool IsBestResponse(const BayesianGame&, const StrategyProfile&, int,
                             int, int, double);
template bool IsBestResponse(const BayesianGame&, const ExactStrategyProfile&,
                             int, int, int, double);

template <typename T>
std::vector<ProfileViolation> ValidateProfile(
    const BayesianGame& game, const BasicStrategyProfile<T>& profile) {
  using Kind = ProfileViolation::Kind;
  std::vector<ProfileViolation> violations;
  if (profile.num_agents() != game.num_agents()) {
    violations.push_back({Kind::kShape, -1, -1, "wrong number of agents"});
    return violations;
  }
  for (int agent = 0; agent < game.num_agents(); ++agent) {
    if (profile.num_types(agent) != game.types(agent).size()) {
      violations.push_back({Kind::kShape, agent, -1, "wrong number of types"});
      continue;
    }
    for (int type = 0; type < game.types(agent).size(); ++type) {
      const auto& dist = profile.at(agent, type);
      if (dist.empty()) {
        if (game.InSupport(agent, type)) {
          violations.push_back({Kind::kCoverage, agent, type,
                                "no distribution for a supported type"});
        }
        continue;
      }
      if (static_cast<int>(dist.size()) != game.num_messages(agent)) {
        violations.push_back(
            {Kind::kShape, agent, type, "distribution has wrong length"});
        continue;
      }
      T total(0);
      bool negative = false;
      for (const auto& p : dist) {
        if (p < 0) negative = true;
        total += p;
      }
      if (negative) {
        violations.push_back(
            {Kind::kNegative, agent, type, "negative probability"});
      }
      bool normalized;
      if constexpr (std::is_same_v<T, double>) {
        normalized = std::fabs(total - 1.0) <= kDistributionTolerance;
      } else {
        normalized = total == 1;
      }
      if (!normalized) {
        std::string sum;
        if constexpr (std::is_same_v<T, double>) {
          sum = std::to_string(total);
        } else {
          sum = ToString(total);
        }
        violations.push_back({Kind::kNormalization, agent, type,
                              "probabilities sum to " + sum});
      }
    }
  }
  return violations;
}

template std::vector<ProfileViolation> ValidateProfile(const BayesianGame&,
                                                       const StrategyProfile&);
template std::vector<ProfileViolation> ValidateProfile(
    const BayesianGame&, const ExactStrategyProfile&);

}  // namespace empeq

namespace empeq {

std::vector<std::vector<std::vector<int>>> IteratedWeakDominance(
    const Mechanism& mechanism, const UtilityTable& utilities) {
  const int n = mechanism.num_agents();
  const auto& space = mechanism.profiles();
  std::vector<std::vector<std::vector<Rational>>> payoffs(n);
  std::vector<std::vector<std::vector<int>>> surviving(n);
  for (int agent = 0; agent < n; ++agent) {
    for (int type = 0; type < utilities.num_types(agent); ++type) {
      payoffs[agent].push_back(
          ProfilePayoffs(mechanism, utilities, agent, type));
      std::vector<int> all(mechanism.messages(agent).size());
      for (int m = 0; m < static_cast<int>(all.size()); ++m) all[m] = m;
      surviving[agent].push_back(std::move(all));
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    // Messages any type of each agent may still send.
    std::vector<std::vector<bool>> live(n);
    for (int agent = 0; agent < n; ++agent) {
      live[agent].assign(mechanism.messages(agent).size(), false);
      for (const auto& set : surviving[agent]) {
        for (int m : set) live[agent][m] = true;
      }
    }
    auto next = surviving;
    for (int agent = 0; agent < n; ++agent) {
      for (size_t type = 0; type < surviving[agent].size(); ++type) {
        const auto& u = payoffs[agent][type];
        const auto& candidates = surviving[agent][type];
        std::vector<int> kept;
        for (int m : candidates) {
          bool dominated = false;
          for (int r : candidates) {
            if (r == m) continue;
            bool weak = true;
            bool strict = false;
            for (int64_t profile = 0; profile < space.total() && weak;
                 ++profile) {
              if (space.Component(profile, agent) != m) continue;
              bool relevant = true;
              for (int j = 0; j < n && relevant; ++j) {
                if (j != agent) relevant = live[j][space.Component(profile, j)];
              }
              if (!relevant) continue;
              const auto& um = u[profile];
              const auto& ur = u[space.Replace(profile, agent, r)];
              if (ur < um) weak = false;
              if (ur > um) strict = true;
            }
            if (weak && strict) {
              dominated = true;
              break;
            }
          }
          if (!dominated) kept.push_back(m);
        }
        if (kept.size() != candidates.size()) changed = true;
        next[agent][type] = std::move(kept);
      }
    }
    surviving = std::move(next);
  }
  return surviving;
}

}  // namespace empeq
