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

#ifndef EMPEQ_TESTS_SUPPORT_H_
#define EMPEQ_TESTS_SUPPORT_H_

// Random instance generators and brute-force reference computations shared
// by the test binaries. Reference code walks full profiles as digit vectors
// and reads utilities from the tables directly, so it shares no evaluation
// path with the library.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "empeq/game.h"
#include "empeq/mechanisms.h"
#include "empeq/scf.h"

namespace empeq::testing {

inline std::vector<std::vector<int>> AllProfiles(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> out{{}};
  for (int size : sizes) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out) {
      for (int v = 0; v < size; ++v) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<int> Sizes(const std::vector<IdList>& spaces) {
  std::vector<int> sizes;
  for (const auto& s : spaces) sizes.push_back(s.size());
  return sizes;
}

inline IdList Names(const std::string& prefix, int n) {
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back(prefix + std::to_string(k));
  return IdList(names);
}

inline Rational LotteryValue(const UtilityTable& u, int agent, int type,
                             const Lottery& lottery) {
  Rational total = 0;
  for (const auto& [x, w] : lottery.weights()) total += w * u.at(agent, type, x);
  return total;
}

// Sum over full type and message profiles of
// p(theta) / p_i(theta_i) * prod_{j != i} sigma_j(m_j|theta_j) * mu(m_i) * u.
inline Rational ReferenceExpectedUtility(const BayesianGame& game,
                                         const ExactStrategyProfile& profile,
                                         int agent, int type,
                                         const std::vector<Rational>& mu) {
  const auto type_sizes = Sizes(game.type_spaces());
  const auto msg_sizes = game.mechanism().profiles().sizes();
  const ProfileSpace types(type_sizes);
  const ProfileSpace messages(msg_sizes);
  Rational marginal = 0;
  for (const auto& theta : AllProfiles(type_sizes)) {
    if (theta[agent] == type) marginal += game.prior().weight(types.Flatten(theta));
  }
  Rational total = 0;
  for (const auto& theta : AllProfiles(type_sizes)) {
    if (theta[agent] != type) continue;
    const Rational w = game.prior().weight(types.Flatten(theta));
    if (w == 0) continue;
    for (const auto& m : AllProfiles(msg_sizes)) {
      Rational prob = w / marginal * mu[m[agent]];
      for (int j = 0; j < game.num_agents(); ++j) {
        if (j != agent) prob *= profile.at(j, theta[j])[m[j]];
      }
      if (prob == 0) continue;
      total += prob * LotteryValue(game.utilities(), agent, type,
                                   game.mechanism().outcome(messages.Flatten(m)));
    }
  }
  return total;
}

// Complete-information second-price game on {0, 1/2, 1} with A = M, B = H.
inline BayesianGame MhAuctionGame() {
  const Scf spa = BuildSecondPrice({2, {Rational(0), Rational(1, 2), Rational(1)}});
  const std::vector<int> mh = {1, 2};
  return DirectRevelationGame(
      spa, Prior::Degenerate(spa.profiles(), spa.profiles().Flatten(mh)));
}

// Two-player normal form game with one type each; payoffs[i][a][b].
inline BayesianGame NormalForm(const std::vector<std::vector<std::vector<int>>>& payoffs) {
  const int ra = static_cast<int>(payoffs[0].size());
  const int rb = static_cast<int>(payoffs[0][0].size());
  std::vector<Lottery> fn;
  for (int x = 0; x < ra * rb; ++x) fn.push_back(Lottery::Degenerate(x));
  UtilityTable u({1, 1}, ra * rb);
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < ra; ++a)
      for (int b = 0; b < rb; ++b) u.set(i, 0, a * rb + b, payoffs[i][a][b]);
  const ProfileSpace types({1, 1});
  return BayesianGame(Mechanism(IdList{"A", "B"}, {Names("a", ra), Names("b", rb)},
                                Names("x", ra * rb), std::move(fn)),
                      {IdList{"t"}, IdList{"t"}}, Prior::Degenerate(types, 0),
                      std::move(u));
}

inline Rational RandomRational(std::mt19937_64& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> num(lo * den, hi * den);
  return Rational(num(rng), den);
}

inline std::vector<Rational> RandomDistribution(std::mt19937_64& rng, int n,
                                                bool allow_zero = true) {
  std::uniform_int_distribution<int> draw(allow_zero ? 0 : 1, 6);
  std::vector<Rational> out(n);
  Rational total = 0;
  while (total == 0) {
    total = 0;
    for (auto& w : out) {
      w = draw(rng);
      total += w;
    }
  }
  for (auto& w : out) w /= total;
  return out;
}

// Random mechanism with one outcome per message profile (and occasional
// two-outcome lotteries), random utilities and a random prior.
inline BayesianGame RandomGame(std::mt19937_64& rng, int agents, int messages,
                               int types, bool full_support) {
  std::uniform_int_distribution<int> msg_count(1, messages);
  std::uniform_int_distribution<int> type_count(1, types);
  std::vector<IdList> msg_spaces, type_spaces;
  std::vector<int> msg_sizes, type_sizes;
  for (int i = 0; i < agents; ++i) {
    msg_sizes.push_back(msg_count(rng));
    type_sizes.push_back(type_count(rng));
    msg_spaces.push_back(Names("m", msg_sizes.back()));
    type_spaces.push_back(Names("t", type_sizes.back()));
  }
  const ProfileSpace msg_space(msg_sizes);
  const int outcomes = static_cast<int>(msg_space.total());
  std::vector<Lottery> fn;
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> pick(0, outcomes - 1);
  for (int m = 0; m < outcomes; ++m) {
    if (coin(rng) == 0 && outcomes > 1) {
      fn.emplace_back(std::vector<Lottery::Entry>{{m, Rational(1, 2)},
                                                  {pick(rng), Rational(1, 2)}});
    } else {
      fn.push_back(Lottery::Degenerate(m));
    }
  }
  UtilityTable u(type_sizes, outcomes);
  for (int i = 0; i < agents; ++i) {
    for (int t = 0; t < type_sizes[i]; ++t) {
      for (int x = 0; x < outcomes; ++x) u.set(i, t, x, RandomRational(rng, -3, 3, 4));
    }
  }
  const ProfileSpace type_space(type_sizes);
  auto weights = RandomDistribution(rng, static_cast<int>(type_space.total()),
                                    !full_support);
  return BayesianGame(Mechanism(Names("a", agents), msg_spaces, Names("x", outcomes),
                                std::move(fn)),
                      type_spaces, Prior(type_space, std::move(weights)),
                      std::move(u));
}

inline ExactStrategyProfile RandomExactProfile(std::mt19937_64& rng,
                                               const BayesianGame& game) {
  std::vector<std::vector<std::vector<Rational>>> d(game.num_agents());
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      d[i].push_back(RandomDistribution(rng, game.num_messages(i)));
    }
  }
  return ExactStrategyProfile(std::move(d));
}

// Random scf over `outcomes` deterministic outcomes with random utilities.
inline Scf RandomScf(std::mt19937_64& rng, const std::vector<int>& type_sizes,
                     int outcomes, int utility_range = 2) {
  std::vector<IdList> spaces;
  for (int s : type_sizes) spaces.push_back(Names("t", s));
  const ProfileSpace space(type_sizes);
  std::uniform_int_distribution<int> pick(0, outcomes - 1);
  std::vector<Lottery> map;
  for (int64_t k = 0; k < space.total(); ++k) map.push_back(Lottery::Degenerate(pick(rng)));
  UtilityTable u(type_sizes, outcomes);
  std::uniform_int_distribution<int> val(-utility_range, utility_range);
  for (size_t i = 0; i < type_sizes.size(); ++i) {
    for (int t = 0; t < type_sizes[i]; ++t) {
      for (int x = 0; x < outcomes; ++x) u.set(static_cast<int>(i), t, x, val(rng));
    }
  }
  return Scf(Names("a", static_cast<int>(type_sizes.size())), spaces,
             Names("x", outcomes), std::move(map), std::move(u));
}

// Reference property checks over digit-vector profiles.
struct ReferenceScf {
  const Scf& scf;
  std::vector<int> sizes = Sizes(scf.type_spaces());
  ProfileSpace space{sizes};

  const Lottery& g(const std::vector<int>& theta) const {
    return scf.outcome(space.Flatten(theta));
  }
  Rational u(int i, int type, const std::vector<int>& theta) const {
    return LotteryValue(scf.utilities(), i, type, g(theta));
  }
  static std::vector<int> With(std::vector<int> theta, int i, int v) {
    theta[i] = v;
    return theta;
  }

  bool StrategyProof() const {
    for (const auto& theta : AllProfiles(sizes))
      for (int i = 0; i < static_cast<int>(sizes.size()); ++i)
        for (int r = 0; r < sizes[i]; ++r)
          if (u(i, theta[i], theta) < u(i, theta[i], With(theta, i, r))) return false;
    return true;
  }
  bool NonBossy() const {
    for (const auto& theta : AllProfiles(sizes))
      for (int i = 0; i < static_cast<int>(sizes.size()); ++i)
        for (int r = 0; r < sizes[i]; ++r) {
          const auto lie = With(theta, i, r);
          if (u(i, theta[i], theta) == u(i, theta[i], lie) && !(g(theta) == g(lie)))
            return false;
        }
    return true;
  }
  bool EssentiallyUnique() const {
    for (const auto& theta : AllProfiles(sizes))
      for (int i = 0; i < static_cast<int>(sizes.size()); ++i)
        for (int r = 0; r < sizes[i]; ++r) {
          const auto lie = With(theta, i, r);
          if (!(u(i, theta[i], theta) == u(i, theta[i], lie)) || g(theta) == g(lie))
            continue;
          bool punished = false;
          for (const auto& tau : AllProfiles(sizes)) {
            if (tau[i] != r) continue;
            const auto truthful = With(tau, i, theta[i]);
            if (u(i, theta[i], truthful) > u(i, theta[i], tau)) punished = true;
          }
          if (!punished) return false;
        }
    return true;
  }
  bool Rectangular() const {
    for (const auto& theta : AllProfiles(sizes))
      for (const auto& tau : AllProfiles(sizes)) {
        bool premise = true;
        for (int i = 0; i < static_cast<int>(sizes.size()); ++i)
          premise = premise && g(With(tau, i, theta[i])) == g(tau);
        if (premise && !(g(theta) == g(tau))) return false;
      }
    return true;
  }
};

}  // namespace empeq::testing

#endif  // EMPEQ_TESTS_SUPPORT_H_
