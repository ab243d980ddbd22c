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

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "empeq/mechanisms.h"
#include "empeq/scf.h"
#include "support.h"

namespace empeq {
namespace {

Rational R(int p, int q = 1) { return Rational(p, q); }

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

Rational Positive(const Rational& x) { return x > 0 ? x : Rational(0); }

TEST_CASE("second-price auction pays the highest losing bid") {
  const std::vector<Rational> grid = {R(0), R(1, 2), R(1)};
  for (int n : {2, 3}) {
    const Scf spa = BuildSecondPrice({n, grid});
    const Scf fpa = BuildFirstPrice({n, grid});
    for (const auto& theta : testing::AllProfiles(std::vector<int>(n, 3))) {
      std::vector<Rational> bids;
      for (int t : theta) bids.push_back(grid[t]);
      auto sorted = bids;
      std::sort(sorted.rbegin(), sorted.rend());
      const Rational top = sorted[0], price = sorted[1];
      int winners = 0;
      for (const auto& b : bids) winners += b == top;
      const int64_t k = spa.profiles().Flatten(theta);
      Rational spa_total = 0, fpa_total = 0;
      for (int i = 0; i < n; ++i) {
        const Rational share = bids[i] == top ? Rational(1, winners) : Rational(0);
        CHECK(spa.Welfare(i, theta[i], k) == share * (bids[i] - price));
        spa_total += spa.Welfare(i, theta[i], k);
        fpa_total += fpa.Welfare(i, theta[i], k);
      }
      CHECK(spa_total == top - price);
      CHECK(fpa_total == 0);
      CHECK(spa.outcome(k).weights().size() == static_cast<size_t>(winners));
    }
  }
  CHECK(BuildSecondPrice({2, {R(0), R(1), R(3)}}).types(0).name(2) == "H");
  CHECK(BuildSecondPrice({2, {R(0), R(1), R(3), R(7, 2)}}).types(0).name(3) == "7/2");
  CHECK_THROWS_AS(BuildSecondPrice({2, {R(1), R(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(BuildSecondPrice({2, {R(1)}}), std::invalid_argument);
}

TEST_CASE("top trading cycles is individually rational and Pareto efficient") {
  for (int n : {2, 3}) {
    const Scf ttc = BuildTtc({n});
    const auto& space = ttc.profiles();
    for (int64_t k = 0; k < space.total(); ++k) {
      const auto theta = space.Unflatten(k);
      const Lottery& g = ttc.outcome(k);
      REQUIRE(g.IsDegenerate());
      for (int i = 0; i < n; ++i) {
        // Rank of the endowment read off the type label.
        const auto order = Split(ttc.types(i).name(theta[i]), '>');
        const std::string own = "h" + ttc.agents().name(i);
        const int rank = static_cast<int>(
            order.size() - (std::find(order.begin(), order.end(), own) - order.begin()));
        CHECK(ttc.Welfare(i, theta[i], k) >= rank);
      }
      for (int x = 0; x < ttc.outcomes().size(); ++x) {
        bool weakly = true, strictly = false;
        for (int i = 0; i < n; ++i) {
          const Rational& ux = ttc.utilities().at(i, theta[i], x);
          weakly = weakly && ux >= ttc.Welfare(i, theta[i], k);
          strictly = strictly || ux > ttc.Welfare(i, theta[i], k);
        }
        CHECK_FALSE((weakly && strictly));
      }
    }
  }
  const Scf ttc = BuildTtc({2});
  auto at = [&](const char* a, const char* b) {
    const std::vector<int> p = {ttc.types(0).index(a), ttc.types(1).index(b)};
    return ttc.outcomes().name(ttc.outcome(ttc.profiles().Flatten(p)).weights()[0].first);
  };
  CHECK(at("hB>hA", "hA>hB") == "A:hB,B:hA");
  CHECK(at("hA>hB", "hA>hB") == "A:hA,B:hB");
  CHECK(at("hB>hA", "hB>hA") == "A:hA,B:hB");
}

// Stability of a matching named "s1:c2,s2:-,..." against the reported lists.
bool Stable(const Scf& scf, const SchoolChoiceSpec& spec, int64_t k) {
  const auto theta = scf.profiles().Unflatten(k);
  const int n = spec.n_students;
  std::vector<std::vector<std::string>> lists(n);
  for (int s = 0; s < n; ++s) {
    const auto& name = scf.types(s).name(theta[s]);
    if (name != "none") lists[s] = Split(name, '>');
  }
  const auto cells =
      Split(scf.outcomes().name(scf.outcome(k).weights()[0].first), ',');
  std::vector<int> match(n, -1);
  for (int s = 0; s < n; ++s) {
    const auto school = Split(cells[s], ':')[1];
    if (school != "-") match[s] = std::stoi(school.substr(1)) - 1;
  }
  auto rank = [&](int s, int c) -> int {
    const auto it = std::find(lists[s].begin(), lists[s].end(), "c" + std::to_string(c + 1));
    return it == lists[s].end() ? -1 : static_cast<int>(lists[s].end() - it);
  };
  std::vector<int> load(spec.n_schools, 0);
  for (int s = 0; s < n; ++s) {
    if (match[s] < 0) continue;
    if (rank(s, match[s]) < 0) return false;  // unacceptable assignment
    ++load[match[s]];
  }
  for (int c = 0; c < spec.n_schools; ++c) {
    if (load[c] > spec.capacities[c]) return false;
  }
  for (int s = 0; s < n; ++s) {
    for (int c = 0; c < spec.n_schools; ++c) {
      if (rank(s, c) < 0) continue;
      if (match[s] >= 0 && rank(s, match[s]) >= rank(s, c)) continue;
      if (load[c] < spec.capacities[c]) return false;
      const auto& pri = spec.priorities[c];
      const auto pos = [&](int x) { return std::find(pri.begin(), pri.end(), x) - pri.begin(); };
      for (int o = 0; o < n; ++o) {
        if (match[o] == c && pos(s) < pos(o)) return false;
      }
    }
  }
  return true;
}

TEST_CASE("deferred acceptance produces stable matchings") {
  auto spec = DefaultSchoolChoice();
  for (bool outside : {false, true}) {
    spec.outside_option = outside;
    const Scf spda = BuildSpda(spec);
    CHECK(spda.types(0).size() == (outside ? 16 : 6));
    int unassigned = 0;
    for (int64_t k = 0; k < spda.profiles().total(); ++k) {
      REQUIRE(spda.outcome(k).IsDegenerate());
      CHECK(Stable(spda, spec, k));
      unassigned += spda.outcomes()
                        .name(spda.outcome(k).weights()[0].first)
                        .find(":-") != std::string::npos;
    }
    CHECK((unassigned > 0) == outside);
    if (outside) CHECK(IsStrategyProof(spda).holds);
  }
  auto bad = DefaultSchoolChoice();
  bad.priorities[0] = {0, 0, 1};
  CHECK_THROWS_AS(BuildSpda(bad), std::invalid_argument);
  bad = DefaultSchoolChoice();
  bad.capacities = {1, 0, 1};
  CHECK_THROWS_AS(BuildSpda(bad), std::invalid_argument);
}

TEST_CASE("pivotal mechanism utilities equal marginal surplus") {
  const std::vector<Rational> grid = {R(-3, 2), R(-1, 2), R(1, 2), R(3, 2)};
  for (const Rational& cost : {R(0), R(3, 2)}) {
    const int n = 3;
    const Scf pivotal = BuildPivotal(n, grid, cost);
    for (const auto& theta : testing::AllProfiles({4, 4, 4})) {
      const int64_t k = pivotal.profiles().Flatten(theta);
      Rational total = 0;
      for (int t : theta) total += grid[t] - cost / n;
      Rational taxes = 0;
      for (int i = 0; i < n; ++i) {
        const Rational others = total - (grid[theta[i]] - cost / n);
        CHECK(pivotal.Welfare(i, theta[i], k) == Positive(total) - Positive(others));
        // Surplus identity: welfare + tax equals the agent's share of the decision.
        taxes += (total >= 0 ? Rational(grid[theta[i]] - cost / n) : Rational(0)) -
                 pivotal.Welfare(i, theta[i], k);
      }
      CHECK(taxes >= 0);
    }
    CHECK(IsStrategyProof(pivotal).holds);
  }
  const Scf small = BuildPivotal(2, {R(-1), R(0), R(1)});
  const int64_t k = small.profiles().Flatten(std::vector<int>{2, 0});
  CHECK(small.outcomes().name(small.outcome(k).weights()[0].first) == "build;t=1,0");
}

TEST_CASE("uniform rule") {
  CHECK(UniformAllocation({R(0), R(1, 3), R(1)}, R(1)) ==
        std::vector<Rational>{R(0), R(1, 3), R(2, 3)});
  CHECK(UniformAllocation({R(0), R(0), R(1, 3)}, R(1)) ==
        std::vector<Rational>{R(1, 3), R(1, 3), R(1, 3)});
  CHECK(UniformAllocation({R(1, 2), R(1, 2)}, R(1)) ==
        std::vector<Rational>{R(1, 2), R(1, 2)});

  // Characterization: budget balance, same-side efficiency and a common cap.
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<Rational> peaks;
    for (int i = 0; i < n; ++i) peaks.push_back(testing::RandomRational(rng, 0, 1, 6));
    const Rational amount = testing::RandomRational(rng, 0, n, 4);
    const auto alloc = UniformAllocation(peaks, amount);
    Rational sum = 0, demand = 0;
    for (int i = 0; i < n; ++i) {
      sum += alloc[i];
      demand += peaks[i];
    }
    CHECK(sum == amount);
    const bool rationed = demand >= amount;
    for (int i = 0; i < n; ++i) {
      CHECK((rationed ? alloc[i] <= peaks[i] : alloc[i] >= peaks[i]));
      if (alloc[i] == peaks[i]) continue;
      for (int j = 0; j < n; ++j) {
        CHECK((rationed ? alloc[i] >= alloc[j] : alloc[i] <= alloc[j]));
      }
    }
  }
  const Scf rule = BuildUniformRule(2, R(1), {R(0), R(1, 2), R(1)});
  const int64_t k = rule.profiles().Flatten(std::vector<int>{2, 2});
  CHECK(rule.outcomes().name(rule.outcome(k).weights()[0].first) == "1/2,1/2");
  CHECK(rule.Welfare(0, 2, k) == R(-1, 2));
}

TEST_CASE("median voting") {
  const std::vector<Rational> alts = {R(1), R(2), R(3), R(4), R(5)};
  const Scf median = BuildMedianVoting(3, alts);
  for (const auto& theta : testing::AllProfiles({5, 5, 5})) {
    auto sorted = theta;
    std::sort(sorted.begin(), sorted.end());
    const int64_t k = median.profiles().Flatten(theta);
    CHECK(median.outcome(k) == Lottery::Degenerate(sorted[1]));
    for (int i = 0; i < 3; ++i) {
      CHECK(median.Welfare(i, theta[i], k) ==
            -(sorted[1] > theta[i] ? sorted[1] - theta[i] : theta[i] - sorted[1]));
    }
  }
  CHECK(BuildMedianVoting(1, alts).outcome(3) == Lottery::Degenerate(3));
  CHECK_THROWS_WITH_AS(BuildMedianVoting(2, alts), "phantom configuration required",
                       std::invalid_argument);
  CHECK_THROWS_AS(BuildMedianVoting(4, alts), std::invalid_argument);
}

TEST_CASE("dictatorship and constant") {
  const Scf d = BuildDictatorship(2, 3);
  for (int64_t k = 0; k < d.profiles().total(); ++k) {
    CHECK(d.outcome(k) == Lottery::Degenerate(d.profiles().Component(k, 0)));
    CHECK(d.Welfare(0, d.profiles().Component(k, 0), k) == 3);
  }
  const Scf c = BuildConstant(3, 2);
  CHECK(c.profiles().total() == 8);
  for (const auto& g : c.outcome_map()) CHECK(g == Lottery::Degenerate(0));
}

TEST_CASE("indifferent dictatorship and its enlarged mechanism") {
  for (int k = 1; k <= 4; ++k) {
    const auto ex = BuildExample1(k);
    CHECK(ex.enlarged.messages(0).size() == 1);
    CHECK(ex.enlarged.messages(1).size() == k + 1);
    int to_a = 0;
    for (int m = 0; m <= k; ++m) to_a += ex.enlarged.outcome(m) == Lottery::Degenerate(0);
    CHECK(to_a == k);
    CHECK(ex.enlarged.outcome(0) == Lottery::Degenerate(1));
  }
  const auto ex = BuildExample1(1);
  CHECK(ex.revelation.outcome(0) == Lottery::Degenerate(0));
  CHECK(ex.revelation.outcome(1) == Lottery::Degenerate(1));
  CHECK(IsStrategyProof(ex.revelation).holds);
  CHECK_THROWS_AS(BuildExample1(0), std::invalid_argument);
}

// Strategy-proofness of a selection with P(a | t1, t2) = alpha and
// P(a' | t1, t2') = beta, written out from the utility rows.
bool SelectionIsStrategyProof(const Rational& eps, const Rational& alpha,
                              const Rational& beta) {
  const Rational c = Rational(1, 2) - eps;
  return 2 * alpha - 1 >= c && 1 - 2 * beta >= c &&
         alpha * eps + (1 - alpha) >= (1 - eps) * (1 - beta) &&
         beta + (1 - beta) * eps >= alpha * (1 - eps);
}

TEST_CASE("selections from the correspondence") {
  const Rational step(1, 64);
  for (const Rational& eps : {R(1, 10), R(1, 8), R(1, 4), R(2, 5)}) {
    INFO(eps);
    const auto ex = BuildExample5(eps);
    const auto found = StrategyProofSelections(ex, step);
    std::set<std::pair<Rational, Rational>> expected, got;
    for (Rational a = 0; a <= 1; a += step) {
      for (Rational b = 0; b <= 1; b += step) {
        if (SelectionIsStrategyProof(eps, a, b)) expected.insert({a, b});
      }
    }
    for (const auto& scf : found) {
      got.insert({scf.outcome(0).Probability(0), scf.outcome(1).Probability(4)});
    }
    CHECK(got == expected);
    // The impossibility threshold is (9 - sqrt 65) / 8, about 0.1172.
    if (eps < Rational(1172, 10000)) CHECK(found.empty());
  }
  const auto quarter = StrategyProofSelections(BuildExample5(R(1, 4)), step);
  CHECK(std::any_of(quarter.begin(), quarter.end(), [](const Scf& s) {
    return s.outcome(0).Probability(0) == Rational(5, 8) &&
           s.outcome(1).Probability(4) == Rational(3, 8);
  }));
  CHECK_THROWS_AS(BuildExample5(R(0)), std::invalid_argument);
  CHECK_THROWS_AS(BuildExample5(R(1)), std::invalid_argument);
}

TEST_CASE("iterated weak dominance lands inside the correspondence") {
  for (const Rational& eps : {R(1, 10), R(1, 4)}) {
    const auto ex = BuildExample5(eps);
    const auto surviving = SurvivingOutcomes(ex);
    const std::vector<std::vector<int>> expected = {{0, 1}, {4, 5}, {2}, {6}, {3}, {7}};
    CHECK(surviving == expected);
    for (size_t theta = 0; theta < surviving.size(); ++theta) {
      for (int x : surviving[theta]) {
        CHECK(ex.correspondence[theta].Contains(Lottery::Degenerate(x)));
      }
    }
  }
}

TEST_CASE("default instances") {
  const auto instances = DefaultInstances();
  std::vector<std::string> names;
  for (const auto& inst : instances) names.push_back(inst.name);
  CHECK(names == std::vector<std::string>{"second-price", "ttc-2", "ttc-3", "pivotal",
                                          "spda", "uniform", "median"});
  CHECK(AgentNames(3) == std::vector<std::string>{"A", "B", "C"});
}

}  // namespace
}  // namespace empeq
