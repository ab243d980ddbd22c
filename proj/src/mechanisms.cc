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

#include "empeq/mechanisms.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace empeq {
namespace {

// Interns outcome names in order of first appearance.
class OutcomeRegistry {
 public:
  int Intern(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }
  int size() const { return static_cast<int>(names_.size()); }
  IdList ids() const { return IdList(names_); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

std::vector<int> Sizes(const std::vector<IdList>& spaces) {
  std::vector<int> sizes;
  for (const auto& s : spaces) sizes.push_back(s.size());
  return sizes;
}

std::vector<std::string> GridLabels(const std::vector<Rational>& grid) {
  if (grid.size() == 3) return {"L", "M", "H"};
  std::vector<std::string> labels;
  for (const auto& v : grid) labels.push_back(ToString(v));
  return labels;
}

void CheckIncreasing(const std::vector<Rational>& grid, size_t min_size) {
  if (grid.size() < min_size) {
    throw std::invalid_argument("grid needs at least " +
                                std::to_string(min_size) + " values");
  }
  for (size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k - 1] < grid[k])) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }
}

Rational Abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// All permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> Permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

std::string OrderName(const std::vector<int>& order,
                      const std::vector<std::string>& items) {
  std::string name;
  for (size_t k = 0; k < order.size(); ++k) {
    if (k > 0) name += ">";
    name += items[order[k]];
  }
  return name;
}

// Rank utility of `item` under a strict order: top = size, bottom = 1.
int RankUtility(const std::vector<int>& order, int item) {
  for (size_t k = 0; k < order.size(); ++k) {
    if (order[k] == item) return static_cast<int>(order.size() - k);
  }
  return 0;
}

struct AuctionOutcome {
  int winner;
  int price_index;
};

Scf BuildAuction(const AuctionSpec& spec, bool second_price) {
  CheckIncreasing(spec.value_grid, 2);
  if (spec.n_bidders < 1) throw std::invalid_argument("need a bidder");
  const int n = spec.n_bidders;
  const auto& grid = spec.value_grid;
  const int g = static_cast<int>(grid.size());
  const auto agents = AgentNames(n);
  const IdList types(GridLabels(grid));
  std::vector<IdList> type_spaces(n, types);

  std::vector<std::string> outcome_names;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < g; ++k) {
      outcome_names.push_back(agents[i] + "@" + ToString(grid[k]));
    }
  }
  auto outcome_id = [g](int winner, int price) { return winner * g + price; };

  UtilityTable utilities(std::vector<int>(n, g), n * g);
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < g; ++t) {
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < g; ++k) {
          utilities.set(j, t, outcome_id(i, k),
                        i == j ? Rational(grid[t] - grid[k]) : Rational(0));
        }
      }
    }
  }

  const ProfileSpace space(Sizes(type_spaces));
  std::vector<Lottery> outcome_map;
  outcome_map.reserve(space.total());
  for (int64_t profile = 0; profile < space.total(); ++profile) {
    const auto bids = space.Unflatten(profile);
    const int top = *std::max_element(bids.begin(), bids.end());
    std::vector<int> winners;
    for (int i = 0; i < n; ++i) {
      if (bids[i] == top) winners.push_back(i);
    }
    std::vector<int> outcomes;
    for (int w : winners) {
      int price = top;
      if (second_price && winners.size() == 1) {
        price = -1;
        for (int i = 0; i < n; ++i) {
          if (i != w) price = std::max(price, bids[i]);
        }
        if (price < 0) price = 0;  // single bidder pays the reserve
      }
      outcomes.push_back(outcome_id(w, price));
    }
    outcome_map.push_back(Lottery::Uniform(outcomes));
  }
  return Scf(IdList(agents), type_spaces, IdList(outcome_names),
             std::move(outcome_map), std::move(utilities));
}

// Gale's top trading cycles. prefs[i] is agent i's strict order over houses;
// house k is owned by agent k. Returns the house assigned to each agent.
std::vector<int> TopTradingCycles(const std::vector<std::vector<int>>& prefs) {
  const int n = static_cast<int>(prefs.size());
  std::vector<int> assignment(n, -1);
  std::vector<bool> active(n, true);
  int remaining = n;
  while (remaining > 0) {
    // Each active agent points to the owner of her best remaining house.
    std::vector<int> points(n, -1);
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (int house : prefs[i]) {
        if (active[house]) {
          points[i] = house;
          break;
        }
      }
    }
    // Walk from any active agent until a node repeats; that node is on a
    // cycle.
    int start = 0;
    while (!active[start]) ++start;
    std::vector<int> seen(n, -1);
    int node = start;
    for (int step = 0; seen[node] < 0; ++step) {
      seen[node] = step;
      node = points[node];
    }
    const int cycle_start = node;
    do {
      assignment[node] = points[node];
      node = points[node];
    } while (node != cycle_start);
    for (int i = 0; i < n; ++i) {
      if (active[i] && assignment[i] >= 0) {
        active[i] = false;
        --remaining;
      }
    }
  }
  return assignment;
}

// Student-proposing deferred acceptance. prefs[s] lists acceptable schools in
// order. Returns each student's school or -1.
std::vector<int> DeferredAcceptance(const std::vector<std::vector<int>>& prefs,
                                    const SchoolChoiceSpec& spec) {
  const int students = spec.n_students;
  const int schools = spec.n_schools;
  std::vector<std::vector<int>> rank(schools, std::vector<int>(students));
  for (int c = 0; c < schools; ++c) {
    for (int k = 0; k < students; ++k) rank[c][spec.priorities[c][k]] = k;
  }
  std::vector<size_t> next(students, 0);
  std::vector<std::vector<int>> held(schools);
  std::vector<int> match(students, -1);
  bool proposals = true;
  while (proposals) {
    proposals = false;
    for (int s = 0; s < students; ++s) {
      if (match[s] >= 0 || next[s] >= prefs[s].size()) continue;
      proposals = true;
      const int c = prefs[s][next[s]++];
      held[c].push_back(s);
      match[s] = c;
      if (static_cast<int>(held[c].size()) > spec.capacities[c]) {
        auto worst = std::max_element(
            held[c].begin(), held[c].end(),
            [&](int a, int b) { return rank[c][a] < rank[c][b]; });
        match[*worst] = -1;
        held[c].erase(worst);
      }
    }
  }
  return match;
}

}  // namespace

std::vector<std::string> AgentNames(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back(n <= 26 ? std::string(1, static_cast<char>('A' + i))
                            : "agent" + std::to_string(i + 1));
  }
  return names;
}

Scf BuildSecondPrice(const AuctionSpec& spec) {
  return BuildAuction(spec, /*second_price=*/true);
}

Scf BuildFirstPrice(const AuctionSpec& spec) {
  return BuildAuction(spec, /*second_price=*/false);
}

Scf BuildTtc(const ExchangeSpec& spec) {
  const int n = spec.n_agents;
  if (n < 1) throw std::invalid_argument("need an agent");
  const auto agents = AgentNames(n);
  std::vector<std::string> houses;
  for (const auto& a : agents) houses.push_back("h" + a);

  const auto orders = Permutations(n);
  std::vector<std::string> type_names;
  for (const auto& order : orders) type_names.push_back(OrderName(order, houses));
  std::vector<IdList> type_spaces(n, IdList(type_names));

  // Outcomes are the n! allocations, in lexicographic order.
  const auto allocations = Permutations(n);
  std::vector<std::string> outcome_names;
  std::map<std::vector<int>, int> allocation_index;
  for (const auto& allocation : allocations) {
    std::string name;
    for (int i = 0; i < n; ++i) {
      if (i > 0) name += ",";
      name += agents[i] + ":" + houses[allocation[i]];
    }
    allocation_index[allocation] = static_cast<int>(outcome_names.size());
    outcome_names.push_back(name);
  }

  const int t = static_cast<int>(orders.size());
  UtilityTable utilities(std::vector<int>(n, t),
                         static_cast<int>(allocations.size()));
  for (int i = 0; i < n; ++i) {
    for (int type = 0; type < t; ++type) {
      for (size_t x = 0; x < allocations.size(); ++x) {
        utilities.set(i, type, static_cast<int>(x),
                      RankUtility(orders[type], allocations[x][i]));
      }
    }
  }

  const ProfileSpace space(Sizes(type_spaces));
  std::vector<Lottery> outcome_map;
  outcome_map.reserve(space.total());
  for (int64_t profile = 0; profile < space.total(); ++profile) {
    const auto reported = space.Unflatten(profile);
    std::vector<std::vector<int>> prefs;
    for (int type : reported) prefs.push_back(orders[type]);
    outcome_map.push_back(
        Lottery::Degenerate(allocation_index.at(TopTradingCycles(prefs))));
  }
  return Scf(IdList(agents), type_spaces, IdList(outcome_names),
             std::move(outcome_map), std::move(utilities));
}

Scf BuildPivotal(int n_agents, const std::vector<Rational>& value_grid,
                 const Rational& cost) {
  CheckIncreasing(value_grid, 2);
  if (n_agents < 1) throw std::invalid_argument("need an agent");
  const int n = n_agents;
  const auto agents = AgentNames(n);
  std::vector<std::string> labels;
  for (const auto& v : value_grid) labels.push_back(ToString(v));
  std::vector<IdList> type_spaces(n, IdList(labels));
  const Rational share = cost / n;

  struct Decision {
    bool build;
    std::vector<Rational> taxes;
  };
  const ProfileSpace space(Sizes(type_spaces));
  OutcomeRegistry registry;
  std::vector<Decision> decisions;
  std::vector<int> profile_outcome;
  for (int64_t profile = 0; profile < space.total(); ++profile) {
    const auto reports = space.Unflatten(profile);
    std::vector<Rational> net;
    Rational total = 0;
    for (int r : reports) {
      net.push_back(value_grid[r] - share);
      total += net.back();
    }
    Decision decision{total >= 0, {}};
    std::string name = decision.build ? "build;t=" : "reject;t=";
    for (int i = 0; i < n; ++i) {
      const Rational others = total - net[i];
      const Rational without_i = others >= 0 ? others : Rational(0);
      Rational tax = without_i - (decision.build ? others : Rational(0));
      if (i > 0) name += ",";
      name += ToString(tax);
      decision.taxes.push_back(std::move(tax));
    }
    const int id = registry.Intern(name);
    if (id == static_cast<int>(decisions.size())) decisions.push_back(decision);
    profile_outcome.push_back(id);
  }

  const int g = static_cast<int>(value_grid.size());
  UtilityTable utilities(std::vector<int>(n, g), registry.size());
  for (int i = 0; i < n; ++i) {
    for (int type = 0; type < g; ++type) {
      for (int x = 0; x < registry.size(); ++x) {
        const auto& d = decisions[x];
        utilities.set(i, type, x,
                      (d.build ? Rational(value_grid[type] - share)
                               : Rational(0)) -
                          d.taxes[i]);
      }
    }
  }
  std::vector<Lottery> outcome_map;
  for (int id : profile_outcome) outcome_map.push_back(Lottery::Degenerate(id));
  return Scf(IdList(agents), type_spaces, registry.ids(),
             std::move(outcome_map), std::move(utilities));
}

SchoolChoiceSpec DefaultSchoolChoice() {
  SchoolChoiceSpec spec;
  spec.n_students = 3;
  spec.n_schools = 3;
  spec.capacities = {1, 1, 1};
  // Cyclic priorities: school c ranks student c first.
  spec.priorities = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  return spec;
}

Scf BuildSpda(const SchoolChoiceSpec& spec) {
  const int students = spec.n_students;
  const int schools = spec.n_schools;
  if (students < 1 || schools < 1) {
    throw std::invalid_argument("need students and schools");
  }
  if (static_cast<int>(spec.capacities.size()) != schools ||
      static_cast<int>(spec.priorities.size()) != schools) {
    throw std::invalid_argument("one capacity and priority order per school");
  }
  for (int c = 0; c < schools; ++c) {
    if (spec.capacities[c] < 1) throw std::invalid_argument("capacity < 1");
    auto order = spec.priorities[c];
    std::sort(order.begin(), order.end());
    std::vector<int> expected(students);
    std::iota(expected.begin(), expected.end(), 0);
    if (order != expected) {
      throw std::invalid_argument("priorities must be strict total orders");
    }
  }

  std::vector<std::string> student_names, school_names;
  for (int s = 0; s < students; ++s) student_names.push_back("s" + std::to_string(s + 1));
  for (int c = 0; c < schools; ++c) school_names.push_back("c" + std::to_string(c + 1));

  // Preference domain: strict orders over all schools, plus (optionally)
  // every truncation of them.
  std::vector<std::vector<int>> lists;
  for (const auto& order : Permutations(schools)) lists.push_back(order);
  if (spec.outside_option) {
    std::map<std::vector<int>, bool> seen;
    for (const auto& l : lists) seen[l] = true;
    std::vector<std::vector<int>> truncated;
    for (const auto& order : Permutations(schools)) {
      for (int len = 0; len < schools; ++len) {
        std::vector<int> prefix(order.begin(), order.begin() + len);
        if (seen.emplace(prefix, true).second) truncated.push_back(prefix);
      }
    }
    lists.insert(lists.end(), truncated.begin(), truncated.end());
  }
  std::vector<std::string> type_names;
  for (const auto& l : lists) {
    type_names.push_back(l.empty() ? "none" : OrderName(l, school_names));
  }
  std::vector<IdList> type_spaces(students, IdList(type_names));

  const ProfileSpace space(Sizes(type_spaces));
  OutcomeRegistry registry;
  std::vector<std::vector<int>> matchings;
  std::vector<int> profile_outcome;
  for (int64_t profile = 0; profile < space.total(); ++profile) {
    const auto reported = space.Unflatten(profile);
    std::vector<std::vector<int>> prefs;
    for (int type : reported) prefs.push_back(lists[type]);
    const auto match = DeferredAcceptance(prefs, spec);
    std::string name;
    for (int s = 0; s < students; ++s) {
      if (s > 0) name += ",";
      name += student_names[s] + ":" + (match[s] < 0 ? "-" : school_names[match[s]]);
    }
    const int id = registry.Intern(name);
    if (id == static_cast<int>(matchings.size())) matchings.push_back(match);
    profile_outcome.push_back(id);
  }

  const int t = static_cast<int>(lists.size());
  UtilityTable utilities(std::vector<int>(students, t), registry.size());
  for (int s = 0; s < students; ++s) {
    for (int type = 0; type < t; ++type) {
      const auto& list = lists[type];
      for (int x = 0; x < registry.size(); ++x) {
        const int school = matchings[x][s];
        int value;
        if (school < 0) {
          value = 0;
        } else if (RankUtility(list, school) > 0) {
          value = RankUtility(list, school);
        } else {
          value = -1;  // unacceptable school
        }
        utilities.set(s, type, x, value);
      }
    }
  }
  std::vector<Lottery> outcome_map;
  for (int id : profile_outcome) outcome_map.push_back(Lottery::Degenerate(id));
  return Scf(IdList(student_names), type_spaces, registry.ids(),
             std::move(outcome_map), std::move(utilities));
}

std::vector<Rational> UniformAllocation(const std::vector<Rational>& peaks,
                                        const Rational& amount) {
  const int n = static_cast<int>(peaks.size());
  Rational total = 0;
  for (const auto& p : peaks) total += p;
  std::vector<Rational> sorted = peaks;
  const bool excess_demand = total >= amount;
  // Solve sum_j clip(p_j, lambda) = amount, where clip is min under excess
  // demand and max under excess supply.
  if (excess_demand) {
    std::sort(sorted.begin(), sorted.end());
  } else {
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
  }
  Rational settled = 0;
  Rational lambda;
  bool found = false;
  for (int k = 0; k < n; ++k) {
    // Agents k.. are rationed at lambda; agents before k get their peak.
    const Rational candidate = (amount - settled) / (n - k);
    const bool below_next = excess_demand ? candidate <= sorted[k]
                                          : candidate >= sorted[k];
    const bool above_prev =
        k == 0 || (excess_demand ? candidate >= sorted[k - 1]
                                 : candidate <= sorted[k - 1]);
    if (below_next && above_prev) {
      lambda = candidate;
      found = true;
      break;
    }
    settled += sorted[k];
  }
  if (!found) throw std::logic_error("uniform rule: no feasible lambda");
  std::vector<Rational> allocation;
  for (const auto& p : peaks) {
    if (excess_demand) {
      allocation.push_back(p < lambda ? p : lambda);
    } else {
      allocation.push_back(p > lambda ? p : lambda);
    }
  }
  return allocation;
}

Scf BuildUniformRule(int n_agents, const Rational& amount,
                     const std::vector<Rational>& peak_grid) {
  CheckIncreasing(peak_grid, 1);
  if (n_agents < 1) throw std::invalid_argument("need an agent");
  const int n = n_agents;
  const auto agents = AgentNames(n);
  std::vector<std::string> labels;
  for (const auto& p : peak_grid) labels.push_back(ToString(p));
  std::vector<IdList> type_spaces(n, IdList(labels));

  const ProfileSpace space(Sizes(type_spaces));
  OutcomeRegistry registry;
  std::vector<std::vector<Rational>> allocations;
  std::vector<int> profile_outcome;
  for (int64_t profile = 0; profile < space.total(); ++profile) {
    std::vector<Rational> peaks;
    for (int r : space.Unflatten(profile)) peaks.push_back(peak_grid[r]);
    auto allocation = UniformAllocation(peaks, amount);
    std::string name;
    for (int i = 0; i < n; ++i) {
      if (i > 0) name += ",";
      name += ToString(allocation[i]);
    }
    const int id = registry.Intern(name);
    if (id == static_cast<int>(allocations.size())) {
      allocations.push_back(std::move(allocation));
    }
    profile_outcome.push_back(id);
  }
  const int g = static_cast<int>(peak_grid.size());
  UtilityTable utilities(std::vector<int>(n, g), registry.size());
  for (int i = 0; i < n; ++i) {
    for (int type = 0; type < g; ++type) {
      for (int x = 0; x < registry.size(); ++x) {
        utilities.set(i, type, x, -Abs(allocations[x][i] - peak_grid[type]));
      }
    }
  }
  std::vector<Lottery> outcome_map;
  for (int id : profile_outcome) outcome_map.push_back(Lottery::Degenerate(id));
  return Scf(IdList(agents), type_spaces, registry.ids(),
             std::move(outcome_map), std::move(utilities));
}

Scf BuildMedianVoting(int n_voters, const std::vector<Rational>& alternatives) {
  if (n_voters < 1 || n_voters % 2 == 0) {
    throw std::invalid_argument("phantom configuration required");
  }
  CheckIncreasing(alternatives, 1);
  const int n = n_voters;
  const int g = static_cast<int>(alternatives.size());
  const auto agents = AgentNames(n);
  std::vector<std::string> labels;
  for (const auto& a : alternatives) labels.push_back(ToString(a));
  std::vector<IdList> type_spaces(n, IdList(labels));
  const ProfileSpace space(Sizes(type_spaces));

  UtilityTable utilities(std::vector<int>(n, g), g);
  for (int i = 0; i < n; ++i) {
    for (int type = 0; type < g; ++type) {
      for (int x = 0; x < g; ++x) {
        utilities.set(i, type, x, -Abs(alternatives[x] - alternatives[type]));
      }
    }
  }
  std::vector<Lottery> outcome_map;
  for (int64_t profile = 0; profile < space.total(); ++profile) {
    auto peaks = space.Unflatten(profile);
    std::nth_element(peaks.begin(), peaks.begin() + n / 2, peaks.end());
    outcome_map.push_back(Lottery::Degenerate(peaks[n / 2]));
  }
  return Scf(IdList(agents), type_spaces, IdList(labels),
             std::move(outcome_map), std::move(utilities));
}

Scf BuildConstant(int n_agents, int n_types) {
  const auto agents = AgentNames(n_agents);
  std::vector<std::string> labels;
  for (int t = 0; t < n_types; ++t) labels.push_back("t" + std::to_string(t));
  std::vector<IdList> type_spaces(n_agents, IdList(labels));
  const ProfileSpace space(Sizes(type_spaces));
  UtilityTable utilities(std::vector<int>(n_agents, n_types), 2);
  for (int i = 0; i < n_agents; ++i) {
    for (int t = 0; t < n_types; ++t) {
      utilities.set(i, t, 0, t % 2);
      utilities.set(i, t, 1, 1 - t % 2);
    }
  }
  std::vector<Lottery> outcome_map(space.total(), Lottery::Degenerate(0));
  return Scf(IdList(agents), type_spaces, IdList{"x", "y"},
             std::move(outcome_map), std::move(utilities));
}

Scf BuildDictatorship(int n_agents, int n_outcomes) {
  const auto agents = AgentNames(n_agents);
  std::vector<std::string> outcomes, labels;
  for (int x = 0; x < n_outcomes; ++x) {
    outcomes.push_back("x" + std::to_string(x + 1));
    labels.push_back("top" + std::to_string(x + 1));
  }
  std::vector<IdList> type_spaces(n_agents, IdList(labels));
  const ProfileSpace space(Sizes(type_spaces));
  // Type t ranks outcome t first, then the rest cyclically.
  UtilityTable utilities(std::vector<int>(n_agents, n_outcomes), n_outcomes);
  for (int i = 0; i < n_agents; ++i) {
    for (int t = 0; t < n_outcomes; ++t) {
      for (int x = 0; x < n_outcomes; ++x) {
        utilities.set(i, t, x, n_outcomes - (x - t + n_outcomes) % n_outcomes);
      }
    }
  }
  std::vector<Lottery> outcome_map;
  for (int64_t profile = 0; profile < space.total(); ++profile) {
    outcome_map.push_back(Lottery::Degenerate(space.Component(profile, 0)));
  }
  return Scf(IdList(agents), type_spaces, IdList(outcomes),
             std::move(outcome_map), std::move(utilities));
}

Example1 BuildExample1(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const IdList agents{"1", "2"};
  std::vector<IdList> type_spaces{IdList{"t1"}, IdList{"t2", "t2'"}};
  const IdList outcomes{"a", "b"};
  enum { kA = 0, kB = 1 };
  UtilityTable utilities({1, 2}, 2);
  utilities.set(0, 0, kA, 1);
  utilities.set(0, 0, kB, 0);
  utilities.set(1, 0, kA, 0);  // type t2 is indifferent
  utilities.set(1, 0, kB, 0);
  utilities.set(1, 1, kA, 0);
  utilities.set(1, 1, kB, 1);
  Scf revelation(agents, type_spaces, outcomes,
                 {Lottery::Degenerate(kA), Lottery::Degenerate(kB)}, utilities);

  std::vector<std::string> messages{"t2'"};
  std::vector<Lottery> outcome_fn{Lottery::Degenerate(kB)};
  for (int l = 1; l <= k; ++l) {
    messages.push_back("m" + std::to_string(l));
    outcome_fn.push_back(Lottery::Degenerate(kA));
  }
  Mechanism enlarged(agents, {IdList{"t1"}, IdList(messages)}, outcomes,
                     std::move(outcome_fn));
  return {std::move(revelation), std::move(enlarged)};
}

BayesianGame Example1EnlargedGame(const Example1& example, const Prior& prior) {
  return BayesianGame(example.enlarged, example.revelation.type_spaces(), prior,
                      example.revelation.utilities());
}

bool AdmissibleSet::Contains(const Lottery& lottery) const {
  const auto allowed = [this](int x) {
    return std::find(outcomes.begin(), outcomes.end(), x) != outcomes.end();
  };
  if (mixtures) {
    for (const auto& entry : lottery.weights()) {
      if (!allowed(entry.first)) return false;
    }
    return true;
  }
  return lottery.IsDegenerate() && allowed(lottery.weights().front().first);
}

Example5 BuildExample5(const Rational& eps) {
  if (!(eps > 0 && eps < 1)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
  Example5 ex;
  ex.eps = eps;
  ex.type_spaces = {IdList{"t1", "t1'", "t1''"}, IdList{"t2", "t2'"}};
  const IdList outcomes{"a", "b", "c", "d", "a'", "b'", "c'", "d'"};
  const Rational half_minus = Rational(1, 2) - eps;
  // Rows follow the outcome order a b c d a' b' c' d'.
  const std::vector<std::vector<Rational>> u1 = {
      {1, -1, half_minus, -1, -1, 1, -1, half_minus},
      {0, 0, 1, 0, 0, 0, 1, 0},
      {0, 0, 0, 1, 0, 0, 0, 1}};
  const std::vector<std::vector<Rational>> u2 = {
      {eps, 1, 0, 0, 0, 1 - eps, -1, -1},
      {1 - eps, 0, -1, -1, 1, eps, 0, 0}};
  ex.utilities = UtilityTable({3, 2}, 8);
  for (int t = 0; t < 3; ++t) {
    for (int x = 0; x < 8; ++x) ex.utilities.set(0, t, x, u1[t][x]);
  }
  for (int t = 0; t < 2; ++t) {
    for (int x = 0; x < 8; ++x) ex.utilities.set(1, t, x, u2[t][x]);
  }
  // phi(m1^k, m2^1) = k-th of (a, b, c, d); phi(m1^k, m2^2) = k-th primed.
  std::vector<Lottery> outcome_fn;
  for (int m1 = 0; m1 < 4; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      outcome_fn.push_back(Lottery::Degenerate(m1 + 4 * m2));
    }
  }
  ex.mechanism =
      Mechanism(IdList{"1", "2"},
                {IdList{"m1_1", "m1_2", "m1_3", "m1_4"}, IdList{"m2_1", "m2_2"}},
                outcomes, std::move(outcome_fn));
  // F over type profiles (t1 row major, t2 column).
  ex.correspondence = {
      {{0, 1}, true}, {{4, 5}, true},  // t1:  Delta{a,b}, Delta{a',b'}
      {{2}, false},   {{6}, false},    // t1': {c}, {c'}
      {{3}, false},   {{7}, false},    // t1'': {d}, {d'}
  };
  return ex;
}

std::vector<Scf> StrategyProofSelections(const Example5& example,
                                         const Rational& step) {
  if (!(step > 0 && step <= 1)) throw std::invalid_argument("bad grid step");
  const ProfileSpace space(Sizes(example.type_spaces));
  // Grid of mixtures for each mixture cell; singleton cells have one option.
  std::vector<std::vector<Lottery>> options(space.total());
  for (int64_t profile = 0; profile < space.total(); ++profile) {
    const auto& cell = example.correspondence[profile];
    if (!cell.mixtures) {
      for (int x : cell.outcomes) options[profile].push_back(Lottery::Degenerate(x));
      continue;
    }
    if (cell.outcomes.size() != 2) {
      throw std::invalid_argument("mixture cells must have two outcomes");
    }
    for (Rational w = 0; w <= 1; w += step) {
      std::vector<Lottery::Entry> entries{{cell.outcomes[0], w},
                                          {cell.outcomes[1], Rational(1 - w)}};
      options[profile].push_back(Lottery(std::move(entries)));
    }
  }
  std::vector<Scf> found;
  std::vector<size_t> choice(space.total(), 0);
  const IdList agents = example.mechanism.agents();
  while (true) {
    std::vector<Lottery> outcome_map;
    for (int64_t profile = 0; profile < space.total(); ++profile) {
      outcome_map.push_back(options[profile][choice[profile]]);
    }
    Scf candidate(agents, example.type_spaces, example.mechanism.outcomes(),
                  std::move(outcome_map), example.utilities);
    if (IsStrategyProof(candidate).holds) found.push_back(std::move(candidate));
    int64_t k = space.total() - 1;
    while (k >= 0 && ++choice[k] == options[k].size()) {
      choice[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return found;
}

std::vector<std::vector<int>> SurvivingOutcomes(const Example5& example) {
  const auto surviving =
      IteratedWeakDominance(example.mechanism, example.utilities);
  const ProfileSpace types(Sizes(example.type_spaces));
  const auto& messages = example.mechanism.profiles();
  std::vector<std::vector<int>> result(types.total());
  for (int64_t theta = 0; theta < types.total(); ++theta) {
    std::vector<bool> reached(example.mechanism.outcomes().size(), false);
    for (int64_t m = 0; m < messages.total(); ++m) {
      bool live = true;
      for (int i = 0; i < messages.num_agents() && live; ++i) {
        const auto& set = surviving[i][types.Component(theta, i)];
        live = std::find(set.begin(), set.end(), messages.Component(m, i)) !=
               set.end();
      }
      if (!live) continue;
      for (const auto& entry : example.mechanism.outcome(m).weights()) {
        reached[entry.first] = true;
      }
    }
    for (size_t x = 0; x < reached.size(); ++x) {
      if (reached[x]) result[theta].push_back(static_cast<int>(x));
    }
  }
  return result;
}

std::vector<NamedScf> DefaultInstances() {
  auto r = [](int p, int q = 1) { return Rational(p, q); };
  std::vector<NamedScf> out;
  out.push_back({"second-price", BuildSecondPrice({3, {r(0), r(1, 2), r(1)}})});
  out.push_back({"ttc-2", BuildTtc({2})});
  out.push_back({"ttc-3", BuildTtc({3})});
  out.push_back({"pivotal", BuildPivotal(3, {r(-3, 2), r(-1, 2), r(1, 2),
                                             r(3, 2)})});
  out.push_back({"spda", BuildSpda(DefaultSchoolChoice())});
  out.push_back({"uniform",
                 BuildUniformRule(3, r(1), {r(0), r(1, 3), r(2, 3), r(1)})});
  out.push_back({"median",
                 BuildMedianVoting(3, {r(1), r(2), r(3), r(4), r(5)})});
  return out;
}

}  // namespace empeq
