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

#include "empeq/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

namespace empeq {
namespace {

template <typename T>
void RequireValid(const BayesianGame& game,
                  const BasicStrategyProfile<T>& profile) {
  const auto problems = ValidateProfile(game, profile);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid profile: " + problems.front().detail);
  }
}

bool IsMixing(const std::vector<double>& dist) {
  return std::count_if(dist.begin(), dist.end(),
                       [](double p) { return p > 0.0; }) > 1;
}

StrategyProfile Tremble(const BayesianGame& game, const StrategyProfile& target,
                        double t) {
  StrategyProfile out = target;
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int type = 0; type < out.num_types(i); ++type) {
      auto& dist = out.at(i, type);
      if (dist.empty()) continue;
      const double uniform = 1.0 / static_cast<double>(dist.size());
      for (double& p : dist) p = (1.0 - t) * p + t * uniform;
    }
  }
  return out;
}

}  // namespace

MonotonicityReport IsWeaklyPayoffMonotone(const BayesianGame& game,
                                          const StrategyProfile& profile,
                                          double tol_p, double tol_u) {
  RequireValid(game, profile);
  MonotonicityReport report;
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      if (!game.InSupport(i, t)) continue;
      const auto payoffs = MessagePayoffs(game, profile, i, t);
      const auto& dist = profile.at(i, t);
      for (int m = 0; m < static_cast<int>(dist.size()); ++m) {
        for (int n = 0; n < static_cast<int>(dist.size()); ++n) {
          if (m == n) continue;
          if (dist[m] > dist[n] + tol_p && payoffs[m] <= payoffs[n] + tol_u) {
            report.violations.push_back(
                {i, t, m, n, dist[m], dist[n], payoffs[m], payoffs[n]});
          }
        }
      }
    }
  }
  report.verdict = report.violations.empty();
  return report;
}

template <typename T>
bool IsBayesianNash(const BayesianGame& game,
                    const BasicStrategyProfile<T>& profile, double tol) {
  RequireValid(game, profile);
  const T slack(tol);
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      if (!game.InSupport(i, t)) continue;
      const auto payoffs = MessagePayoffs(game, profile, i, t);
      const auto& dist = profile.at(i, t);
      T current(0);
      for (size_t m = 0; m < payoffs.size(); ++m) current += payoffs[m] * dist[m];
      for (const auto& u : payoffs) {
        if (u - current > slack) return false;
      }
    }
  }
  return true;
}

template bool IsBayesianNash(const BayesianGame&, const StrategyProfile&,
                             double);
template bool IsBayesianNash(const BayesianGame&, const ExactStrategyProfile&,
                             double);

std::vector<ExactStrategyProfile> EnumeratePureNash(const BayesianGame& game,
                                                    int64_t cap) {
  std::vector<std::pair<int, int>> slots;
  int64_t total = 1;
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      if (!game.InSupport(i, t)) continue;
      slots.emplace_back(i, t);
      total *= game.num_messages(i);
      if (total > cap) {
        throw std::length_error("pure profile count exceeds the cap");
      }
    }
  }
  std::vector<std::vector<int>> choice(game.num_agents());
  for (int i = 0; i < game.num_agents(); ++i) {
    choice[i].assign(game.types(i).size(), -1);
  }
  for (const auto& [i, t] : slots) choice[i][t] = 0;

  std::vector<ExactStrategyProfile> found;
  while (true) {
    auto profile = ExactStrategyProfile::Pure(game, choice);
    if (IsBayesianNash(game, profile, 0.0)) found.push_back(std::move(profile));
    // Last slot varies fastest so results follow the declared order.
    int k = static_cast<int>(slots.size()) - 1;
    for (; k >= 0; --k) {
      const auto [i, t] = slots[k];
      if (++choice[i][t] < game.num_messages(i)) break;
      choice[i][t] = 0;
    }
    if (k < 0) break;
  }
  return found;
}

SupportTestResult DominantSupportTest(const BayesianGame& game,
                                      const StrategyProfile& profile,
                                      double nash_tol, double support_tol) {
  if (!IsBayesianNash(game, profile, nash_tol)) {
    throw std::invalid_argument("profile is not a Bayesian Nash equilibrium");
  }
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      if (!game.InSupport(i, t)) continue;
      const auto& dist = profile.at(i, t);
      for (int m : WeaklyDominantMessages(game.mechanism(), game.utilities(),
                                          i, t)) {
        if (!(dist[m] > support_tol)) return {false, i, t, m};
      }
    }
  }
  return {};
}

std::string ToString(EmpiricalCertificate::Verdict verdict) {
  switch (verdict) {
    case EmpiricalCertificate::Verdict::kNecessaryTestFailed:
      return "necessary-test-failed";
    case EmpiricalCertificate::Verdict::kCertifiedApproachable:
      return "certified-approachable";
    case EmpiricalCertificate::Verdict::kInconclusive:
      break;
  }
  return "inconclusive";
}

EmpiricalCertificate CertifyEmpirical(const BayesianGame& game,
                                      const StrategyProfile& target,
                                      const HomotopySchedule& schedule,
                                      const CertifyOptions& options) {
  schedule.Validate();
  EmpiricalCertificate cert;
  cert.target = target;
  cert.support = DominantSupportTest(game, target, options.nash_tol);
  if (!cert.support.passed) {
    cert.verdict = EmpiricalCertificate::Verdict::kNecessaryTestFailed;
    return cert;
  }

  SolverOptions solver;
  solver.residual_tol = schedule.residual_tol;
  solver.max_steps = options.solver_max_steps;

  std::vector<std::vector<bool>> mixing(game.num_agents());
  bool any_mixing = false;
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      const bool mix = game.InSupport(i, t) && IsMixing(target.at(i, t));
      mixing[i].push_back(mix);
      any_mixing = any_mixing || mix;
    }
  }
  const std::vector<double> no_eps = {0.0};
  const auto& eps_grid = any_mixing ? options.eps_grid : no_eps;

  std::vector<CertificateStep> sequence;
  double last = std::numeric_limits<double>::infinity();
  StrategyProfile previous = target;
  for (int k = 0; k < schedule.max_steps && !(last < schedule.limit_tol); ++k) {
    const double lambda = schedule.Lambda(k);
    // Mixers need payoff gaps inside their support to vanish faster than
    // their precision grows.
    const double precision = std::sqrt(lambda);
    std::optional<CertificateStep> best;
    for (double eps : eps_grid) {
      std::vector<std::vector<Response>> rows(game.num_agents());
      for (int i = 0; i < game.num_agents(); ++i) {
        for (int t = 0; t < game.types(i).size(); ++t) {
          rows[i].push_back(mixing[i][t] ? Response::Kappa(eps, precision)
                                         : Response::Logistic(lambda));
        }
      }
      const ResponseParams params(std::move(rows));
      for (const StrategyProfile* init : {&target, &std::as_const(previous)}) {
        QreSolution solution;
        try {
          solution = QreFixedPoint(game, params, *init, solver);
        } catch (const QreError&) {
          continue;
        }
        auto report = IsWeaklyPayoffMonotone(game, solution.profile,
                                             options.tol_p, options.tol_u);
        if (!report.verdict) continue;
        const double distance = MaxDistance(solution.profile, target);
        if (!best || distance < best->distance) {
          best = CertificateStep{std::move(solution.profile), distance,
                                 std::move(report)};
        }
      }
    }
    if (best && best->distance < last) {
      last = best->distance;
      previous = best->profile;
      sequence.push_back(std::move(*best));
    }
  }
  if (last < schedule.limit_tol) {
    cert.verdict = EmpiricalCertificate::Verdict::kCertifiedApproachable;
    cert.family = "perturbed-response";
    cert.sequence = std::move(sequence);
    return cert;
  }

  std::vector<CertificateStep> trembles;
  double tremble_last = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 60 && !(tremble_last < schedule.limit_tol); ++j) {
    auto profile = Tremble(game, target, std::ldexp(1.0, -j));
    auto report =
        IsWeaklyPayoffMonotone(game, profile, options.tol_p, options.tol_u);
    if (!report.verdict) continue;
    const double distance = MaxDistance(profile, target);
    if (!(distance < tremble_last)) continue;
    tremble_last = distance;
    trembles.push_back({std::move(profile), distance, std::move(report)});
  }
  if (tremble_last < schedule.limit_tol) {
    cert.verdict = EmpiricalCertificate::Verdict::kCertifiedApproachable;
    cert.family = "tremble";
    cert.sequence = std::move(trembles);
    return cert;
  }
  cert.sequence = std::move(sequence);
  return cert;
}

OutcomeReport ClassifyRevelationEquilibrium(const Scf& scf, const Prior& prior,
                                            const StrategyProfile& profile,
                                            const OutcomeOptions& options) {
  const BayesianGame game = DirectRevelationGame(scf, prior);
  if (!IsBayesianNash(game, profile, options.nash_tol)) {
    throw std::invalid_argument("profile is not a Bayesian Nash equilibrium");
  }
  const auto& space = scf.profiles();
  const int n = scf.num_agents();
  OutcomeReport report;
  std::vector<double> induced(scf.outcomes().size());
  for (int64_t theta : prior.support()) {
    std::fill(induced.begin(), induced.end(), 0.0);
    for (int64_t tau = 0; tau < space.total(); ++tau) {
      double prob = 1.0;
      for (int i = 0; i < n && prob > 0.0; ++i) {
        prob *= profile.at(i, space.Component(theta, i))[space.Component(tau, i)];
      }
      if (!(prob > 0.0)) continue;
      for (const auto& [outcome, weight] : scf.outcome(tau).weights()) {
        induced[outcome] += prob * ToDouble(weight);
      }
      if (prob > options.support_tol &&
          !(scf.outcome(tau) == scf.outcome(theta))) {
        report.deviations.push_back({theta, tau, prob});
      }
    }
    for (int x = 0; x < static_cast<int>(induced.size()); ++x) {
      const double distance =
          std::abs(induced[x] - ToDouble(scf.outcome(theta).Probability(x)));
      report.max_distance = std::max(report.max_distance, distance);
    }
  }
  report.truthful_equivalent = report.deviations.empty();
  return report;
}

}  // namespace empeq
