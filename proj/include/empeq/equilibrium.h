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

#ifndef EMPEQ_EQUILIBRIUM_H_
#define EMPEQ_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "empeq/game.h"
#include "empeq/qre.h"
#include "empeq/scf.h"

namespace empeq {

inline constexpr double kProbabilityGapTolerance = 1e-9;
inline constexpr double kUtilityGapTolerance = 1e-9;

// sigma(m) > sigma(n) + tol_p while U(m) <= U(n) + tol_u.
struct MonotonicityViolation {
  int agent;
  int type;
  int m;
  int n;
  double prob_m;
  double prob_n;
  double payoff_m;
  double payoff_n;
};

struct MonotonicityReport {
  bool verdict = true;
  std::vector<MonotonicityViolation> violations;
};

MonotonicityReport IsWeaklyPayoffMonotone(
    const BayesianGame& game, const StrategyProfile& profile,
    double tol_p = kProbabilityGapTolerance,
    double tol_u = kUtilityGapTolerance);

// True iff no supported agent-type has a message improving on its current
// mixture by more than tol. With exact profiles and tol = 0 the comparison is
// exact.
template <typename T>
bool IsBayesianNash(const BayesianGame& game,
                    const BasicStrategyProfile<T>& profile, double tol);

// Every pure behavior profile that is an exact Bayesian Nash equilibrium.
// Types outside the prior support are left unspecified. Throws
// std::length_error when the number of pure profiles exceeds `cap`.
std::vector<ExactStrategyProfile> EnumeratePureNash(const BayesianGame& game,
                                                    int64_t cap = 1 << 20);

// Necessary condition for an empirical equilibrium: every weakly dominant
// message of the mechanism is played with positive probability by each
// supported agent-type.
struct SupportTestResult {
  bool passed = true;
  int agent = -1;
  int type = -1;
  int message = -1;  // dominant message missing from the support
};

// Throws std::invalid_argument when the profile is not a Bayesian Nash
// equilibrium within `nash_tol`. Probabilities at or below `support_tol`
// count as outside the support.
SupportTestResult DominantSupportTest(const BayesianGame& game,
                                      const StrategyProfile& profile,
                                      double nash_tol = kPayoffTolerance,
                                      double support_tol = 0.0);

struct CertificateStep {
  StrategyProfile profile;
  double distance = 0.0;
  MonotonicityReport report;
};

struct EmpiricalCertificate {
  enum class Verdict { kNecessaryTestFailed, kCertifiedApproachable,
                       kInconclusive };
  Verdict verdict = Verdict::kInconclusive;
  StrategyProfile target;
  std::vector<CertificateStep> sequence;
  SupportTestResult support;
  // "perturbed-response", "tremble" or empty.
  std::string family;
};

std::string ToString(EmpiricalCertificate::Verdict verdict);

struct CertifyOptions {
  double tol_p = kProbabilityGapTolerance;
  double tol_u = kUtilityGapTolerance;
  double nash_tol = kPayoffTolerance;
  std::vector<double> eps_grid = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12};
  int64_t solver_max_steps = 20000;
};

// Searches for weakly payoff monotone profiles converging to `target` with
// strictly decreasing distance. Agent-types whose target is a nondegenerate
// mixture use kappa responses with a slowly growing precision and a
// grid-searched eps; the others use logistic responses along the schedule.
// Falls back to uniform trembles (1 - t) target + t uniform. Throws
// std::invalid_argument when the target is not a Bayesian Nash equilibrium.
EmpiricalCertificate CertifyEmpirical(const BayesianGame& game,
                                      const StrategyProfile& target,
                                      const HomotopySchedule& schedule = {},
                                      const CertifyOptions& options = {});

struct DeviatingPair {
  int64_t theta;
  int64_t tau;
  double probability;
};

struct OutcomeReport {
  bool truthful_equivalent = true;
  // max over supported theta of |sum_tau sigma(tau|theta) g(tau) - g(theta)|
  // in the outcome max-norm.
  double max_distance = 0.0;
  std::vector<DeviatingPair> deviations;
};

struct OutcomeOptions {
  double nash_tol = 1e-6;
  double support_tol = 0.0;
};

// Compares g(tau) with g(theta) for every theta in the prior support and
// every report profile tau played with probability above support_tol.
// Throws std::invalid_argument when the profile is not an equilibrium of the
// direct revelation game.
OutcomeReport ClassifyRevelationEquilibrium(const Scf& scf, const Prior& prior,
                                            const StrategyProfile& profile,
                                            const OutcomeOptions& options = {});

}  // namespace empeq

#endif  // EMPEQ_EQUILIBRIUM_H_
