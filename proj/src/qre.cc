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

#include "empeq/qre.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace empeq {

std::vector<double> LogisticResponse(double lambda,
                                     std::span<const double> payoffs) {
  std::vector<double> out(payoffs.size());
  if (payoffs.empty()) return out;
  const double top = *std::max_element(payoffs.begin(), payoffs.end());
  double total = 0.0;
  for (size_t m = 0; m < payoffs.size(); ++m) {
    out[m] = std::exp(lambda * (payoffs[m] - top));
    total += out[m];
  }
  for (double& p : out) p /= total;
  return out;
}

std::vector<double> KappaResponse(double eps, double lambda,
                                  std::span<const double> payoffs) {
  auto out = LogisticResponse(lambda, payoffs);
  const double floor = eps / static_cast<double>(payoffs.size());
  for (double& p : out) p = floor + (1.0 - eps) * p;
  return out;
}

Response Response::Logistic(double lambda) {
  Response r;
  r.lambda = lambda;
  r.Validate();
  return r;
}

Response Response::Kappa(double eps, double lambda) {
  Response r;
  r.kind = Kind::kKappa;
  r.eps = eps;
  r.lambda = lambda;
  r.Validate();
  return r;
}

std::vector<double> Response::operator()(
    std::span<const double> payoffs) const {
  return kind == Kind::kKappa ? KappaResponse(eps, lambda, payoffs)
                              : LogisticResponse(lambda, payoffs);
}

void Response::Validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be finite and nonnegative");
  }
  if (kind == Kind::kKappa && !(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("kappa eps must lie in (0, 1)");
  }
}

ResponseParams::ResponseParams(std::vector<std::vector<Response>> responses)
    : responses_(std::move(responses)) {
  for (const auto& row : responses_) {
    for (const auto& r : row) r.Validate();
  }
}

ResponseParams ResponseParams::Uniform(const BayesianGame& game,
                                       const Response& response) {
  std::vector<std::vector<Response>> rows(game.num_agents());
  for (int i = 0; i < game.num_agents(); ++i) {
    rows[i].assign(game.types(i).size(), response);
  }
  return ResponseParams(std::move(rows));
}

StrategyProfile ResponseMap(const BayesianGame& game,
                            const ResponseParams& params,
                            const StrategyProfile& profile) {
  StrategyProfile next = profile;
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      if (!game.InSupport(i, t)) continue;
      const auto payoffs = MessagePayoffs(game, profile, i, t);
      next.at(i, t) = params.at(i, t)(payoffs);
    }
  }
  return next;
}

QreSolution QreFixedPoint(const BayesianGame& game,
                          const ResponseParams& params,
                          const StrategyProfile& init,
                          const SolverOptions& options) {
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw std::invalid_argument("damping must lie in (0, 1]");
  }
  const auto problems = ValidateProfile(game, init);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid initial profile: " +
                                problems.front().detail);
  }
  constexpr int64_t kStallWindow = 200;
  const double min_damping = options.damping / 64.0;

  StrategyProfile current = init;
  StrategyProfile best = init;
  double best_residual = std::numeric_limits<double>::infinity();
  double damping = options.damping;
  double window_start = best_residual;
  for (int64_t step = 0; step < options.max_steps; ++step) {
    const StrategyProfile target = ResponseMap(game, params, current);
    const double residual = MaxDistance(target, current);
    if (residual < best_residual) {
      best_residual = residual;
      best = current;
    }
    if (residual < options.residual_tol) {
      return {std::move(current), residual, step};
    }
    if ((step + 1) % kStallWindow == 0) {
      if (!(best_residual < 0.5 * window_start) && damping > min_damping) {
        damping = std::max(min_damping, damping / 2.0);
      }
      window_start = best_residual;
    }
    for (int i = 0; i < game.num_agents(); ++i) {
      for (int t = 0; t < current.num_types(i); ++t) {
        auto& dist = current.at(i, t);
        const auto& goal = target.at(i, t);
        for (size_t m = 0; m < dist.size(); ++m) {
          dist[m] = (1.0 - damping) * dist[m] + damping * goal[m];
        }
      }
    }
  }
  throw QreError("fixed point iteration did not converge", std::move(best),
                 best_residual);
}

double NashGap(const BayesianGame& game, const StrategyProfile& profile) {
  double gap = 0.0;
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      if (!game.InSupport(i, t)) continue;
      const auto payoffs = MessagePayoffs(game, profile, i, t);
      const auto& dist = profile.at(i, t);
      double current = 0.0;
      for (size_t m = 0; m < payoffs.size(); ++m) current += payoffs[m] * dist[m];
      const double top = *std::max_element(payoffs.begin(), payoffs.end());
      gap = std::max(gap, top - current);
    }
  }
  return gap;
}

void HomotopySchedule::Validate() const {
  if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) {
    throw std::invalid_argument("lambda0 must be finite and nonnegative");
  }
  if (!(growth > 1.0)) throw std::invalid_argument("growth must exceed 1");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
  if (!(residual_tol > 0.0) || !(limit_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
}

double HomotopySchedule::Lambda(int step) const {
  const double base = lambda0 > 0.0 ? lambda0 : 0.1;
  return base * std::pow(growth, step);
}

Trace TraceLimitingLogistic(
    const BayesianGame& game, const HomotopySchedule& schedule,
    const std::function<void(const TracePoint&)>& observer) {
  schedule.Validate();
  SolverOptions options;
  options.residual_tol = schedule.residual_tol;
  const double nash_tol = 2.0 * schedule.limit_tol * game.PayoffRange();

  Trace trace;
  auto emit = [&](TracePoint point) {
    if (observer) observer(point);
    trace.path.push_back(std::move(point));
  };

  StrategyProfile current = StrategyProfile::Uniform(game);
  if (schedule.lambda0 == 0.0) emit({0.0, current, 0.0, false});

  for (int k = 0; k < schedule.max_steps; ++k) {
    const double lambda = schedule.Lambda(k);
    const auto params = ResponseParams::Uniform(game, Response::Logistic(lambda));
    TracePoint point;
    point.lambda = lambda;
    try {
      auto solution = QreFixedPoint(game, params, current, options);
      point.profile = std::move(solution.profile);
      point.residual = solution.residual;
    } catch (const QreError&) {
      try {
        auto solution = QreFixedPoint(game, params,
                                      StrategyProfile::Uniform(game), options);
        point.profile = std::move(solution.profile);
        point.residual = solution.residual;
        point.restarted = true;
      } catch (const QreError& error) {
        point.profile = error.best();
        point.residual = error.residual();
        emit(point);
        throw TraceError("no fixed point at lambda " + std::to_string(lambda),
                         std::move(trace.path));
      }
    }
    const bool had_previous = !trace.path.empty();
    const double change = MaxDistance(point.profile, current);
    current = point.profile;
    emit(std::move(point));
    if (!had_previous || change >= schedule.limit_tol) continue;
    const double gap = NashGap(game, current);
    if (gap <= nash_tol) {
      trace.limit = current;
      trace.nash_gap = gap;
      return trace;
    }
  }
  throw TraceError("limit not reached within max_steps", std::move(trace.path));
}

}  // namespace empeq
