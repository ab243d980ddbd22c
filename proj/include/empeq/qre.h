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

#ifndef EMPEQ_QRE_H_
#define EMPEQ_QRE_H_

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "empeq/game.h"

namespace empeq {

// l^lambda: softmax with inverse temperature lambda, max-subtracted.
std::vector<double> LogisticResponse(double lambda,
                                     std::span<const double> payoffs);

// kappa^{eps,lambda} = eps/n + (1 - eps) l^lambda. Every coordinate is at
// least eps/n.
std::vector<double> KappaResponse(double eps, double lambda,
                                  std::span<const double> payoffs);

struct Response {
  enum class Kind { kLogistic, kKappa };
  Kind kind = Kind::kLogistic;
  double lambda = 0.0;
  double eps = 0.0;  // used by kKappa only

  static Response Logistic(double lambda);
  static Response Kappa(double eps, double lambda);

  std::vector<double> operator()(std::span<const double> payoffs) const;
  // Throws std::invalid_argument on lambda < 0 or eps outside (0, 1).
  void Validate() const;
};

// One response function per agent and type.
class ResponseParams {
 public:
  ResponseParams() = default;
  explicit ResponseParams(std::vector<std::vector<Response>> responses);

  static ResponseParams Uniform(const BayesianGame& game,
                                const Response& response);

  const Response& at(int agent, int type) const {
    return responses_.at(agent).at(type);
  }
  Response& at(int agent, int type) { return responses_.at(agent).at(type); }

 private:
  std::vector<std::vector<Response>> responses_;
};

struct SolverOptions {
  double damping = 0.5;
  double residual_tol = 1e-10;
  int64_t max_steps = 100000;
};

struct QreSolution {
  StrategyProfile profile;
  double residual = 0.0;
  int64_t steps = 0;
};

// Raised when the damped iteration does not reach residual_tol.
class QreError : public std::runtime_error {
 public:
  QreError(const std::string& what, StrategyProfile best, double residual)
      : std::runtime_error(what), best_(std::move(best)), residual_(residual) {}
  const StrategyProfile& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  StrategyProfile best_;
  double residual_;
};

// Q(U(sigma)) on supported agent-types; other types are copied through.
StrategyProfile ResponseMap(const BayesianGame& game,
                            const ResponseParams& params,
                            const StrategyProfile& profile);

// sigma <- (1 - d) sigma + d Q(U(sigma)) until the max-norm residual
// |Q(U(sigma)) - sigma| drops below residual_tol. The damping is halved
// (down to 1/64 of its initial value) when the residual stalls.
QreSolution QreFixedPoint(const BayesianGame& game,
                          const ResponseParams& params,
                          const StrategyProfile& init,
                          const SolverOptions& options = {});

// Largest gain any supported agent-type gets from a pure deviation.
double NashGap(const BayesianGame& game, const StrategyProfile& profile);

struct HomotopySchedule {
  double lambda0 = 0.1;
  double growth = 1.5;
  int max_steps = 80;
  double residual_tol = 1e-10;
  double limit_tol = 1e-7;

  // lambda0 may be 0: the path then starts from the uniform point and the
  // geometric part continues from 0.1.
  void Validate() const;
  double Lambda(int step) const;
};

struct TracePoint {
  double lambda = 0.0;
  StrategyProfile profile;
  double residual = 0.0;
  bool restarted = false;  // warm start failed; solved from uniform
};

struct Trace {
  std::vector<TracePoint> path;
  StrategyProfile limit;
  double nash_gap = 0.0;
};

class TraceError : public std::runtime_error {
 public:
  TraceError(const std::string& what, std::vector<TracePoint> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<TracePoint>& partial() const { return partial_; }

 private:
  std::vector<TracePoint> partial_;
};

// Follows logistic QRE along lambda_k = lambda0 growth^k with warm starts.
// Stops once two successive solutions are within limit_tol and the latest is
// an eps-Nash equilibrium with eps = 2 limit_tol PayoffRange(). The optional
// observer sees every point as it is produced.
Trace TraceLimitingLogistic(
    const BayesianGame& game, const HomotopySchedule& schedule = {},
    const std::function<void(const TracePoint&)>& observer = nullptr);

}  // namespace empeq

#endif  // EMPEQ_QRE_H_
