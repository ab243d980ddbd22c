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

// Command-line front end: build game documents, check scf properties, trace
// logistic QRE paths and classify equilibria.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "empeq/document.h"
#include "empeq/equilibrium.h"
#include "empeq/mechanisms.h"
#include "empeq/qre.h"
#include "empeq/scf.h"

namespace {

using namespace empeq;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void SetupLogging() {
  auto logger = spdlog::stderr_color_mt("empeq");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("EMPEQ_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

std::string ReadText(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), {}};
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

BayesianGame LoadGame(const std::string& path) {
  try {
    return ParseGame(ReadText(path));
  } catch (const DocumentError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<Rational> ParseGrid(const std::string& text) {
  std::vector<Rational> grid;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) grid.push_back(ParseRational(part));
  return grid;
}

HomotopySchedule ParseSchedule(const std::string& text, double limit_tol) {
  HomotopySchedule schedule;
  if (!text.empty()) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, ',')) parts.push_back(part);
    if (parts.size() != 3) {
      throw InputError("--schedule expects lambda0,growth,steps");
    }
    try {
      schedule.lambda0 = std::stod(parts[0]);
      schedule.growth = std::stod(parts[1]);
      schedule.max_steps = std::stoi(parts[2]);
    } catch (const std::exception&) {
      throw InputError("--schedule values must be numbers");
    }
  }
  if (limit_tol > 0.0) schedule.limit_tol = limit_tol;
  schedule.Validate();
  return schedule;
}

Prior MakePrior(const std::string& spec, const std::vector<IdList>& types,
                uint64_t seed) {
  std::vector<int> sizes;
  for (const auto& t : types) sizes.push_back(t.size());
  const ProfileSpace space(sizes);
  if (spec == "uniform") return Prior::Uniform(space);
  if (spec == "random") {
    std::mt19937_64 rng(seed);
    return RandomFullSupportPrior(space, rng);
  }
  const std::string prefix = "degenerate:";
  if (spec.rfind(prefix, 0) == 0) {
    std::vector<int> digits;
    std::stringstream stream(spec.substr(prefix.size()));
    std::string part;
    while (std::getline(stream, part, ',')) {
      if (digits.size() >= types.size()) throw InputError("too many types in --prior");
      const auto index = types[digits.size()].find(part);
      if (!index) throw InputError("unknown type '" + part + "' in --prior");
      digits.push_back(*index);
    }
    if (digits.size() != types.size()) throw InputError("--prior names too few types");
    return Prior::Degenerate(space, space.Flatten(digits));
  }
  throw InputError("--prior must be uniform, random or degenerate:T1,T2,...");
}

struct BuildArgs {
  std::string name;
  std::optional<int> n;
  std::optional<std::string> grid;
  std::string cost = "0";
  std::string amount = "1";
  int k = 0;
  std::string eps = "1/10";
  bool outside_option = false;
  std::string prior = "uniform";
  uint64_t seed = 1;
};

BayesianGame BuildGame(const BuildArgs& args) {
  auto grid_or = [&](const char* fallback) {
    return ParseGrid(args.grid.value_or(fallback));
  };
  auto from_scf = [&](const Scf& scf) {
    return DirectRevelationGame(scf,
                                MakePrior(args.prior, scf.type_spaces(), args.seed));
  };
  if (args.name == "second-price") {
    return from_scf(BuildSecondPrice({args.n.value_or(2), grid_or("0,1/2,1")}));
  }
  if (args.name == "first-price") {
    return from_scf(BuildFirstPrice({args.n.value_or(2), grid_or("0,1/2,1")}));
  }
  if (args.name == "ttc") return from_scf(BuildTtc({args.n.value_or(2)}));
  if (args.name == "pivotal") {
    return from_scf(BuildPivotal(args.n.value_or(3),
                                 grid_or("-3/2,-1/2,1/2,3/2"),
                                 ParseRational(args.cost)));
  }
  if (args.name == "spda") {
    auto spec = DefaultSchoolChoice();
    spec.outside_option = args.outside_option;
    return from_scf(BuildSpda(spec));
  }
  if (args.name == "uniform") {
    return from_scf(BuildUniformRule(args.n.value_or(3),
                                     ParseRational(args.amount),
                                     grid_or("0,1/3,2/3,1")));
  }
  if (args.name == "median") {
    return from_scf(BuildMedianVoting(args.n.value_or(3), grid_or("1,2,3,4,5")));
  }
  if (args.name == "example1") {
    const auto example = BuildExample1(std::max(args.k, 1));
    if (args.k == 0) return from_scf(example.revelation);
    return Example1EnlargedGame(
        example,
        MakePrior(args.prior, example.revelation.type_spaces(), args.seed));
  }
  if (args.name == "example5") {
    const auto example = BuildExample5(ParseRational(args.eps));
    return BayesianGame(example.mechanism, example.type_spaces,
                        MakePrior(args.prior, example.type_spaces, args.seed),
                        example.utilities);
  }
  throw InputError("unknown mechanism '" + args.name + "'");
}

Json VerdictJson(const Scf& scf, const Verdict& verdict) {
  Json out;
  out["holds"] = verdict.holds;
  if (verdict.witness) out["witness"] = DescribeWitness(scf, *verdict.witness);
  return out;
}

struct CheckResult {
  std::string text;
  bool all_hold = true;
};

CheckResult CheckScf(const std::string& path) {
  const auto game = LoadGame(path);
  std::optional<Scf> scf;
  try {
    scf = ScfFromRevelationGame(game);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
  const auto report = Classify(*scf);
  const std::pair<const char*, const Verdict*> rows[] = {
      {"strategy-proof", &report.strategy_proof},
      {"essentially unique dominant", &report.essentially_unique_dominant},
      {"non-bossy in welfare-outcome", &report.non_bossy_welfare_outcome},
      {"outcome rectangular", &report.outcome_rectangular}};
  std::ostringstream out;
  CheckResult result;
  out << "file: " << path << "\n";
  Json json;
  json["file"] = path;
  json["signs"] = report.Signs();
  const char* keys[] = {"strategy_proof", "essentially_unique_dominant",
                        "non_bossy_welfare_outcome", "outcome_rectangular"};
  int k = 0;
  for (const auto& [label, verdict] : rows) {
    std::string line = std::string(label);
    line.resize(30, ' ');
    out << line << (verdict->holds ? "+" : "-");
    if (verdict->witness) out << "  " << DescribeWitness(*scf, *verdict->witness);
    out << "\n";
    result.all_hold = result.all_hold && verdict->holds;
    json[keys[k++]] = VerdictJson(*scf, *verdict);
  }
  out << "signs: " << report.Signs() << "\n" << json.dump() << "\n";
  result.text = out.str();
  return result;
}

int RunCheckScf(const std::vector<std::string>& files, int jobs, bool strict) {
  std::vector<CheckResult> results(files.size());
  const size_t workers = std::max(1, jobs);
  for (size_t start = 0; start < files.size(); start += workers) {
    std::vector<std::future<CheckResult>> batch;
    for (size_t i = start; i < std::min(files.size(), start + workers); ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async
                                          : std::launch::deferred,
                                 CheckScf, files[i]));
    }
    for (size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }
  bool all_hold = true;
  for (const auto& r : results) {
    std::cout << r.text;
    all_hold = all_hold && r.all_hold;
  }
  return strict && !all_hold ? kNegative : kOk;
}

std::string CsvHeader(const BayesianGame& game) {
  std::string header = "lambda";
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      if (!game.InSupport(i, t)) continue;
      for (int m = 0; m < game.num_messages(i); ++m) {
        header += "," + game.mechanism().agents().name(i) + ":" +
                  game.types(i).name(t) + ":" +
                  game.mechanism().messages(i).name(m);
      }
    }
  }
  return header + ",residual";
}

std::string CsvRow(const BayesianGame& game, const TracePoint& point) {
  std::string row = fmt::format("{}", point.lambda);
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < game.types(i).size(); ++t) {
      if (!game.InSupport(i, t)) continue;
      for (double p : point.profile.at(i, t)) row += fmt::format(",{}", p);
    }
  }
  return row + fmt::format(",{}", point.residual);
}

int RunQreTrace(const std::string& path, const HomotopySchedule& schedule) {
  const auto game = LoadGame(path);
  std::cout << CsvHeader(game) << "\n";
  auto observer = [&](const TracePoint& point) {
    if (point.restarted) {
      spdlog::warn("branch restart from uniform at lambda {}", point.lambda);
    }
    spdlog::debug("lambda {} residual {}", point.lambda, point.residual);
    std::cout << CsvRow(game, point) << "\n";
  };
  Json tail;
  try {
    const auto trace = TraceLimitingLogistic(game, schedule, observer);
    tail["converged"] = true;
    tail["nash_gap"] = trace.nash_gap;
    tail["limit"] = ProfileToJson(game, trace.limit);
    std::cout << tail.dump() << "\n";
    return kOk;
  } catch (const TraceError& e) {
    tail["converged"] = false;
    tail["error"] = e.what();
    std::cout << tail.dump() << "\n";
    spdlog::error("{}", e.what());
    return kNegative;
  }
}

int RunClassifyEq(const std::string& path, const std::string& profile_path,
                  const HomotopySchedule& schedule, double tol, bool strict) {
  const auto game = LoadGame(path);
  StrategyProfile profile;
  try {
    profile = ProfileFromJson(game, Json::parse(ReadText(profile_path)));
  } catch (const Json::parse_error& e) {
    throw InputError(profile_path + ": not valid JSON");
  } catch (const DocumentError& e) {
    throw InputError(profile_path + ": " + e.what());
  }

  bool negative = false;
  const bool nash = IsBayesianNash(game, profile, tol);
  std::cout << "Nash: " << (nash ? "yes" : "no") << "\n";
  if (!nash) {
    std::cout << "nash_gap: " << NashGap(game, profile) << "\n";
    return strict ? kNegative : kOk;
  }

  const auto support = DominantSupportTest(game, profile, tol);
  if (support.passed) {
    std::cout << "dominant support: pass\n";
  } else {
    negative = true;
    std::cout << "dominant support: FAIL => not empirical (agent "
              << game.mechanism().agents().name(support.agent) << " type "
              << game.types(support.agent).name(support.type)
              << " never plays dominant message "
              << game.mechanism().messages(support.agent).name(support.message)
              << ")\n";
  }

  const auto monotone = IsWeaklyPayoffMonotone(game, profile);
  std::cout << "weakly payoff monotone: " << (monotone.verdict ? "yes" : "no")
            << "\n";

  if (support.passed) {
    CertifyOptions options;
    options.nash_tol = tol;
    const auto cert = CertifyEmpirical(game, profile, schedule, options);
    std::cout << "certificate: " << ToString(cert.verdict);
    if (!cert.sequence.empty()) {
      std::cout << " (" << cert.family << ", " << cert.sequence.size()
                << " profiles, final distance " << cert.sequence.back().distance
                << ")";
    }
    std::cout << "\n";
    negative = negative || cert.verdict !=
                               EmpiricalCertificate::Verdict::kCertifiedApproachable;
  } else {
    std::cout << "certificate: " << ToString(
                     EmpiricalCertificate::Verdict::kNecessaryTestFailed)
              << "\n";
  }

  if (game.mechanism().message_spaces() != game.type_spaces()) {
    std::cout << "truthful-equivalent: n/a (not a revelation game)\n";
    return strict && negative ? kNegative : kOk;
  }
  const Scf scf = ScfFromRevelationGame(game);
  OutcomeOptions outcome;
  outcome.nash_tol = tol;
  const auto report = ClassifyRevelationEquilibrium(scf, game.prior(), profile,
                                                    outcome);
  std::cout << "truthful-equivalent: "
            << (report.truthful_equivalent ? "yes" : "NO") << "\n";
  for (const auto& d : report.deviations) {
    std::cout << "  theta=" << ProfileKey(scf.type_spaces(), scf.profiles(), d.theta)
              << " tau=" << ProfileKey(scf.type_spaces(), scf.profiles(), d.tau)
              << " probability=" << d.probability << "\n";
  }
  negative = negative || !report.truthful_equivalent;
  return strict && negative ? kNegative : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  SetupLogging();
  CLI::App app{"empirical equilibrium toolkit for finite mechanisms"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "emit a game document");
  build_cmd->add_option("name", build.name,
                        "second-price, first-price, ttc, pivotal, spda, "
                        "uniform, median, example1, example5")
      ->required();
  build_cmd->add_option("--n,--agents", build.n, "number of agents");
  build_cmd->add_option("--grid", build.grid, "comma-separated rationals");
  build_cmd->add_option("--cost", build.cost, "pivotal project cost");
  build_cmd->add_option("--amount", build.amount, "uniform rule endowment");
  build_cmd->add_option("--k", build.k, "example1 copies (0: revelation game)");
  build_cmd->add_option("--eps", build.eps, "example5 eps");
  build_cmd->add_flag("--outside-option", build.outside_option,
                      "spda with truncated lists");
  build_cmd->add_option("--prior", build.prior,
                        "uniform, random or degenerate:T1,T2,...");
  build_cmd->add_option("--seed", build.seed, "seed for --prior random");

  std::vector<std::string> check_files;
  int jobs = 1;
  bool strict = false;
  auto* check_cmd = app.add_subcommand("check-scf", "classify scf properties");
  check_cmd->add_option("files", check_files, "game documents ('-' for stdin)")
      ->required();
  check_cmd->add_option("--jobs", jobs, "parallel inputs")->check(CLI::PositiveNumber);
  check_cmd->add_flag("--strict", strict, "exit 1 when a property fails");

  std::string trace_file;
  std::string schedule_text;
  double limit_tol = 0.0;
  auto* trace_cmd = app.add_subcommand("qre-trace", "trace logistic QRE");
  trace_cmd->add_option("file", trace_file, "game document")->required();
  trace_cmd->add_option("--schedule", schedule_text, "lambda0,growth,steps");
  trace_cmd->add_option("--tol", limit_tol, "limit tolerance");

  std::string eq_file;
  std::string profile_file;
  double nash_tol = kPayoffTolerance;
  auto* eq_cmd = app.add_subcommand("classify-eq", "classify an equilibrium");
  eq_cmd->add_option("file", eq_file, "game document")->required();
  eq_cmd->add_option("profile", profile_file, "profile JSON")->required();
  eq_cmd->add_option("--schedule", schedule_text, "lambda0,growth,steps");
  eq_cmd->add_option("--tol", nash_tol, "Nash tolerance");
  eq_cmd->add_flag("--strict", strict, "exit 1 on any negative verdict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*build_cmd) {
      std::cout << EmitGame(BuildGame(build));
      return kOk;
    }
    if (*check_cmd) return RunCheckScf(check_files, jobs, strict);
    if (*trace_cmd) {
      return RunQreTrace(trace_file, ParseSchedule(schedule_text, limit_tol));
    }
    if (*eq_cmd) {
      return RunClassifyEq(eq_file, profile_file,
                           ParseSchedule(schedule_text, 0.0), nash_tol, strict);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
