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

#include <random>

#include "empeq/document.h"
#include "empeq/mechanisms.h"
#include "support.h"

namespace empeq {
namespace {

Rational R(int p, int q = 1) { return Rational(p, q); }

const char* kPennies = R"({
  "agents": ["A", "B"],
  "outcomes": ["win", "lose"],
  "type_spaces": {"A": ["a"], "B": ["b", "b2"]},
  "utilities": {
    "A": {"a": {"win": "1", "lose": "-1"}},
    "B": {"b": {"win": "-1", "lose": "1"}, "b2": {"win": "1/2", "lose": "0"}}
  },
  "prior": {"a,b": "1"},
  "mechanism": {
    "message_spaces": {"A": ["H", "T"], "B": ["H", "T"]},
    "outcome_fn": {
      "H,H": {"win": "1"},
      "H,T": {"lose": "1"},
      "T,H": {"win": "1/3", "lose": "2/3"},
      "T,T": {"win": "1"}
    }
  }
})";

std::vector<BayesianGame> BuilderGames() {
  std::mt19937_64 rng(3);
  std::vector<Scf> scfs = {BuildSecondPrice({2, {R(0), R(1, 2), R(1)}}),
                           BuildFirstPrice({2, {R(0), R(1, 2), R(1)}}),
                           BuildTtc({3}),
                           BuildPivotal(2, {R(-1), R(0), R(1)}, R(1, 3)),
                           BuildSpda(DefaultSchoolChoice()),
                           BuildUniformRule(2, R(1), {R(0), R(1, 2), R(1)}),
                           BuildMedianVoting(3, {R(1), R(2), R(3)}),
                           BuildDictatorship(2, 3),
                           BuildExample1(1).revelation};
  std::vector<BayesianGame> games;
  for (const auto& scf : scfs) {
    games.push_back(DirectRevelationGame(scf, Prior::Uniform(scf.profiles())));
    games.push_back(DirectRevelationGame(scf, RandomFullSupportPrior(scf.profiles(), rng)));
    games.push_back(DirectRevelationGame(scf, Prior::Degenerate(scf.profiles(), 0)));
  }
  const auto ex1 = BuildExample1(3);
  games.push_back(Example1EnlargedGame(ex1, Prior::Uniform(ex1.revelation.profiles())));
  const auto ex5 = BuildExample5(R(1, 4));
  games.push_back(BayesianGame(ex5.mechanism, ex5.type_spaces,
                               Prior::Uniform(ProfileSpace({3, 2})), ex5.utilities));
  for (int k = 0; k < 20; ++k) games.push_back(testing::RandomGame(rng, 2 + k % 2, 3, 3, k % 2));
  return games;
}

TEST_CASE("hand-written document") {
  const auto game = ParseGame(kPennies);
  CHECK(game.num_agents() == 2);
  CHECK(game.types(1).name(1) == "b2");
  CHECK(game.utilities().at(1, 1, 0) == R(1, 2));
  CHECK(game.prior().weight(0) == 1);
  CHECK(game.prior().weight(1) == 0);
  CHECK_FALSE(game.InSupport(1, 1));
  CHECK(game.mechanism().outcome(2).Probability(1) == R(2, 3));
  CHECK(game.Payoff(0, 0, 2) == R(-1, 3));
}

TEST_CASE("round trip for every builder") {
  for (const auto& game : BuilderGames()) {
    const std::string text = EmitGame(game);
    const auto back = ParseGame(text);
    CHECK(back == game);
    CHECK(EmitGame(back) == text);
    CHECK(text.back() == '\n');
  }
}

TEST_CASE("random priors have full support and fixed seeds") {
  const ProfileSpace space({3, 4});
  std::mt19937_64 a(11), b(11);
  const Prior p = RandomFullSupportPrior(space, a);
  const Prior q = RandomFullSupportPrior(space, b);
  CHECK(p.weights() == q.weights());
  CHECK(p.full_support());
  Rational total = 0;
  for (const auto& w : p.weights()) total += w;
  CHECK(total == 1);
}

Json Pennies() { return Json::parse(kPennies); }

TEST_CASE("malformed documents are rejected") {
  auto expect_error = [](const Json& doc) {
    CHECK_THROWS_AS(GameFromJson(doc), DocumentError);
  };
  CHECK_THROWS_AS(ParseGame("{"), DocumentError);
  CHECK_THROWS_AS(ParseGame("[]"), DocumentError);

  Json d = Pennies();
  d.erase("prior");
  expect_error(d);
  d = Pennies();
  d["extra"] = 1;
  expect_error(d);
  d = Pennies();
  d["mechanism"]["extra"] = 1;
  expect_error(d);
  d = Pennies();
  d["agents"] = {"A", "A"};
  expect_error(d);
  d = Pennies();
  d["outcomes"] = {"win", "lo,se"};
  expect_error(d);
  d = Pennies();
  d["utilities"]["A"]["a"].erase("lose");
  expect_error(d);
  d = Pennies();
  d["utilities"]["A"]["a"]["win"] = "1/0";
  expect_error(d);
  d = Pennies();
  d["utilities"]["A"]["a"]["win"] = "one";
  expect_error(d);
  d = Pennies();
  d["prior"]["a,b"] = "1/2";
  expect_error(d);
  d = Pennies();
  d["prior"] = {{"a,b", "3/2"}, {"a,b2", "-1/2"}};
  expect_error(d);
  d = Pennies();
  d["prior"]["a,zz"] = "0";
  expect_error(d);
  d = Pennies();
  d["mechanism"]["outcome_fn"]["H,H"] = {{"win", "1/2"}};
  expect_error(d);
  d = Pennies();
  d["mechanism"]["outcome_fn"]["H,H"] = {{"draw", "1"}};
  expect_error(d);
  d = Pennies();
  d["mechanism"]["outcome_fn"].erase("T,T");
  expect_error(d);
  d = Pennies();
  d["mechanism"]["outcome_fn"]["H"] = {{"win", "1"}};
  expect_error(d);
  d = Pennies();
  d["type_spaces"]["B"] = Json::array();
  expect_error(d);
  CHECK_NOTHROW(GameFromJson(Pennies()));
}

TEST_CASE("profiles") {
  const auto game = ParseGame(kPennies);
  const auto s = ProfileFromJson(
      game, Json::parse(R"({"A": {"a": {"H": "1/3", "T": 0.6666666666666667}},
                            "B": {"b": {"T": 1}}})"));
  CHECK(s.at(0, 0)[0] == doctest::Approx(1.0 / 3));
  CHECK(s.at(1, 0) == std::vector<double>{0.0, 1.0});
  CHECK(s.at(1, 1).empty());

  const auto json = ProfileToJson(game, s);
  CHECK(ProfileFromJson(game, json) == s);
  CHECK_FALSE(json["B"].contains("b2"));

  auto reject = [&](const char* text) {
    CHECK_THROWS_AS(ProfileFromJson(game, Json::parse(text)), DocumentError);
  };
  reject(R"({"A": {"a": {"H": 1}}})");                        // supported type missing
  reject(R"({"A": {"a": {"H": 1}}, "B": {"b": {"H": 0.5}}})");  // not normalized
  reject(R"({"A": {"a": {"H": 1}}, "B": {"b": {"X": 1}}})");
  reject(R"({"A": {"a": {"H": 1}}, "B": {"zz": {"H": 1}}})");
  reject(R"({"A": {"a": {"H": 1}}, "C": {}})");
  reject(R"({"A": {"a": {"H": 2, "T": -1}}, "B": {"b": {"H": 1}}})");
  reject(R"([1, 2])");
}

TEST_CASE("profile keys") {
  const auto game = ParseGame(kPennies);
  CHECK(ProfileKey(game.type_spaces(), game.type_profiles(), 1) == "a,b2");
  CHECK(ProfileKey(game.mechanism().message_spaces(), game.mechanism().profiles(), 2) ==
        "T,H");
}

}  // namespace
}  // namespace empeq
