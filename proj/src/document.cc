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

#include "empeq/document.h"

#include <set>
#include <sstream>

namespace empeq {
namespace {

void RequireKeys(const Json& node, const std::set<std::string>& allowed,
                 const std::string& where) {
  if (!node.is_object()) throw DocumentError(where + " must be an object");
  for (const auto& item : node.items()) {
    if (!allowed.contains(item.key())) {
      throw DocumentError("unknown key '" + item.key() + "' in " + where);
    }
  }
  for (const auto& key : allowed) {
    if (!node.contains(key)) {
      throw DocumentError("missing key '" + key + "' in " + where);
    }
  }
}

const Json& Member(const Json& node, const std::string& key,
                   const std::string& where) {
  if (!node.is_object() || !node.contains(key)) {
    throw DocumentError("missing '" + key + "' in " + where);
  }
  return node.at(key);
}

IdList ReadIds(const Json& node, const std::string& where) {
  if (!node.is_array()) throw DocumentError(where + " must be an array");
  std::vector<std::string> names;
  for (const auto& item : node) {
    if (!item.is_string()) throw DocumentError(where + " entries must be strings");
    names.push_back(item.get<std::string>());
  }
  try {
    return IdList(std::move(names));
  } catch (const std::exception& e) {
    throw DocumentError(where + ": " + e.what());
  }
}

Rational ReadRational(const Json& node, const std::string& where) {
  if (!node.is_string()) {
    throw DocumentError(where + " must be a rational string");
  }
  try {
    return ParseRational(node.get<std::string>());
  } catch (const std::exception& e) {
    throw DocumentError(where + ": " + e.what());
  }
}

Json IdsToJson(const IdList& ids) {
  Json out = Json::array();
  for (const auto& name : ids.names()) out.push_back(name);
  return out;
}

// Per-agent id spaces keyed by agent.
std::vector<IdList> ReadSpaces(const Json& node, const IdList& agents,
                               const std::string& where) {
  if (!node.is_object()) throw DocumentError(where + " must be an object");
  std::vector<IdList> spaces;
  for (int i = 0; i < agents.size(); ++i) {
    spaces.push_back(
        ReadIds(Member(node, agents.name(i), where), where + "." + agents.name(i)));
    if (spaces.back().empty()) throw DocumentError(where + " entry is empty");
    for (const auto& name : spaces.back().names()) {
      if (name.find(',') != std::string::npos) {
        throw DocumentError(where + " ids must not contain ','");
      }
    }
  }
  if (static_cast<int>(node.size()) != agents.size()) {
    throw DocumentError(where + " has entries for unknown agents");
  }
  return spaces;
}

int64_t ParseProfileKey(const std::string& key,
                        const std::vector<IdList>& spaces,
                        const ProfileSpace& space, const std::string& where) {
  std::vector<int> digits;
  std::stringstream stream(key);
  std::string part;
  while (std::getline(stream, part, ',')) {
    if (digits.size() >= spaces.size()) break;
    const auto index = spaces[digits.size()].find(part);
    if (!index) throw DocumentError(where + ": unknown id '" + part + "'");
    digits.push_back(*index);
  }
  if (digits.size() != spaces.size() ||
      std::count(key.begin(), key.end(), ',') + 1 !=
          static_cast<int64_t>(spaces.size())) {
    throw DocumentError(where + ": malformed profile key '" + key + "'");
  }
  return space.Flatten(digits);
}

Lottery ReadLottery(const Json& node, const IdList& outcomes,
                    const std::string& where) {
  if (!node.is_object()) throw DocumentError(where + " must be an object");
  std::vector<Lottery::Entry> entries;
  for (const auto& item : node.items()) {
    const auto index = outcomes.find(item.key());
    if (!index) throw DocumentError(where + ": unknown outcome " + item.key());
    entries.emplace_back(*index, ReadRational(item.value(), where));
  }
  try {
    return Lottery(std::move(entries));
  } catch (const std::exception& e) {
    throw DocumentError(where + ": " + e.what());
  }
}

ProfileSpace SpaceOf(const std::vector<IdList>& spaces) {
  std::vector<int> sizes;
  for (const auto& s : spaces) sizes.push_back(s.size());
  return ProfileSpace(sizes);
}

}  // namespace

std::string ProfileKey(const std::vector<IdList>& spaces,
                       const ProfileSpace& space, int64_t profile) {
  std::string key;
  for (size_t i = 0; i < spaces.size(); ++i) {
    if (i > 0) key += ",";
    key += spaces[i].name(space.Component(profile, static_cast<int>(i)));
  }
  return key;
}

Json GameToJson(const BayesianGame& game) {
  const auto& mechanism = game.mechanism();
  const auto& agents = mechanism.agents();
  const auto& outcomes = mechanism.outcomes();
  Json doc;
  doc["agents"] = IdsToJson(agents);
  doc["outcomes"] = IdsToJson(outcomes);
  Json types = Json::object();
  Json utilities = Json::object();
  for (int i = 0; i < agents.size(); ++i) {
    types[agents.name(i)] = IdsToJson(game.types(i));
    Json per_type = Json::object();
    for (int t = 0; t < game.types(i).size(); ++t) {
      Json row = Json::object();
      for (int x = 0; x < outcomes.size(); ++x) {
        row[outcomes.name(x)] = ToString(game.utilities().at(i, t, x));
      }
      per_type[game.types(i).name(t)] = std::move(row);
    }
    utilities[agents.name(i)] = std::move(per_type);
  }
  doc["type_spaces"] = std::move(types);
  doc["utilities"] = std::move(utilities);
  Json prior = Json::object();
  for (int64_t profile : game.prior().support()) {
    prior[ProfileKey(game.type_spaces(), game.type_profiles(), profile)] =
        ToString(game.prior().weight(profile));
  }
  doc["prior"] = std::move(prior);
  Json messages = Json::object();
  for (int i = 0; i < agents.size(); ++i) {
    messages[agents.name(i)] = IdsToJson(mechanism.messages(i));
  }
  Json outcome_fn = Json::object();
  for (int64_t m = 0; m < mechanism.profiles().total(); ++m) {
    Json lottery = Json::object();
    for (const auto& [x, w] : mechanism.outcome(m).weights()) {
      lottery[outcomes.name(x)] = ToString(w);
    }
    outcome_fn[ProfileKey(mechanism.message_spaces(), mechanism.profiles(), m)] =
        std::move(lottery);
  }
  doc["mechanism"] = {{"message_spaces", std::move(messages)},
                      {"outcome_fn", std::move(outcome_fn)}};
  return doc;
}

BayesianGame GameFromJson(const Json& doc) {
  RequireKeys(doc, {"agents", "outcomes", "type_spaces", "utilities", "prior",
                    "mechanism"},
              "document");
  const IdList agents = ReadIds(doc.at("agents"), "agents");
  if (agents.empty()) throw DocumentError("agents must be nonempty");
  const IdList outcomes = ReadIds(doc.at("outcomes"), "outcomes");
  if (outcomes.empty()) throw DocumentError("outcomes must be nonempty");
  const auto type_spaces = ReadSpaces(doc.at("type_spaces"), agents, "type_spaces");
  const ProfileSpace type_space = SpaceOf(type_spaces);

  std::vector<int> type_counts;
  for (const auto& s : type_spaces) type_counts.push_back(s.size());
  UtilityTable utilities(type_counts, outcomes.size());
  const Json& u = doc.at("utilities");
  if (!u.is_object() || static_cast<int>(u.size()) != agents.size()) {
    throw DocumentError("utilities must have one entry per agent");
  }
  for (int i = 0; i < agents.size(); ++i) {
    const std::string where = "utilities." + agents.name(i);
    const Json& per_type = Member(u, agents.name(i), "utilities");
    if (!per_type.is_object() ||
        static_cast<int>(per_type.size()) != type_spaces[i].size()) {
      throw DocumentError(where + " must have one entry per type");
    }
    for (int t = 0; t < type_spaces[i].size(); ++t) {
      const Json& row = Member(per_type, type_spaces[i].name(t), where);
      if (!row.is_object() || static_cast<int>(row.size()) != outcomes.size()) {
        throw DocumentError(where + " rows must cover every outcome");
      }
      for (int x = 0; x < outcomes.size(); ++x) {
        utilities.set(i, t, x,
                      ReadRational(Member(row, outcomes.name(x), where), where));
      }
    }
  }

  const Json& p = doc.at("prior");
  if (!p.is_object()) throw DocumentError("prior must be an object");
  std::vector<Rational> weights(type_space.total(), Rational(0));
  for (const auto& item : p.items()) {
    const int64_t profile =
        ParseProfileKey(item.key(), type_spaces, type_space, "prior");
    weights[profile] = ReadRational(item.value(), "prior");
  }

  const Json& mech = doc.at("mechanism");
  RequireKeys(mech, {"message_spaces", "outcome_fn"}, "mechanism");
  const auto message_spaces =
      ReadSpaces(mech.at("message_spaces"), agents, "message_spaces");
  const ProfileSpace message_space = SpaceOf(message_spaces);
  const Json& fn = mech.at("outcome_fn");
  if (!fn.is_object() || static_cast<int64_t>(fn.size()) != message_space.total()) {
    throw DocumentError("outcome_fn must cover every message profile");
  }
  std::vector<Lottery> outcome_fn(message_space.total());
  std::vector<bool> seen(message_space.total(), false);
  for (const auto& item : fn.items()) {
    const int64_t m =
        ParseProfileKey(item.key(), message_spaces, message_space, "outcome_fn");
    if (seen[m]) throw DocumentError("duplicate outcome_fn key " + item.key());
    seen[m] = true;
    outcome_fn[m] = ReadLottery(item.value(), outcomes, "outcome_fn." + item.key());
  }
  try {
    Prior prior(type_space, std::move(weights));
    Mechanism mechanism(agents, message_spaces, outcomes, std::move(outcome_fn));
    return BayesianGame(std::move(mechanism), type_spaces, std::move(prior),
                        std::move(utilities));
  } catch (const DocumentError&) {
    throw;
  } catch (const std::exception& e) {
    throw DocumentError(e.what());
  }
}

std::string EmitGame(const BayesianGame& game) {
  return GameToJson(game).dump(2) + "\n";
}

BayesianGame ParseGame(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("not valid JSON: ") + e.what());
  }
  return GameFromJson(doc);
}

StrategyProfile ProfileFromJson(const BayesianGame& game, const Json& doc) {
  const auto& agents = game.mechanism().agents();
  if (!doc.is_object()) throw DocumentError("profile must be an object");
  for (const auto& item : doc.items()) {
    if (!agents.find(item.key())) {
      throw DocumentError("profile names unknown agent " + item.key());
    }
  }
  std::vector<std::vector<std::vector<double>>> dists(game.num_agents());
  for (int i = 0; i < game.num_agents(); ++i) {
    dists[i].resize(game.types(i).size());
    if (!doc.contains(agents.name(i))) continue;
    const Json& per_type = doc.at(agents.name(i));
    if (!per_type.is_object()) throw DocumentError("profile entries must be objects");
    for (const auto& item : per_type.items()) {
      const auto t = game.types(i).find(item.key());
      if (!t) throw DocumentError("profile names unknown type " + item.key());
      auto& dist = dists[i][*t];
      dist.assign(game.num_messages(i), 0.0);
      if (!item.value().is_object()) {
        throw DocumentError("profile distributions must be objects");
      }
      for (const auto& entry : item.value().items()) {
        const auto m = game.mechanism().messages(i).find(entry.key());
        if (!m) throw DocumentError("profile names unknown message " + entry.key());
        if (entry.value().is_number()) {
          dist[*m] = entry.value().get<double>();
        } else {
          dist[*m] = ToDouble(ReadRational(entry.value(), "profile"));
        }
      }
    }
  }
  StrategyProfile profile(std::move(dists));
  const auto problems = ValidateProfile(game, profile);
  if (!problems.empty()) throw DocumentError(problems.front().detail);
  return profile;
}

Json ProfileToJson(const BayesianGame& game, const StrategyProfile& profile) {
  const auto& agents = game.mechanism().agents();
  Json doc = Json::object();
  for (int i = 0; i < game.num_agents(); ++i) {
    Json per_type = Json::object();
    for (int t = 0; t < game.types(i).size(); ++t) {
      const auto& dist = profile.at(i, t);
      if (dist.empty() || !game.InSupport(i, t)) continue;
      Json row = Json::object();
      for (int m = 0; m < game.num_messages(i); ++m) {
        row[game.mechanism().messages(i).name(m)] = dist[m];
      }
      per_type[game.types(i).name(t)] = std::move(row);
    }
    doc[agents.name(i)] = std::move(per_type);
  }
  return doc;
}

Prior RandomFullSupportPrior(const ProfileSpace& space, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> draw(1, 100);
  std::vector<Rational> weights;
  Rational total = 0;
  for (int64_t i = 0; i < space.total(); ++i) {
    weights.emplace_back(draw(rng));
    total += weights.back();
  }
  for (auto& w : weights) w /= total;
  return Prior(space, std::move(weights));
}

}  // namespace empeq
