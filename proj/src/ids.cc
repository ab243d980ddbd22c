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

#include "empeq/ids.h"

#include <limits>
#include <stdexcept>

namespace empeq {

IdList::IdList(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (int i = 0; i < size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty id");
    if (!index_.emplace(names_[i], i).second) {
      throw std::invalid_argument("duplicate id '" + names_[i] + "'");
    }
  }
}

int IdList::index(std::string_view name) const {
  auto found = find(name);
  if (!found) throw std::out_of_range("unknown id '" + std::string(name) + "'");
  return *found;
}

std::optional<int> IdList::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ProfileSpace::ProfileSpace(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  strides_.assign(sizes_.size(), 1);
  total_ = 1;
  for (int agent = num_agents() - 1; agent >= 0; --agent) {
    if (sizes_[agent] <= 0) {
      throw std::invalid_argument("profile space component must be nonempty");
    }
    strides_[agent] = total_;
    if (total_ > std::numeric_limits<int64_t>::max() / sizes_[agent]) {
      throw std::overflow_error("profile space too large");
    }
    total_ *= sizes_[agent];
  }
}

int64_t ProfileSpace::Flatten(std::span<const int> profile) const {
  if (static_cast<int>(profile.size()) != num_agents()) {
    throw std::invalid_argument("profile has wrong number of components");
  }
  int64_t index = 0;
  for (int agent = 0; agent < num_agents(); ++agent) {
    if (profile[agent] < 0 || profile[agent] >= sizes_[agent]) {
      throw std::out_of_range("profile component out of range");
    }
    index += profile[agent] * strides_[agent];
  }
  return index;
}

std::vector<int> ProfileSpace::Unflatten(int64_t index) const {
  std::vector<int> profile(sizes_.size());
  for (int agent = 0; agent < num_agents(); ++agent) {
    profile[agent] = Component(index, agent);
  }
  return profile;
}

}  // namespace empeq
