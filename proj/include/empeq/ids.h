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

#ifndef EMPEQ_IDS_H_
#define EMPEQ_IDS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace empeq {

// An ordered list of interned string ids. The position of a name is its
// stable integer index; all iteration follows the declared order.
class IdList {
 public:
  IdList() = default;
  explicit IdList(std::vector<std::string> names);
  IdList(std::initializer_list<std::string> names)
      : IdList(std::vector<std::string>(names)) {}

  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::string& name(int index) const { return names_.at(index); }
  const std::vector<std::string>& names() const { return names_; }

  // Throws std::out_of_range for unknown names.
  int index(std::string_view name) const;
  std::optional<int> find(std::string_view name) const;

  bool operator==(const IdList& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

// Mixed-radix indexing of a finite product space. Agent 0 is the most
// significant digit, so flat indices enumerate profiles lexicographically in
// declared order.
class ProfileSpace {
 public:
  ProfileSpace() = default;
  explicit ProfileSpace(std::vector<int> sizes);

  int num_agents() const { return static_cast<int>(sizes_.size()); }
  int size(int agent) const { return sizes_.at(agent); }
  const std::vector<int>& sizes() const { return sizes_; }
  int64_t total() const { return total_; }

  int64_t Flatten(std::span<const int> profile) const;
  std::vector<int> Unflatten(int64_t index) const;
  int Component(int64_t index, int agent) const {
    return static_cast<int>((index / strides_[agent]) % sizes_[agent]);
  }
  // Index of the profile with `agent`'s component set to `value`.
  int64_t Replace(int64_t index, int agent, int value) const {
    return index + (static_cast<int64_t>(value) - Component(index, agent)) *
                       strides_[agent];
  }
  int64_t stride(int agent) const { return strides_.at(agent); }

  bool operator==(const ProfileSpace& other) const {
    return sizes_ == other.sizes_;
  }

 private:
  std::vector<int> sizes_;
  std::vector<int64_t> strides_;
  int64_t total_ = 1;
};

}  // namespace empeq

#endif  // EMPEQ_IDS_H_
