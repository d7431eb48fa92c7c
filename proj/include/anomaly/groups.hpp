// Copyright 2026 The anomaly-index Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace anomaly {

inline constexpr int kDefaultMaxGroupOrder = 64;

/// Index of an element inside its parent FiniteGroup.
struct GroupElement {
  int index = 0;
  friend bool operator==(GroupElement, GroupElement) = default;
};

/// A validated finite group given by its multiplication table.
///
/// Elements are the dense indices 0..order-1; table(g, h) is the index of g*h.
/// Instances are immutable and cheap to copy (the table is shared).
class FiniteGroup {
 public:
  int order() const { return impl_->order; }
  int identity() const { return impl_->identity; }
  int mul(int a, int b) const {
    return impl_->table[static_cast<std::size_t>(a) * impl_->order + b];
  }
  int inverse(int a) const { return impl_->inverses[a]; }
  /// Smallest m >= 1 with a^m = e.
  int element_order(int a) const;
  bool contains(GroupElement g) const { return g.index >= 0 && g.index < order(); }

  std::vector<std::vector<int>> table_rows() const;
  const std::vector<int>& inverses() const { return impl_->inverses; }

  bool same_as(const FiniteGroup& other) const;

 private:
  friend FiniteGroup build_group(const std::vector<std::vector<int>>& table, int max_order);
  struct Impl {
    int order = 0;
    int identity = 0;
    std::vector<int> table;
    std::vector<int> inverses;
  };
  explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Validates a multiplication table and computes identity and inverses.
/// Throws Error with NotAPermutationTable, NoIdentity, NonAssociative or
/// MissingInverse, naming a witness.
FiniteGroup build_group(const std::vector<std::vector<int>>& table,
                        int max_order = kDefaultMaxGroupOrder);

/// Z_m with the table (a + b) mod m.
FiniteGroup cyclic(int m, int max_order = kDefaultMaxGroupOrder);

/// G x H with element (g, h) at index g*|H| + h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                           int max_order = kDefaultMaxGroupOrder);

/// Integer power a^p in the group (p >= 0).
int power(const FiniteGroup& g, int a, int p);

}  // namespace anomaly
