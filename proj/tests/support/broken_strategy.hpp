// Copyright 2026 The IPIR Authors
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

#ifndef IPIR_TESTS_SUPPORT_BROKEN_STRATEGY_HPP_
#define IPIR_TESTS_SUPPORT_BROKEN_STRATEGY_HPP_

#include <algorithm>
#include <span>
#include <vector>

#include "ipir/privacy_audit.hpp"

namespace ipir::testing {

// Regression fixture that leaks: runs Group-and-Code, then forces the lowest
// demand index into the first group (the one holding message 1) by swapping
// it with message 1. The result is still a partition, so only the privacy
// audits can tell it apart.
class PinnedDemandStrategy final : public QueryStrategy {
 public:
  Query sample(const ProtocolParams& params, const IndexSet& demand,
               const IndexSet& side, Rng& rng) const override {
    const Query q = inner_.sample(params, demand, side, rng);
    return Query(pin(q.groups(), demand), q.generator());
  }

  void for_each_outcome(const ProtocolParams& params, const IndexSet& demand,
                        const IndexSet& side,
                        const OutcomeVisitor& visit) const override {
    inner_.for_each_outcome(params, demand, side,
                            [&](std::span<const IndexSet> groups) {
                              const std::vector<IndexSet> pinned = pin(
                                  {groups.begin(), groups.end()}, demand);
                              visit(pinned);
                            });
  }

  std::uint64_t outcome_count(const ProtocolParams& params) const override {
    return inner_.outcome_count(params);
  }

 private:
  static std::vector<IndexSet> pin(std::vector<IndexSet> groups,
                                   const IndexSet& demand) {
    const std::size_t lowest = demand.front();
    auto holds = [](std::size_t i) {
      return [i](const IndexSet& g) {
        return std::binary_search(g.begin(), g.end(), i);
      };
    };
    auto with_lowest = std::find_if(groups.begin(), groups.end(), holds(lowest));
    auto with_one = std::find_if(groups.begin(), groups.end(), holds(1));
    if (with_lowest != with_one) {
      std::replace(with_lowest->begin(), with_lowest->end(), lowest,
                   std::size_t{1});
      std::replace(with_one->begin(), with_one->end(), std::size_t{1}, lowest);
      std::sort(with_lowest->begin(), with_lowest->end());
      std::sort(with_one->begin(), with_one->end());
    }
    return groups;
  }

  GroupAndCodeStrategy inner_;
};

}  // namespace ipir::testing

#endif  // IPIR_TESTS_SUPPORT_BROKEN_STRATEGY_HPP_
