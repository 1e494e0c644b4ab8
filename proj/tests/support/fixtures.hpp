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

#ifndef IPIR_TESTS_SUPPORT_FIXTURES_HPP_
#define IPIR_TESTS_SUPPORT_FIXTURES_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "ipir/mds.hpp"
#include "ipir/protocol.hpp"

namespace ipir::testing {

// All k-subsets of [1, n] in lexicographic order.
inline std::vector<IndexSet> subsets(const IndexSet& items, std::size_t k) {
  std::vector<IndexSet> out;
  IndexSet cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < items.size(); ++i) {
      cur.push_back(items[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline IndexSet range1(std::size_t n) {
  IndexSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i + 1;
  return out;
}

// Every disjoint (W, S) with |W| = d, |S| = m over [1, k].
inline void for_each_demand_pair(
    std::size_t k, std::size_t d, std::size_t m,
    const std::function<void(const IndexSet&, const IndexSet&)>& visit) {
  const IndexSet all = range1(k);
  for (const IndexSet& s : subsets(all, m)) {
    IndexSet rest;
    std::set_difference(all.begin(), all.end(), s.begin(), s.end(),
                        std::back_inserter(rest));
    for (const IndexSet& w : subsets(rest, d)) visit(w, s);
  }
}

// Valid Group-and-Code parameter sets with K <= max_k, using the smallest
// admissible field.
inline std::vector<ProtocolParams> valid_params(std::size_t max_k,
                                                std::size_t n = 1) {
  std::vector<ProtocolParams> out;
  for (std::size_t k = 3; k <= max_k; ++k) {
    for (std::size_t d = 2; d < k; ++d) {
      for (std::size_t m = 1; d + m <= k; ++m) {
        const std::size_t r = std::gcd(d, m);
        const std::size_t t = d / r + m / r;
        if (k % t != 0) continue;
        const std::uint64_t q = smallest_admissible_order(t, d / r);
        out.push_back(derive_params(k, d, m, q, n));
      }
    }
  }
  return out;
}

}  // namespace ipir::testing

#endif  // IPIR_TESTS_SUPPORT_FIXTURES_HPP_
