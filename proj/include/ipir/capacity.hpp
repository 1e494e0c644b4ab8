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

#ifndef IPIR_CAPACITY_HPP_
#define IPIR_CAPACITY_HPP_

#include <cstdint>
#include <optional>

#include "ipir/rational.hpp"

namespace ipir {

// Closed-form rate and capacity expressions for single-server IPIR, all in
// exact arithmetic. Every function requires D >= 2, M >= 1 and K >= D + M and
// throws ValidationError otherwise.

// Upper bound on the rate of any linear scheme: (D + M) / K.
Rational linear_capacity_bound(std::uint64_t k, std::uint64_t d,
                               std::uint64_t m);

// Rate of Group-and-Code, (D + M) / K, defined when (D/R + M/R) | K with
// R = gcd(D, M).
std::optional<Rational> achievable_rate(std::uint64_t k, std::uint64_t d,
                                        std::uint64_t m);

// Best previously known scheme:
//   D / (K - M*floor(K/(D+M)))   if (K - D) <= (D + M) * floor(K/(D+M)),
//   1 / ceil(K/(D+M))            otherwise.
Rational prior_scheme_rate(std::uint64_t k, std::uint64_t d, std::uint64_t m);

// Conjectured linear capacity for all K, D, M: D / ceil(DK/(D+M)).
// Unproven; callers presenting it must label it as a conjecture.
Rational conjectured_capacity(std::uint64_t k, std::uint64_t d,
                              std::uint64_t m);

// Established general capacity, only for (D, M) = (2, 1): 2/ceil(2K/3) and
// (D, M) = (2, 2): 2/ceil(K/2).
std::optional<Rational> known_capacity(std::uint64_t k, std::uint64_t d,
                                       std::uint64_t m);

// Minimum download of a private linear scheme, ceil(DK/(D+M)).
std::uint64_t min_download(std::uint64_t k, std::uint64_t d, std::uint64_t m);

}  // namespace ipir

#endif  // IPIR_CAPACITY_HPP_
