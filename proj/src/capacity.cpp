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

#include "ipir/capacity.hpp"

#include <numeric>
#include <string>

#include "ipir/errors.hpp"

namespace ipir {

namespace {

void check_range(std::uint64_t k, std::uint64_t d, std::uint64_t m) {
  if (d < 2 || m < 1 || k < d + m) {
    throw ValidationError("need D >= 2, M >= 1, K >= D + M; got K=" +
                          std::to_string(k) + ", D=" + std::to_string(d) +
                          ", M=" + std::to_string(m));
  }
}

}  // namespace

Rational linear_capacity_bound(std::uint64_t k, std::uint64_t d,
                               std::uint64_t m) {
  check_range(k, d, m);
  return Rational(BigInt(d + m), BigInt(k));
}

std::optional<Rational> achievable_rate(std::uint64_t k, std::uint64_t d,
                                        std::uint64_t m) {
  check_range(k, d, m);
  const std::uint64_t r = std::gcd(d, m);
  if (k % (d / r + m / r) != 0) return std::nullopt;
  return Rational(BigInt(d + m), BigInt(k));
}

Rational prior_scheme_rate(std::uint64_t k, std::uint64_t d, std::uint64_t m) {
  check_range(k, d, m);
  const std::uint64_t floor_groups = k / (d + m);
  if (k - d <= (d + m) * floor_groups) {
    return Rational(BigInt(d), BigInt(k - m * floor_groups));
  }
  return Rational(BigInt(1), ceil_div(BigInt(k), BigInt(d + m)));
}

Rational conjectured_capacity(std::uint64_t k, std::uint64_t d,
                              std::uint64_t m) {
  check_range(k, d, m);
  return Rational(BigInt(d), BigInt(min_download(k, d, m)));
}

std::optional<Rational> known_capacity(std::uint64_t k, std::uint64_t d,
                                       std::uint64_t m) {
  check_range(k, d, m);
  if (d == 2 && m == 1) {
    return Rational(BigInt(2), ceil_div(BigInt(2 * k), BigInt(3)));
  }
  if (d == 2 && m == 2) {
    return Rational(BigInt(2), ceil_div(BigInt(k), BigInt(2)));
  }
  return std::nullopt;
}

std::uint64_t min_download(std::uint64_t k, std::uint64_t d, std::uint64_t m) {
  check_range(k, d, m);
  return ceil_div(BigInt(d) * k, BigInt(d + m)).convert_to<std::uint64_t>();
}

}  // namespace ipir
