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

#include "ipir/mds.hpp"

#include <string>

#include "ipir/errors.hpp"

namespace ipir {

GeneratorMatrix build_generator(std::size_t length, std::size_t dimension,
                                std::uint64_t q) {
  if (dimension == 0 || dimension > length) {
    throw ValidationError("MDS code needs 1 <= d <= T, got d=" +
                          std::to_string(dimension) +
                          ", T=" + std::to_string(length));
  }
  const PrimeField field(q);
  FieldMatrix g(field, dimension, length);
  std::vector<Symbol> points;

  if (dimension == 1) {
    for (std::size_t j = 0; j < length; ++j) g.set(0, j, 1);
    return GeneratorMatrix(std::move(g), std::move(points));
  }

  if (q < length) {
    throw ValidationError("q=" + std::to_string(q) + " has fewer than T=" +
                          std::to_string(length) + " distinct points");
  }
  points.reserve(length);
  for (std::size_t j = 0; j < length; ++j) {
    points.push_back(j);
    Symbol power = 1;
    for (std::size_t l = 0; l < dimension; ++l) {
      g.set(l, j, power);
      power = field.mul(power, j);
    }
  }
  return GeneratorMatrix(std::move(g), std::move(points));
}

std::uint64_t smallest_admissible_order(std::size_t length,
                                        std::size_t dimension) {
  if (dimension <= 1) return 2;
  std::uint64_t q = length < 2 ? 2 : length;
  while (!is_prime(q)) ++q;
  return q;
}

bool verify_mds(const FieldMatrix& g) {
  const std::size_t d = g.rows();
  const std::size_t t = g.cols();
  if (d == 0 || d > t) return false;

  // Walk all d-subsets of [0, t) in lexicographic order.
  std::vector<std::size_t> cols(d);
  for (std::size_t i = 0; i < d; ++i) cols[i] = i;
  while (true) {
    if (rank(g.select_cols(cols)) != d) return false;
    std::size_t i = d;
    while (i > 0 && cols[i - 1] == t - d + (i - 1)) --i;
    if (i == 0) return true;
    ++cols[i - 1];
    for (std::size_t j = i; j < d; ++j) cols[j] = cols[j - 1] + 1;
  }
}

bool verify_mds(const GeneratorMatrix& g) { return verify_mds(g.matrix()); }

}  // namespace ipir
