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

#ifndef IPIR_MDS_HPP_
#define IPIR_MDS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ipir/field.hpp"

namespace ipir {

// d x T generator of a [T, d] MDS code: every d x d column-selected submatrix
// is nonsingular. Instances only come from build_generator, so the matrix is
// a pure function of (T, d, q).
class GeneratorMatrix {
 public:
  const FieldMatrix& matrix() const noexcept { return matrix_; }
  // Evaluation points of the Vandermonde rows; empty for d == 1.
  std::span<const Symbol> points() const noexcept { return points_; }
  std::size_t length() const noexcept { return matrix_.cols(); }
  std::size_t dimension() const noexcept { return matrix_.rows(); }
  const PrimeField& field() const noexcept { return matrix_.field(); }

  friend bool operator==(const GeneratorMatrix& a, const GeneratorMatrix& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  friend GeneratorMatrix build_generator(std::size_t, std::size_t,
                                         std::uint64_t);
  GeneratorMatrix(FieldMatrix matrix, std::vector<Symbol> points)
      : matrix_(std::move(matrix)), points_(std::move(points)) {}

  FieldMatrix matrix_;
  std::vector<Symbol> points_;
};

// d == 1: the all-ones 1 x T row (any q >= 2).
// d >= 2: Vandermonde rows x_j^0 .. x_j^(d-1) on points x_j = 0, 1, .., T-1,
// which needs q >= T for the points to be distinct.
// Throws ValidationError for d == 0, d > T, q not prime or q too small.
GeneratorMatrix build_generator(std::size_t length, std::size_t dimension,
                                std::uint64_t q);

// Smallest prime q for which build_generator(length, dimension, q) succeeds.
std::uint64_t smallest_admissible_order(std::size_t length,
                                        std::size_t dimension);

// Exhaustive check over all C(T, d) column subsets.
bool verify_mds(const FieldMatrix& g);
bool verify_mds(const GeneratorMatrix& g);

}  // namespace ipir

#endif  // IPIR_MDS_HPP_
