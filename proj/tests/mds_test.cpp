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

#include <gtest/gtest.h>

#include <vector>

#include "ipir/errors.hpp"
#include "support/oracles.hpp"

namespace ipir {
namespace {

TEST(BuildGeneratorTest, RepetitionRowForDimensionOne) {
  const GeneratorMatrix g = build_generator(3, 1, 2);
  EXPECT_EQ(g.matrix(), FieldMatrix::from_rows(PrimeField(2), {{1, 1, 1}}));
  EXPECT_TRUE(g.points().empty());
}

TEST(BuildGeneratorTest, VandermondeOnNaturalPoints) {
  const GeneratorMatrix g = build_generator(3, 2, 3);
  EXPECT_EQ(g.matrix(),
            FieldMatrix::from_rows(PrimeField(3), {{1, 1, 1}, {0, 1, 2}}));
  EXPECT_EQ(std::vector<Symbol>(g.points().begin(), g.points().end()),
            (std::vector<Symbol>{0, 1, 2}));
}

TEST(BuildGeneratorTest, RejectsInvalidParameters) {
  EXPECT_THROW(build_generator(5, 2, 3), ValidationError);  // q < T
  EXPECT_THROW(build_generator(3, 2, 4), ValidationError);  // q not prime
  EXPECT_THROW(build_generator(3, 0, 3), ValidationError);
  EXPECT_THROW(build_generator(3, 4, 5), ValidationError);
}

TEST(VerifyMdsTest, Examples) {
  EXPECT_TRUE(verify_mds(build_generator(3, 2, 3)));
  const PrimeField f3(3);
  EXPECT_FALSE(verify_mds(FieldMatrix::from_rows(f3, {{1, 1, 1}, {1, 1, 1}})));
  EXPECT_TRUE(verify_mds(FieldMatrix::from_rows(f3, {{1, 0}, {0, 1}})));
  EXPECT_FALSE(verify_mds(FieldMatrix::from_rows(f3, {{1, 0, 1}, {0, 1, 0}})));
}

TEST(VerifyMdsTest, AllSmallGeneratorsAreMds) {
  for (std::size_t t = 1; t <= 8; ++t) {
    for (std::size_t d = 1; d <= t; ++d) {
      const std::uint64_t q = smallest_admissible_order(t, d);
      EXPECT_TRUE(verify_mds(build_generator(t, d, q)))
          << "T=" << t << " d=" << d << " q=" << q;
      // A larger prime works as well.
      EXPECT_TRUE(verify_mds(build_generator(t, d, 11)));
    }
  }
}

// det of a square Vandermonde block = prod_{a<b} (x_b - x_a).
TEST(VerifyMdsTest, VandermondeMinorsMatchProductFormula) {
  const std::uint64_t q = 7;
  const GeneratorMatrix g = build_generator(6, 3, q);
  const std::vector<std::vector<std::size_t>> choices{
      {0, 1, 2}, {0, 3, 5}, {1, 2, 4}, {2, 4, 5}, {3, 4, 5}};
  for (const auto& cols : choices) {
    const FieldMatrix minor = g.matrix().select_cols(cols);
    std::uint64_t product = 1;
    for (std::size_t a = 0; a < cols.size(); ++a) {
      for (std::size_t b = a + 1; b < cols.size(); ++b) {
        product = product * ((g.points()[cols[b]] + q - g.points()[cols[a]]) % q) % q;
      }
    }
    EXPECT_EQ(testing::determinant_by_permutations(minor), product);
    EXPECT_NE(product, 0u);
  }
}

TEST(SmallestAdmissibleOrderTest, Values) {
  EXPECT_EQ(smallest_admissible_order(5, 1), 2u);
  EXPECT_EQ(smallest_admissible_order(3, 2), 3u);
  EXPECT_EQ(smallest_admissible_order(4, 2), 5u);
  EXPECT_EQ(smallest_admissible_order(8, 5), 11u);
}

}  // namespace
}  // namespace ipir
