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

#include "ipir/field.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "ipir/errors.hpp"
#include "ipir/rng.hpp"
#include "support/oracles.hpp"

namespace ipir {
namespace {

using testing::rank_by_enumeration;
using testing::span_by_enumeration;

TEST(PrimeFieldTest, RejectsCompositeAndTinyOrders) {
  EXPECT_THROW(PrimeField(0), ValidationError);
  EXPECT_THROW(PrimeField(1), ValidationError);
  EXPECT_THROW(PrimeField(9), ValidationError);
  EXPECT_THROW(PrimeField(4294967311ULL), ValidationError);  // prime, > 2^32
  EXPECT_NO_THROW(PrimeField(2));
  EXPECT_NO_THROW(PrimeField(4294967291ULL));  // largest prime below 2^32
}

TEST(FieldElementTest, AdditionExamples) {
  for (std::uint64_t x = 0; x < 7; ++x) {
    EXPECT_EQ((FieldElement(0, 7) + FieldElement(x, 7)).value(), x);
  }
  EXPECT_EQ((FieldElement(5, 7) + FieldElement(4, 7)).value(), 2u);
  for (std::uint64_t a = 0; a < 11; ++a) {
    EXPECT_TRUE((FieldElement(a, 11) + FieldElement((11 - a) % 11, 11)).is_zero());
  }
}

TEST(FieldElementTest, RejectsOutOfRangeAndMixedModuli) {
  EXPECT_THROW(FieldElement(7, 7), ValidationError);
  EXPECT_THROW(FieldElement(1, 7) + FieldElement(1, 5), ValidationError);
  EXPECT_THROW(FieldElement(1, 7) * FieldElement(1, 5), ValidationError);
}

TEST(FieldElementTest, InverseMatchesBruteForceScan) {
  EXPECT_EQ(inverse(FieldElement(1, 13)).value(), 1u);
  EXPECT_EQ(inverse(FieldElement(3, 7)).value(), 5u);
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (std::uint64_t a = 1; a < q; ++a) {
      std::uint64_t scan = 0;
      for (std::uint64_t b = 1; b < q; ++b) {
        if (a * b % q == 1) scan = b;
      }
      const FieldElement inv = inverse(FieldElement(a, q));
      EXPECT_EQ(inv.value(), scan) << "a=" << a << " q=" << q;
      EXPECT_EQ((FieldElement(a, q) * inv).value(), 1u);
    }
  }
  EXPECT_THROW(inverse(FieldElement(0, 7)), ValidationError);
}

TEST(FieldElementTest, RingAxiomsOnRandomTriples) {
  Rng rng(7);
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (int trial = 0; trial < 300; ++trial) {
      const FieldElement a(rng.uniform_below(q), q);
      const FieldElement b(rng.uniform_below(q), q);
      const FieldElement c(rng.uniform_below(q), q);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a - b) + b, a);
      if (!b.is_zero()) {
        EXPECT_EQ((a / b) * b, a);
      }
    }
  }
}

TEST(RankTest, Examples) {
  const PrimeField f5(5);
  EXPECT_EQ(rank(FieldMatrix(f5, 3, 3)), 0u);
  EXPECT_EQ(rank(FieldMatrix::identity(f5, 3)), 3u);
  const PrimeField f3(3);
  const FieldMatrix m = FieldMatrix::from_rows(f3, {{1, 1, 1}, {0, 1, 2}});
  EXPECT_EQ(rank_by_enumeration(m), 2u);
  EXPECT_EQ(rank(m), 2u);
}

FieldMatrix random_matrix(const PrimeField& f, std::size_t rows,
                          std::size_t cols, Rng& rng) {
  FieldMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m.set(r, c, rng.uniform_below(f.order()));
  return m;
}

TEST(RankTest, AgreesWithSpanEnumeration) {
  Rng rng(11);
  for (std::uint64_t q : {2u, 3u}) {
    const PrimeField f(q);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng.uniform_below(4);
      const std::size_t cols = 1 + rng.uniform_below(5);
      const FieldMatrix m = random_matrix(f, rows, cols, rng);
      EXPECT_EQ(rank(m), rank_by_enumeration(m));
    }
  }
}

TEST(RankTest, InvariantUnderRowPermutationAndScaling) {
  Rng rng(12);
  for (std::uint64_t q : {3u, 5u, 7u}) {
    const PrimeField f(q);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t rows = 1 + rng.uniform_below(5);
      const FieldMatrix m = random_matrix(f, rows, 5, rng);
      std::vector<std::size_t> order(rows);
      for (std::size_t i = 0; i < rows; ++i) order[i] = i;
      rng.shuffle(std::span(order));
      FieldMatrix permuted = m.select_rows(order);
      for (std::size_t r = 0; r < rows; ++r) {
        const Symbol s = 1 + rng.uniform_below(q - 1);
        for (std::size_t c = 0; c < 5; ++c) {
          permuted.set(r, c, f.mul(s, permuted(r, c)));
        }
      }
      EXPECT_EQ(rank(permuted), rank(m));
    }
  }
}

TEST(SolveSquareTest, Examples) {
  const PrimeField f3(3);
  const std::vector<FieldElement> b{FieldElement(0, 3), FieldElement(1, 3)};
  EXPECT_EQ(solve_square(FieldMatrix::identity(f3, 2), b), b);

  const auto x =
      solve_square(FieldMatrix::from_rows(f3, {{1, 1}, {1, 2}}), b);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x[0].value(), 2u);
  EXPECT_EQ(x[1].value(), 1u);

  EXPECT_THROW(solve_square(FieldMatrix::from_rows(f3, {{1, 1}, {2, 2}}), b),
               SingularMatrixError);
}

TEST(SolveSquareTest, RecoversPlantedSolution) {
  Rng rng(13);
  for (std::uint64_t q : {2u, 3u, 5u, 13u}) {
    const PrimeField f(q);
    int solved = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.uniform_below(5);
      const FieldMatrix a = random_matrix(f, n, n, rng);
      if (rank(a) != n) {
        EXPECT_THROW(solve_square(a, FieldMatrix(f, n, 1)),
                     SingularMatrixError);
        continue;
      }
      const FieldMatrix x = random_matrix(f, n, 3, rng);
      EXPECT_EQ(solve_square(a, a * x), x);
      ++solved;
    }
    EXPECT_GT(solved, 20);
  }
}

TEST(InRowspaceTest, Examples) {
  const PrimeField f2(2);
  const std::vector<std::size_t> units{2, 3};
  for (std::size_t w = 1; w <= 4; ++w) {
    EXPECT_TRUE(in_rowspace_with_units(FieldMatrix::identity(f2, 4), units, w));
  }
  const FieldMatrix empty(f2, 0, 4);
  const std::vector<std::size_t> three{3};
  EXPECT_TRUE(in_rowspace_with_units(empty, three, 3));
  EXPECT_FALSE(in_rowspace_with_units(empty, three, 1));

  const FieldMatrix ones = FieldMatrix::from_rows(f2, {{1, 1, 1}});
  EXPECT_TRUE(in_rowspace_with_units(ones, units, 1));
  EXPECT_FALSE(in_rowspace_with_units(ones, three, 1));
}

TEST(InRowspaceTest, RejectsOutOfRangeIndices) {
  const PrimeField f2(2);
  const FieldMatrix m = FieldMatrix::identity(f2, 3);
  const std::vector<std::size_t> none;
  const std::vector<std::size_t> bad{4};
  EXPECT_THROW(in_rowspace_with_units(m, none, 0), ValidationError);
  EXPECT_THROW(in_rowspace_with_units(m, none, 4), ValidationError);
  EXPECT_THROW(in_rowspace_with_units(m, bad, 1), ValidationError);
}

TEST(InRowspaceTest, AgreesWithSpanEnumeration) {
  Rng rng(14);
  for (std::uint64_t q : {2u, 3u}) {
    const PrimeField f(q);
    for (int trial = 0; trial < 80; ++trial) {
      const std::size_t k = 2 + rng.uniform_below(5);  // K <= 6
      const std::size_t rows = rng.uniform_below(4);
      const FieldMatrix coeffs = random_matrix(f, rows, k, rng);
      std::vector<std::size_t> units;
      for (std::size_t i = 1; i <= k; ++i) {
        if (rng.uniform_below(3) == 0) units.push_back(i);
      }
      std::vector<testing::Vec> gens = testing::rows_of(coeffs);
      for (std::size_t s : units) {
        testing::Vec e(k, 0);
        e[s - 1] = 1;
        gens.push_back(e);
      }
      const auto span = span_by_enumeration(gens, k, q);
      for (std::size_t w = 1; w <= k; ++w) {
        testing::Vec e(k, 0);
        e[w - 1] = 1;
        EXPECT_EQ(in_rowspace_with_units(coeffs, units, w), span.count(e) > 0);
      }
    }
  }
}

}  // namespace
}  // namespace ipir
