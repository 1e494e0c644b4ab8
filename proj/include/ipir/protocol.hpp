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

#ifndef IPIR_PROTOCOL_HPP_
#define IPIR_PROTOCOL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ipir/field.hpp"
#include "ipir/mds.hpp"
#include "ipir/rational.hpp"
#include "ipir/rng.hpp"

namespace ipir {

// Sorted, duplicate-free list of 1-based message indices.
using IndexSet = std::vector<std::size_t>;

// Validated Group-and-Code parameters. With R = gcd(D, M) the protocol works
// on groups of T = D/R + M/R messages, each queried through d = D/R coded
// combinations; P = K / T groups cover the database.
class ProtocolParams {
 public:
  std::size_t messages() const noexcept { return k_; }
  std::size_t demand_size() const noexcept { return d_total_; }
  std::size_t side_size() const noexcept { return m_total_; }
  std::uint64_t field_order() const noexcept { return q_; }
  std::size_t symbols() const noexcept { return n_; }

  std::size_t demand_groups() const noexcept { return r_; }
  std::size_t demand_per_group() const noexcept { return d_; }
  std::size_t side_per_group() const noexcept { return m_; }
  std::size_t group_size() const noexcept { return d_ + m_; }
  std::size_t group_count() const noexcept { return k_ / (d_ + m_); }

  PrimeField field() const { return PrimeField(q_); }

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) =
      default;

 private:
  friend ProtocolParams derive_params(std::size_t, std::size_t, std::size_t,
                                      std::uint64_t, std::size_t);
  ProtocolParams() = default;

  std::size_t k_ = 0, d_total_ = 0, m_total_ = 0;
  std::uint64_t q_ = 0;
  std::size_t n_ = 0;
  std::size_t r_ = 0, d_ = 0, m_ = 0;
};

// Throws ValidationError unless D >= 2, M >= 1, K >= D + M, n >= 1, T | K, q is
// prime, and q admits a [T, d] MDS code (q >= T when d > 1).
ProtocolParams derive_params(std::size_t messages, std::size_t demand,
                             std::size_t side, std::uint64_t q,
                             std::size_t symbols);

// Throws ValidationError unless W and S are disjoint sorted subsets of [K]
// with |W| = D and |S| = M.
void validate_demand(const ProtocolParams& params, const IndexSet& demand,
                     const IndexSet& side);

// K messages of n symbols each; row i-1 holds message i.
class MessageDb {
 public:
  explicit MessageDb(FieldMatrix symbols);

  std::size_t messages() const noexcept { return symbols_.rows(); }
  std::size_t symbols() const noexcept { return symbols_.cols(); }
  const PrimeField& field() const noexcept { return symbols_.field(); }
  const FieldMatrix& matrix() const noexcept { return symbols_; }

  // Messages at the given 1-based indices, one per row, in list order.
  FieldMatrix rows(const IndexSet& indices) const;

  static MessageDb random(const PrimeField& field, std::size_t messages,
                          std::size_t symbols, Rng& rng);

  friend bool operator==(const MessageDb&, const MessageDb&) = default;

 private:
  FieldMatrix symbols_;
};

// Step-1 query: P groups that partition [K], each sorted ascending, plus the
// public generator V. Groups appear in emission order.
class Query {
 public:
  // Throws ValidationError unless every group has generator.length() strictly
  // increasing members and together they partition [1, P*T].
  Query(std::vector<IndexSet> groups, GeneratorMatrix generator);

  const std::vector<IndexSet>& groups() const noexcept { return groups_; }
  const GeneratorMatrix& generator() const noexcept { return generator_; }
  std::size_t messages() const noexcept {
    return groups_.size() * generator_.length();
  }
  std::size_t group_count() const noexcept { return groups_.size(); }
  std::size_t group_size() const noexcept { return generator_.length(); }
  std::size_t dimension() const noexcept { return generator_.dimension(); }

  // The unordered partition, listed by smallest member.
  std::vector<IndexSet> canonical_groups() const;

  friend bool operator==(const Query&, const Query&) = default;

 private:
  std::vector<IndexSet> groups_;
  GeneratorMatrix generator_;
};

// Step-2 answer: row k*d + l (0-based) holds Z_{k+1,l+1}.
class Answer {
 public:
  Answer(std::size_t group_count, std::size_t dimension, FieldMatrix coded);

  std::size_t group_count() const noexcept { return group_count_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t symbols() const noexcept { return coded_.cols(); }
  const FieldMatrix& coded() const noexcept { return coded_; }

  friend bool operator==(const Answer&, const Answer&) = default;

 private:
  std::size_t group_count_;
  std::size_t dimension_;
  FieldMatrix coded_;
};

// True iff `query` has the shape (K, P, T, d, q) that `params` prescribes.
bool matches(const Query& query, const ProtocolParams& params);

Query generate_query(const ProtocolParams& params, const IndexSet& demand,
                     const IndexSet& side, Rng& rng);

Answer compute_answer(const Query& query, const MessageDb& db);

// Returns the D demand messages as rows ordered by sorted W. `side_info`
// holds X_S as M rows ordered by sorted S. Throws ValidationError on shape
// mismatches and SingularMatrixError if a group system is not invertible.
FieldMatrix recover(const ProtocolParams& params, const Query& query,
                    const Answer& answer, const IndexSet& demand,
                    const IndexSet& side, const FieldMatrix& side_info);

// L x K matrix of the linear combinations the answer carries.
FieldMatrix coefficient_matrix(const Query& query);

// Number of downloaded combinations, L = P * d.
std::size_t download_cost(const ProtocolParams& params);
// D / L in lowest terms.
Rational rate(const ProtocolParams& params);

}  // namespace ipir

#endif  // IPIR_PROTOCOL_HPP_
