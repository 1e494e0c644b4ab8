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

#ifndef IPIR_PRIVACY_AUDIT_HPP_
#define IPIR_PRIVACY_AUDIT_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ipir/field.hpp"
#include "ipir/protocol.hpp"
#include "ipir/rational.hpp"
#include "ipir/rng.hpp"

namespace ipir {

// A (W*, S*) pair from which the answer lets the user decode X_{W*}.
struct FeasibleTuple {
  IndexSet demand;
  IndexSet side;

  friend auto operator<=>(const FeasibleTuple&, const FeasibleTuple&) = default;
};

// Every disjoint (W*, S*) with |W*| = D, |S*| = M such that each e_w, w in W*,
// lies in the span of the rows of `coeffs` and {e_s : s in S*}. Sorted by
// (W*, S*). Valid for any scalar-linear scheme.
std::vector<FeasibleTuple> feasible_tuples(const FieldMatrix& coeffs,
                                           std::size_t demand,
                                           std::size_t side);

// Posterior over feasible tuples given one query, with per-index marginals.
// alpha[i-1] = P(i in W | Q) and beta[i-1] = P(i in S | Q).
struct PosteriorTable {
  std::vector<FeasibleTuple> tuples;
  std::vector<Rational> probs;
  std::vector<Rational> alpha;
  std::vector<Rational> beta;

  std::size_t tuple_count() const noexcept { return tuples.size(); }
};

// Builds alpha and beta over [1, messages] from tuples and their weights.
PosteriorTable make_posterior_table(std::vector<FeasibleTuple> tuples,
                                    std::vector<Rational> probs,
                                    std::size_t messages);

// A query generator seen as a random experiment the auditor can both sample
// and enumerate.
class QueryStrategy {
 public:
  using OutcomeVisitor = std::function<void(std::span<const IndexSet>)>;

  virtual ~QueryStrategy() = default;

  virtual Query sample(const ProtocolParams& params, const IndexSet& demand,
                       const IndexSet& side, Rng& rng) const = 0;

  // Calls `visit` with the emitted groups of every internal outcome. The
  // outcomes must be equally likely and there must be exactly
  // outcome_count(params) of them for every valid (W, S).
  virtual void for_each_outcome(const ProtocolParams& params,
                                const IndexSet& demand, const IndexSet& side,
                                const OutcomeVisitor& visit) const = 0;

  virtual std::uint64_t outcome_count(const ProtocolParams& params) const = 0;
};

// The Group-and-Code generator of generate_query.
class GroupAndCodeStrategy final : public QueryStrategy {
 public:
  Query sample(const ProtocolParams& params, const IndexSet& demand,
               const IndexSet& side, Rng& rng) const override;
  void for_each_outcome(const ProtocolParams& params, const IndexSet& demand,
                        const IndexSet& side,
                        const OutcomeVisitor& visit) const override;
  std::uint64_t outcome_count(const ProtocolParams& params) const override;
};

// Uniform posterior over the feasible tuples of a Group-and-Code query.
// Throws ValidationError if the query does not fit `params`.
PosteriorTable posterior_for_query(const Query& query,
                                   const ProtocolParams& params);

// Work budget for exhaustive audits: IPIR_AUDIT_BUDGET if set, else 10^7.
std::uint64_t default_audit_budget();

// Posterior of `query` by explicit Bayes over the uniform prior on (W, S) and
// the outcome counts of `strategy`.
PosteriorTable bayes_posterior(const Query& query,
                               const ProtocolParams& params,
                               const QueryStrategy& strategy,
                               std::uint64_t budget);

struct PrivacyReport {
  bool pass = false;
  bool exact = false;
  // max over audited queries and indices of |P(i in W | Q) - D/K|.
  std::optional<Rational> exact_deviation;  // exact mode only
  double deviation = 0.0;
  std::size_t queries_audited = 0;
  std::size_t queries_seen = 0;
  std::uint64_t samples = 0;
};

// Enumerates every (W, S) and every outcome of `strategy`, and checks
// P(i in W | Q) = D/K exactly for every emitted query Q and index i.
// Throws BudgetExceededError when C(K,D) C(K-D,M) outcome_count > budget.
PrivacyReport audit_exact(const ProtocolParams& params,
                          const QueryStrategy& strategy, std::uint64_t budget);
PrivacyReport audit_exact(const ProtocolParams& params);

// Bins below this many samples are not judged.
inline constexpr std::uint64_t kMinBinSamples = 30;

// Samples (W, S) from the uniform prior, bins the emitted queries by their
// unordered partition and estimates P(i in W | Q) per bin.
PrivacyReport audit_montecarlo(const ProtocolParams& params,
                               std::uint64_t trials, double tolerance,
                               Rng& rng, const QueryStrategy& strategy);
PrivacyReport audit_montecarlo(const ProtocolParams& params,
                               std::uint64_t trials, double tolerance,
                               Rng& rng);

struct ConverseResult {
  Rational lhs;    // sum_i beta_i / (alpha + beta_i), alpha = D/K
  Rational bound;  // MK / (D + M)
  std::uint64_t min_download = 0;  // ceil(DK / (D + M))
  std::uint64_t download = 0;
  bool pass = false;
};

// Throws ValidationError if some alpha_i differs from D/K.
ConverseResult converse_audit(const PosteriorTable& table, std::uint64_t k,
                              std::uint64_t d, std::uint64_t m,
                              std::uint64_t download);
ConverseResult converse_audit(const PosteriorTable& table,
                              const ProtocolParams& params,
                              std::uint64_t download);

}  // namespace ipir

#endif  // IPIR_PRIVACY_AUDIT_HPP_
