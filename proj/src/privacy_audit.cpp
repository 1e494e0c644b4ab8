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

#include "ipir/privacy_audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "ipir/capacity.hpp"
#include "ipir/errors.hpp"

namespace ipir {

namespace {

constexpr std::uint64_t kDefaultAuditBudget = 10'000'000;

// Calls visit(subset) for every k-subset of `items`, lexicographic in
// positions. The subset buffer is reused between calls.
template <typename Visit>
void for_each_subset(const IndexSet& items, std::size_t k, Visit&& visit) {
  const std::size_t n = items.size();
  if (k > n) return;
  std::vector<std::size_t> pos(k);
  std::iota(pos.begin(), pos.end(), 0);
  IndexSet chosen(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) chosen[i] = items[pos[i]];
    visit(chosen);
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

IndexSet without(const IndexSet& items, const IndexSet& removed) {
  IndexSet out;
  out.reserve(items.size());
  std::set_difference(items.begin(), items.end(), removed.begin(),
                      removed.end(), std::back_inserter(out));
  return out;
}

IndexSet all_indices(std::size_t k) {
  IndexSet out(k);
  std::iota(out.begin(), out.end(), 1);
  return out;
}

void collect_chunkings(const IndexSet& items, std::size_t block,
                       std::vector<IndexSet>& acc,
                       std::vector<std::vector<IndexSet>>& out) {
  if (items.empty()) {
    out.push_back(acc);
    return;
  }
  for_each_subset(items, block, [&](const IndexSet& chosen) {
    const IndexSet remaining = without(items, chosen);
    acc.push_back(chosen);
    collect_chunkings(remaining, block, acc, out);
    acc.pop_back();
  });
}

// All sequences of disjoint `block`-subsets covering `items` (labeled blocks).
std::vector<std::vector<IndexSet>> chunkings(const IndexSet& items,
                                             std::size_t block) {
  std::vector<std::vector<IndexSet>> out;
  std::vector<IndexSet> acc;
  collect_chunkings(items, block, acc, out);
  return out;
}

// n! / (block!)^(n/block).
BigInt labeled_chunking_count(std::uint64_t n, std::uint64_t block) {
  BigInt count = 1;
  for (std::uint64_t left = n; left > 0; left -= block) {
    count *= binomial(left, block);
  }
  return count;
}

BigInt factorial(std::uint64_t n) {
  BigInt f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint64_t saturate(const BigInt& v) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  return v > kMax ? kMax : v.convert_to<std::uint64_t>();
}

// Visits every (W, S) in the support of the uniform prior.
template <typename Visit>
void for_each_demand(const ProtocolParams& params, Visit&& visit) {
  const IndexSet universe = all_indices(params.messages());
  for_each_subset(universe, params.side_size(), [&](const IndexSet& side) {
    const IndexSet s = side;
    const IndexSet rest = without(universe, s);
    for_each_subset(rest, params.demand_size(),
                    [&](const IndexSet& demand) { visit(demand, s); });
  });
}

void check_budget(const ProtocolParams& params, const QueryStrategy& strategy,
                  std::uint64_t budget) {
  const std::size_t k = params.messages();
  const BigInt work = binomial(k, params.demand_size()) *
                      binomial(k - params.demand_size(), params.side_size()) *
                      BigInt(strategy.outcome_count(params));
  if (work > budget) {
    throw BudgetExceededError("exhaustive audit needs " + work.str() +
                              " outcome visits, budget is " +
                              std::to_string(budget));
  }
}

std::string query_key(std::span<const IndexSet> groups) {
  std::string key;
  for (const IndexSet& g : groups) {
    for (std::size_t i : g) {
      key.push_back(static_cast<char>(i & 0xff));
      key.push_back(static_cast<char>((i >> 8) & 0xff));
    }
  }
  return key;
}

struct Tally {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> demand_hits;
};

}  // namespace

std::vector<FeasibleTuple> feasible_tuples(const FieldMatrix& coeffs,
                                           std::size_t demand,
                                           std::size_t side) {
  const IndexSet universe = all_indices(coeffs.cols());
  std::vector<FeasibleTuple> out;
  for_each_subset(universe, side, [&](const IndexSet& s) {
    IndexSet recoverable;
    for (std::size_t w : without(universe, s)) {
      if (in_rowspace_with_units(coeffs, s, w)) recoverable.push_back(w);
    }
    for_each_subset(recoverable, demand, [&](const IndexSet& w) {
      out.push_back(FeasibleTuple{w, s});
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

PosteriorTable make_posterior_table(std::vector<FeasibleTuple> tuples,
                                    std::vector<Rational> probs,
                                    std::size_t messages) {
  if (tuples.size() != probs.size()) {
    throw ValidationError("one probability per tuple required");
  }
  PosteriorTable table;
  table.alpha.assign(messages, Rational(0));
  table.beta.assign(messages, Rational(0));
  for (std::size_t l = 0; l < tuples.size(); ++l) {
    for (std::size_t i : tuples[l].demand) table.alpha.at(i - 1) += probs[l];
    for (std::size_t i : tuples[l].side) table.beta.at(i - 1) += probs[l];
  }
  table.tuples = std::move(tuples);
  table.probs = std::move(probs);
  return table;
}

Query GroupAndCodeStrategy::sample(const ProtocolParams& params,
                                   const IndexSet& demand,
                                   const IndexSet& side, Rng& rng) const {
  return generate_query(params, demand, side, rng);
}

// generate_query draws a slot permutation, labeled chunkings of W, S and the
// remaining indices, and a final uniform permutation of the P groups. The
// final permutation composed with any fixed slot permutation is again
// uniform, so the slot draw is fixed to the identity here without changing
// the distribution of emitted queries.
void GroupAndCodeStrategy::for_each_outcome(const ProtocolParams& params,
                                            const IndexSet& demand,
                                            const IndexSet& side,
                                            const OutcomeVisitor& visit) const {
  validate_demand(params, demand, side);
  const std::size_t bearing = params.demand_groups();
  const std::size_t groups = params.group_count();
  IndexSet used;
  std::merge(demand.begin(), demand.end(), side.begin(), side.end(),
             std::back_inserter(used));
  const IndexSet rest = without(all_indices(params.messages()), used);

  const auto w_chunks = chunkings(demand, params.demand_per_group());
  const auto s_chunks = chunkings(side, params.side_per_group());
  const auto rest_chunks = chunkings(rest, params.group_size());

  std::vector<IndexSet> placed(groups);
  std::vector<IndexSet> emitted(groups);
  std::vector<std::size_t> perm(groups);
  for (const auto& wc : w_chunks) {
    for (const auto& sc : s_chunks) {
      for (std::size_t r = 0; r < bearing; ++r) {
        placed[r] = wc[r];
        placed[r].insert(placed[r].end(), sc[r].begin(), sc[r].end());
        std::sort(placed[r].begin(), placed[r].end());
      }
      for (const auto& rc : rest_chunks) {
        for (std::size_t r = bearing; r < groups; ++r) {
          placed[r] = rc[r - bearing];
        }
        std::iota(perm.begin(), perm.end(), 0);
        do {
          for (std::size_t j = 0; j < groups; ++j) emitted[j] = placed[perm[j]];
          visit(emitted);
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
}

std::uint64_t GroupAndCodeStrategy::outcome_count(
    const ProtocolParams& params) const {
  const std::uint64_t free_indices =
      params.messages() - params.demand_size() - params.side_size();
  return saturate(
      labeled_chunking_count(params.demand_size(), params.demand_per_group()) *
      labeled_chunking_count(params.side_size(), params.side_per_group()) *
      labeled_chunking_count(free_indices, params.group_size()) *
      factorial(params.group_count()));
}

PosteriorTable posterior_for_query(const Query& query,
                                   const ProtocolParams& params) {
  if (!matches(query, params)) {
    throw ValidationError("query does not fit the protocol parameters");
  }
  std::vector<FeasibleTuple> tuples = feasible_tuples(
      coefficient_matrix(query), params.demand_size(), params.side_size());
  if (tuples.empty()) {
    throw ValidationError("query admits no feasible (W, S) tuple");
  }
  // Canonical queries have the same likelihood under every consistent tuple.
  const Rational each(BigInt(1), BigInt(tuples.size()));
  std::vector<Rational> probs(tuples.size(), each);
  return make_posterior_table(std::move(tuples), std::move(probs),
                              params.messages());
}

std::uint64_t default_audit_budget() {
  const char* env = std::getenv("IPIR_AUDIT_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultAuditBudget;
  const std::string text(env);
  if (text.find_first_not_of("0123456789") != std::string::npos) {
    throw ValidationError("IPIR_AUDIT_BUDGET must be a decimal integer");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw ValidationError("IPIR_AUDIT_BUDGET out of range");
  }
}

PosteriorTable bayes_posterior(const Query& query,
                               const ProtocolParams& params,
                               const QueryStrategy& strategy,
                               std::uint64_t budget) {
  check_budget(params, strategy, budget);
  const std::vector<IndexSet>& target = query.groups();
  std::vector<FeasibleTuple> tuples;
  std::vector<std::uint64_t> counts;
  for_each_demand(params, [&](const IndexSet& w, const IndexSet& s) {
    std::uint64_t hits = 0;
    strategy.for_each_outcome(params, w, s,
                              [&](std::span<const IndexSet> groups) {
                                if (std::equal(groups.begin(), groups.end(),
                                               target.begin(), target.end())) {
                                  ++hits;
                                }
                              });
    if (hits > 0) {
      tuples.push_back(FeasibleTuple{w, s});
      counts.push_back(hits);
    }
  });
  // Prior and outcome_count are the same for every (W, S) and cancel.
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(),
                                              std::uint64_t{0});
  if (total == 0) throw ValidationError("query is unreachable");

  std::vector<std::size_t> order(tuples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return tuples[a] < tuples[b]; });
  std::vector<FeasibleTuple> sorted;
  std::vector<Rational> probs;
  for (std::size_t i : order) {
    sorted.push_back(tuples[i]);
    probs.emplace_back(BigInt(counts[i]), BigInt(total));
  }
  return make_posterior_table(std::move(sorted), std::move(probs),
                              params.messages());
}

PrivacyReport audit_exact(const ProtocolParams& params,
                          const QueryStrategy& strategy,
                          std::uint64_t budget) {
  check_budget(params, strategy, budget);
  const std::size_t k = params.messages();
  const std::uint64_t expected_outcomes = strategy.outcome_count(params);

  std::unordered_map<std::string, Tally> tallies;
  for_each_demand(params, [&](const IndexSet& w, const IndexSet& s) {
    std::uint64_t visited = 0;
    strategy.for_each_outcome(
        params, w, s, [&](std::span<const IndexSet> groups) {
          Tally& t = tallies[query_key(groups)];
          if (t.demand_hits.empty()) t.demand_hits.assign(k, 0);
          ++t.total;
          for (std::size_t i : w) ++t.demand_hits[i - 1];
          ++visited;
        });
    if (visited != expected_outcomes) {
      throw std::logic_error("query strategy visited " +
                             std::to_string(visited) + " outcomes, declared " +
                             std::to_string(expected_outcomes));
    }
  });

  // Uniform prior and a constant outcome count per (W, S) make
  // P(i in W | Q) = #{outcomes emitting Q with i in W} / #{outcomes emitting Q}.
  const Rational target(BigInt(params.demand_size()), BigInt(k));
  Rational worst(0);
  for (const auto& [key, t] : tallies) {
    for (std::size_t i = 0; i < k; ++i) {
      const Rational dev =
          abs(Rational(BigInt(t.demand_hits[i]), BigInt(t.total)) - target);
      if (dev > worst) worst = dev;
    }
  }

  PrivacyReport report;
  report.exact = true;
  report.pass = worst == Rational(0);
  report.exact_deviation = worst;
  report.deviation = worst.to_double();
  report.queries_audited = tallies.size();
  report.queries_seen = tallies.size();
  return report;
}

PrivacyReport audit_exact(const ProtocolParams& params) {
  return audit_exact(params, GroupAndCodeStrategy(), default_audit_budget());
}

PrivacyReport audit_montecarlo(const ProtocolParams& params,
                               std::uint64_t trials, double tolerance,
                               Rng& rng, const QueryStrategy& strategy) {
  if (trials == 0) throw ValidationError("Monte-Carlo audit needs trials >= 1");
  if (!(tolerance >= 0.0)) throw ValidationError("tolerance must be >= 0");
  const std::size_t k = params.messages();
  const std::size_t d = params.demand_size();
  const std::size_t m = params.side_size();

  std::unordered_map<std::string, Tally> tallies;
  IndexSet perm = all_indices(k);
  for (std::uint64_t t = 0; t < trials; ++t) {
    // S uniform among M-subsets, then W uniform among D-subsets of the rest.
    rng.shuffle(std::span(perm));
    IndexSet s(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
    IndexSet w(perm.begin() + static_cast<std::ptrdiff_t>(m),
               perm.begin() + static_cast<std::ptrdiff_t>(m + d));
    std::sort(s.begin(), s.end());
    std::sort(w.begin(), w.end());

    const Query q = strategy.sample(params, w, s, rng);
    const std::vector<IndexSet> canonical = q.canonical_groups();
    Tally& tally = tallies[query_key(canonical)];
    if (tally.demand_hits.empty()) tally.demand_hits.assign(k, 0);
    ++tally.total;
    for (std::size_t i : w) ++tally.demand_hits[i - 1];
  }

  const double target = static_cast<double>(d) / static_cast<double>(k);
  PrivacyReport report;
  report.samples = trials;
  report.queries_seen = tallies.size();
  for (const auto& [key, t] : tallies) {
    if (t.total < kMinBinSamples) continue;
    ++report.queries_audited;
    for (std::size_t i = 0; i < k; ++i) {
      const double est =
          static_cast<double>(t.demand_hits[i]) / static_cast<double>(t.total);
      report.deviation = std::max(report.deviation, std::abs(est - target));
    }
  }
  report.pass = report.queries_audited > 0 && report.deviation <= tolerance;
  return report;
}

PrivacyReport audit_montecarlo(const ProtocolParams& params,
                               std::uint64_t trials, double tolerance,
                               Rng& rng) {
  return audit_montecarlo(params, trials, tolerance, rng,
                          GroupAndCodeStrategy());
}

ConverseResult converse_audit(const PosteriorTable& table, std::uint64_t k,
                              std::uint64_t d, std::uint64_t m,
                              std::uint64_t download) {
  ConverseResult result;
  result.min_download = min_download(k, d, m);
  if (table.alpha.size() != k || table.beta.size() != k) {
    throw ValidationError("posterior table must cover K=" + std::to_string(k) +
                          " indices");
  }
  const Rational alpha{BigInt(d), BigInt(k)};
  for (std::size_t i = 0; i < k; ++i) {
    if (table.alpha[i] != alpha) {
      throw ValidationError("alpha_" + std::to_string(i + 1) + " = " +
                            table.alpha[i].to_string() + " != D/K = " +
                            alpha.to_string() +
                            "; table violates individual privacy");
    }
  }
  for (const Rational& b : table.beta) result.lhs += b / (alpha + b);
  result.bound = Rational(BigInt(m) * k, BigInt(d + m));
  result.download = download;
  result.pass = result.lhs <= result.bound && download >= result.min_download;
  return result;
}

ConverseResult converse_audit(const PosteriorTable& table,
                              const ProtocolParams& params,
                              std::uint64_t download) {
  return converse_audit(table, params.messages(), params.demand_size(),
                        params.side_size(), download);
}

}  // namespace ipir
