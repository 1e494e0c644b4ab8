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

#include "ipir/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "ipir/errors.hpp"

namespace ipir {

namespace {

std::string describe(std::size_t k, std::size_t d, std::size_t m) {
  return "(K=" + std::to_string(k) + ", D=" + std::to_string(d) +
         ", M=" + std::to_string(m) + ")";
}

void require_sorted_subset(const IndexSet& set, std::size_t k,
                           const char* name) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] < 1 || set[i] > k) {
      throw ValidationError(std::string(name) + " index " +
                            std::to_string(set[i]) + " outside [1, " +
                            std::to_string(k) + "]");
    }
    if (i > 0 && set[i] <= set[i - 1]) {
      throw ValidationError(std::string(name) +
                            " must be strictly increasing");
    }
  }
}

// Splits `items` into consecutive chunks of `size`.
std::vector<IndexSet> chunk(const IndexSet& items, std::size_t size) {
  std::vector<IndexSet> out;
  for (std::size_t i = 0; i < items.size(); i += size) {
    out.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(i),
                     items.begin() + static_cast<std::ptrdiff_t>(i + size));
  }
  return out;
}

}  // namespace

ProtocolParams derive_params(std::size_t messages, std::size_t demand,
                             std::size_t side, std::uint64_t q,
                             std::size_t symbols) {
  if (demand < 2) throw ValidationError("demand size D must be >= 2");
  if (side < 1) throw ValidationError("side-information size M must be >= 1");
  if (messages < demand + side) {
    throw ValidationError("K must be >= D + M " +
                          describe(messages, demand, side));
  }
  if (symbols < 1) throw ValidationError("message length n must be >= 1");

  ProtocolParams p;
  p.k_ = messages;
  p.d_total_ = demand;
  p.m_total_ = side;
  p.q_ = q;
  p.n_ = symbols;
  p.r_ = std::gcd(demand, side);
  p.d_ = demand / p.r_;
  p.m_ = side / p.r_;
  if (messages % p.group_size() != 0) {
    throw ValidationError("group size T=" + std::to_string(p.group_size()) +
                          " does not divide K " +
                          describe(messages, demand, side));
  }
  // Checks primality and that V exists over F_q.
  build_generator(p.group_size(), p.demand_per_group(), q);
  return p;
}

void validate_demand(const ProtocolParams& params, const IndexSet& demand,
                     const IndexSet& side) {
  const std::size_t k = params.messages();
  require_sorted_subset(demand, k, "demand");
  require_sorted_subset(side, k, "side information");
  if (demand.size() != params.demand_size()) {
    throw ValidationError("demand must have exactly D=" +
                          std::to_string(params.demand_size()) + " indices");
  }
  if (side.size() != params.side_size()) {
    throw ValidationError("side information must have exactly M=" +
                          std::to_string(params.side_size()) + " indices");
  }
  for (std::size_t w : demand) {
    if (std::binary_search(side.begin(), side.end(), w)) {
      throw ValidationError("demand and side information overlap at index " +
                            std::to_string(w));
    }
  }
}

MessageDb::MessageDb(FieldMatrix symbols) : symbols_(std::move(symbols)) {
  if (symbols_.rows() == 0 || symbols_.cols() == 0) {
    throw ValidationError("message database must be non-empty");
  }
}

FieldMatrix MessageDb::rows(const IndexSet& indices) const {
  std::vector<std::size_t> zero_based;
  zero_based.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i < 1 || i > messages()) {
      throw ValidationError("message index " + std::to_string(i) +
                            " outside database");
    }
    zero_based.push_back(i - 1);
  }
  return symbols_.select_rows(zero_based);
}

MessageDb MessageDb::random(const PrimeField& field, std::size_t messages,
                            std::size_t symbols, Rng& rng) {
  FieldMatrix m(field, messages, symbols);
  for (std::size_t i = 0; i < messages; ++i) {
    for (std::size_t j = 0; j < symbols; ++j) {
      m.set(i, j, rng.uniform_below(field.order()));
    }
  }
  return MessageDb(std::move(m));
}

Query::Query(std::vector<IndexSet> groups, GeneratorMatrix generator)
    : groups_(std::move(groups)), generator_(std::move(generator)) {
  if (groups_.empty()) throw ValidationError("query has no groups");
  const std::size_t t = generator_.length();
  const std::size_t k = groups_.size() * t;
  std::vector<bool> seen(k + 1, false);
  for (const IndexSet& g : groups_) {
    if (g.size() != t) {
      throw ValidationError("every group must have T=" + std::to_string(t) +
                            " members");
    }
    require_sorted_subset(g, k, "group");
    for (std::size_t i : g) {
      if (seen[i]) {
        throw ValidationError("index " + std::to_string(i) +
                              " appears in two groups");
      }
      seen[i] = true;
    }
  }
}

std::vector<IndexSet> Query::canonical_groups() const {
  std::vector<IndexSet> out = groups_;
  std::sort(out.begin(), out.end());
  return out;
}

Answer::Answer(std::size_t group_count, std::size_t dimension,
               FieldMatrix coded)
    : group_count_(group_count),
      dimension_(dimension),
      coded_(std::move(coded)) {
  if (coded_.rows() != group_count_ * dimension_) {
    throw ValidationError("answer must hold P*d = " +
                          std::to_string(group_count_ * dimension_) +
                          " coded vectors, got " +
                          std::to_string(coded_.rows()));
  }
}

bool matches(const Query& query, const ProtocolParams& params) {
  return query.messages() == params.messages() &&
         query.group_size() == params.group_size() &&
         query.dimension() == params.demand_per_group() &&
         query.generator().field().order() == params.field_order() &&
         query.generator() == build_generator(params.group_size(),
                                              params.demand_per_group(),
                                              params.field_order());
}

Query generate_query(const ProtocolParams& params, const IndexSet& demand,
                     const IndexSet& side, Rng& rng) {
  validate_demand(params, demand, side);
  const std::size_t k = params.messages();
  const std::size_t groups = params.group_count();
  const std::size_t bearing = params.demand_groups();

  // (i) which slots receive demand-bearing groups.
  std::vector<std::size_t> slots(groups);
  std::iota(slots.begin(), slots.end(), 0);
  rng.shuffle(std::span(slots));

  // (ii) random split of W into d-subsets and S into m-subsets.
  IndexSet w = demand;
  IndexSet s = side;
  rng.shuffle(std::span(w));
  rng.shuffle(std::span(s));
  const std::vector<IndexSet> w_parts = chunk(w, params.demand_per_group());
  const std::vector<IndexSet> s_parts = chunk(s, params.side_per_group());

  // (iii) random fill of the remaining slots from [K] \ (W u S).
  IndexSet rest;
  rest.reserve(k - demand.size() - side.size());
  for (std::size_t i = 1; i <= k; ++i) {
    if (!std::binary_search(demand.begin(), demand.end(), i) &&
        !std::binary_search(side.begin(), side.end(), i)) {
      rest.push_back(i);
    }
  }
  rng.shuffle(std::span(rest));
  const std::vector<IndexSet> rest_parts = chunk(rest, params.group_size());

  std::vector<IndexSet> out(groups);
  for (std::size_t r = 0; r < bearing; ++r) {
    IndexSet& g = out[slots[r]];
    g = w_parts[r];
    g.insert(g.end(), s_parts[r].begin(), s_parts[r].end());
  }
  for (std::size_t r = bearing; r < groups; ++r) out[slots[r]] = rest_parts[r - bearing];
  for (IndexSet& g : out) std::sort(g.begin(), g.end());

  // Slot order must carry no information.
  rng.shuffle(std::span(out));

  return Query(std::move(out),
               build_generator(params.group_size(), params.demand_per_group(),
                               params.field_order()));
}

Answer compute_answer(const Query& query, const MessageDb& db) {
  if (db.messages() != query.messages()) {
    throw ValidationError("database has " + std::to_string(db.messages()) +
                          " messages, query covers " +
                          std::to_string(query.messages()));
  }
  const PrimeField& f = db.field();
  if (f != query.generator().field()) {
    throw ValidationError("database and query use different fields");
  }

  const FieldMatrix& v = query.generator().matrix();
  const FieldMatrix::Storage& x = db.matrix().entries();
  const std::size_t d = query.dimension();
  const Eigen::Index n = x.cols();
  FieldMatrix::Storage z =
      FieldMatrix::Storage::Zero(static_cast<Eigen::Index>(query.group_count() * d), n);

  for (std::size_t k = 0; k < query.group_count(); ++k) {
    const IndexSet& group = query.groups()[k];
    for (std::size_t l = 0; l < d; ++l) {
      auto out = z.row(static_cast<Eigen::Index>(k * d + l));
      for (std::size_t j = 0; j < group.size(); ++j) {
        const Symbol coeff = v(l, j);
        if (coeff == 0) continue;
        const auto msg = x.row(static_cast<Eigen::Index>(group[j] - 1));
        for (Eigen::Index c = 0; c < n; ++c) {
          out(c) = f.add(out(c), f.mul(coeff, msg(c)));
        }
      }
    }
  }
  return Answer(query.group_count(), d, FieldMatrix(f, std::move(z)));
}

FieldMatrix recover(const ProtocolParams& params, const Query& query,
                    const Answer& answer, const IndexSet& demand,
                    const IndexSet& side, const FieldMatrix& side_info) {
  validate_demand(params, demand, side);
  if (!matches(query, params)) {
    throw ValidationError("query shape does not match protocol parameters");
  }
  if (answer.group_count() != query.group_count() ||
      answer.dimension() != query.dimension()) {
    throw ValidationError("answer shape does not match query");
  }
  const PrimeField& f = answer.coded().field();
  if (f != query.generator().field() || side_info.field() != f) {
    throw ValidationError("answer, query and side information fields differ");
  }
  if (side_info.rows() != side.size() ||
      side_info.cols() != answer.symbols()) {
    throw ValidationError("side information must be M x n");
  }

  const std::size_t d = query.dimension();
  const std::size_t n = answer.symbols();
  const FieldMatrix& v = query.generator().matrix();
  FieldMatrix out(f, demand.size(), n);
  std::size_t recovered = 0;

  auto position_in = [](const IndexSet& set, std::size_t i) -> std::ptrdiff_t {
    const auto it = std::lower_bound(set.begin(), set.end(), i);
    return it != set.end() && *it == i ? it - set.begin() : -1;
  };

  for (std::size_t k = 0; k < query.group_count(); ++k) {
    const IndexSet& group = query.groups()[k];
    std::vector<std::size_t> demand_pos;  // positions j with i_{k,j} in W
    std::vector<std::size_t> side_pos;    // positions j with i_{k,j} in S
    for (std::size_t j = 0; j < group.size(); ++j) {
      if (position_in(demand, group[j]) >= 0) {
        demand_pos.push_back(j);
      } else if (position_in(side, group[j]) >= 0) {
        side_pos.push_back(j);
      }
    }
    if (demand_pos.empty()) continue;
    if (demand_pos.size() != d || demand_pos.size() + side_pos.size() != group.size()) {
      throw ValidationError("group " + std::to_string(k + 1) +
                            " is not a demand/side-information group");
    }

    // Z~ = Z - contribution of the side-information members.
    FieldMatrix rhs(f, d, n);
    for (std::size_t l = 0; l < d; ++l) {
      for (std::size_t c = 0; c < n; ++c) {
        Symbol acc = answer.coded()(k * d + l, c);
        for (std::size_t j : side_pos) {
          const auto row = static_cast<std::size_t>(position_in(side, group[j]));
          acc = f.sub(acc, f.mul(v(l, j), side_info(row, c)));
        }
        rhs.set(l, c, acc);
      }
    }
    const FieldMatrix solved = solve_square(v.select_cols(demand_pos), rhs);
    for (std::size_t t = 0; t < d; ++t) {
      const auto row =
          static_cast<std::size_t>(position_in(demand, group[demand_pos[t]]));
      for (std::size_t c = 0; c < n; ++c) out.set(row, c, solved(t, c));
      ++recovered;
    }
  }
  if (recovered != demand.size()) {
    throw ValidationError("query does not cover every demand index");
  }
  return out;
}

FieldMatrix coefficient_matrix(const Query& query) {
  const FieldMatrix& v = query.generator().matrix();
  const std::size_t d = query.dimension();
  FieldMatrix out(v.field(), query.group_count() * d, query.messages());
  for (std::size_t k = 0; k < query.group_count(); ++k) {
    const IndexSet& group = query.groups()[k];
    for (std::size_t l = 0; l < d; ++l) {
      for (std::size_t j = 0; j < group.size(); ++j) {
        out.set(k * d + l, group[j] - 1, v(l, j));
      }
    }
  }
  return out;
}

std::size_t download_cost(const ProtocolParams& params) {
  return params.group_count() * params.demand_per_group();
}

Rational rate(const ProtocolParams& params) {
  return Rational(BigInt(params.demand_size()),
                  BigInt(download_cost(params)));
}

}  // namespace ipir
