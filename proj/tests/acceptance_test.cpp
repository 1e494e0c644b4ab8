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

// Acceptance checks. Prints one line per criterion and exits non-zero if any
// fails or overruns its time limit.

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ipir/capacity.hpp"
#include "ipir/mds.hpp"
#include "ipir/net.hpp"
#include "ipir/privacy_audit.hpp"
#include "ipir/protocol.hpp"
#include "ipir/wire.hpp"
#include "support/broken_strategy.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace ipir;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail << what;
    }
  }
};

bool run_criterion(int number, const std::string& title, double limit_seconds,
                   const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    out.require(false, "took " + std::to_string(secs) + " s, limit " +
                           std::to_string(limit_seconds) + " s");
  }
  std::cout << (out.ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << title << " (" << std::fixed;
  std::cout.precision(3);
  std::cout << secs << " s)";
  if (!out.ok) std::cout << " -- " << out.detail.str();
  std::cout << std::endl;
  return out.ok;
}

Rational frac(std::uint64_t n, std::uint64_t d) { return Rational(BigInt(n), BigInt(d)); }

void capacity_tightness(Outcome& out) {
  std::size_t checked = 0;
  for (std::size_t k = 3; k <= 24; ++k) {
    for (std::size_t d = 2; d <= 4; ++d) {
      for (std::size_t m = 1; m <= 6 && d + m <= k; ++m) {
        const std::size_t r = std::gcd(d, m);
        const std::size_t t = (d + m) / r;
        if (k % t != 0) continue;
        const ProtocolParams p =
            derive_params(k, d, m, smallest_admissible_order(t, d / r), 1);
        const std::uint64_t l = download_cost(p);
        std::ostringstream at;
        at << "(K,D,M)=(" << k << "," << d << "," << m << ")";
        out.require(frac(d, l) == frac(d + m, k), "rate mismatch at " + at.str());
        out.require(l == min_download(k, d, m), "L != ceil(DK/(D+M)) at " + at.str());
        ++checked;
      }
    }
  }
  out.require(checked > 0, "no parameters checked");
}

void recoverability(Outcome& out) {
  Rng rng(2024);
  std::size_t configs = 0;
  for (std::size_t k : {6, 9, 12}) {
    for (const auto& [d, m] : std::vector<std::pair<std::size_t, std::size_t>>{
             {2, 1}, {2, 4}, {2, 2}}) {
      if (d + m > k) continue;
      const std::size_t t = (d + m) / std::gcd(d, m);
      if (k % t != 0) continue;
      for (std::uint64_t q : {2, 3, 5}) {
        if (q < smallest_admissible_order(t, d / std::gcd(d, m))) continue;
        for (std::size_t n : {1, 4}) {
          const ProtocolParams p = derive_params(k, d, m, q, n);
          const MessageDb db = MessageDb::random(p.field(), k, n, rng);
          ++configs;
          testing::for_each_demand_pair(k, d, m, [&](const IndexSet& w, const IndexSet& s) {
            if (!out.ok) return;
            const Query query = generate_query(p, w, s, rng);
            const Answer a = compute_answer(query, db);
            const FieldMatrix got = recover(p, query, a, w, s, db.rows(s));
            std::ostringstream at;
            at << "K=" << k << " D=" << d << " M=" << m << " q=" << q << " n=" << n;
            out.require(got == db.rows(w), "wrong demand at " + at.str());
          });
        }
      }
    }
  }
  out.require(configs > 0, "no configurations checked");
}

void exact_privacy(Outcome& out) {
  for (const auto& [k, d, m, q] : std::vector<std::array<std::size_t, 4>>{
           {6, 2, 1, 3}, {9, 2, 4, 3}, {8, 2, 2, 2}}) {
    std::ostringstream at;
    at << "(" << k << "," << d << "," << m << "," << q << ")";
    const auto start = std::chrono::steady_clock::now();
    const PrivacyReport r = audit_exact(derive_params(k, d, m, q, 1));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(r.pass && r.exact_deviation && *r.exact_deviation == Rational(0),
                "deviation " +
                    (r.exact_deviation ? r.exact_deviation->to_string() : std::string("?")) +
                    " at " + at.str());
    out.require(r.queries_audited > 0, "no queries audited at " + at.str());
    out.require(secs <= 60.0, "audit at " + at.str() + " took " + std::to_string(secs) + " s");
  }
  const PrivacyReport broken = audit_exact(derive_params(6, 2, 1, 3, 1),
                                           testing::PinnedDemandStrategy(), 10'000'000);
  out.require(!broken.pass, "broken generator passed the exact audit");
  out.require(broken.exact_deviation && *broken.exact_deviation > Rational(0),
              "broken generator shows no deviation");
}

void montecarlo_privacy(Outcome& out) {
  Rng rng(42);
  const PrivacyReport r =
      audit_montecarlo(derive_params(6, 2, 1, 3, 1), 100'000, 0.02, rng);
  out.require(r.pass, "max bin deviation " + std::to_string(r.deviation));
  out.require(r.queries_audited == 10, "expected 10 judged bins, got " +
                                           std::to_string(r.queries_audited));
}

void converse(Outcome& out) {
  const ProtocolParams p = derive_params(6, 2, 1, 3, 1);
  Rng rng(6);
  const Query q = generate_query(p, {1, 2}, {3}, rng);
  const PosteriorTable t = posterior_for_query(q, p);
  const ConverseResult r = converse_audit(t, p, download_cost(p));
  out.require(r.lhs == Rational(2) && r.bound == Rational(2),
              "lhs " + r.lhs.to_string() + " bound " + r.bound.to_string());
  out.require(r.download == 4 && r.min_download == 4 && r.pass,
              "download " + std::to_string(r.download) + " min " +
                  std::to_string(r.min_download));
  out.require(!converse_audit(t, p, 3).pass, "L = 3 accepted");

  const std::size_t k = 6, d = 2, m = 1;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint64_t> w(k);
    for (auto& x : w) x = trial == 0 ? 1 : rng.uniform_below(12);
    std::uint64_t total = std::accumulate(w.begin(), w.end(), std::uint64_t{0});
    if (total == 0) {
      w[0] = total = 1;
    }
    PosteriorTable tab;
    tab.alpha.assign(k, frac(d, k));
    for (auto x : w) tab.beta.push_back(frac(m * x, total));
    const ConverseResult c = converse_audit(tab, k, d, m, min_download(k, d, m));
    const bool uniform = std::all_of(w.begin(), w.end(), [&](auto x) { return x == w[0]; });
    out.require(uniform ? c.lhs == c.bound : c.lhs < c.bound,
                "trial " + std::to_string(trial) + ": lhs " + c.lhs.to_string());
    out.require(c.pass, "trial " + std::to_string(trial) + " failed");
  }
}

void remark_separation(Outcome& out) {
  out.require(prior_scheme_rate(9, 2, 4) == frac(1, 2), "prior(9,2,4) != 1/2");
  out.require(achievable_rate(9, 2, 4) == frac(2, 3), "achievable(9,2,4) != 2/3");
  out.require(prior_scheme_rate(9, 2, 4) < *achievable_rate(9, 2, 4), "no separation");
  out.require(prior_scheme_rate(12, 2, 4) == frac(1, 2), "prior(12,2,4) != 1/2");
  out.require(achievable_rate(12, 2, 4) == frac(1, 2), "achievable(12,2,4) != 1/2");
}

void known_capacity_consistency(Outcome& out) {
  for (std::uint64_t k = 3; k <= 60; ++k) {
    if (k % 3 == 0) {
      const auto c = known_capacity(k, 2, 1);
      out.require(c && *c == frac(2, (2 * k + 2) / 3), "formula (2,1) at K=" + std::to_string(k));
      out.require(c && *c == linear_capacity_bound(k, 2, 1), "(2,1) at K=" + std::to_string(k));
    }
    if (k >= 4 && k % 2 == 0) {
      const auto c = known_capacity(k, 2, 2);
      out.require(c && *c == frac(2, (k + 1) / 2), "formula (2,2) at K=" + std::to_string(k));
      out.require(c && *c == linear_capacity_bound(k, 2, 2), "(2,2) at K=" + std::to_string(k));
    }
  }
}

void mds_property(Outcome& out) {
  for (std::size_t t = 1; t <= 8; ++t) {
    for (std::size_t d = 1; d <= t; ++d) {
      const GeneratorMatrix g = build_generator(t, d, smallest_admissible_order(t, d));
      out.require(verify_mds(g), "T=" + std::to_string(t) + " d=" + std::to_string(d));
    }
  }
}

void networked_pipeline(Outcome& out) {
  const ProtocolParams p = derive_params(6, 2, 1, 3, 4);
  Rng db_rng(42);
  const std::string db_text = serialize_db(MessageDb::random(p.field(), 6, 4, db_rng));
  const MessageDb db = parse_db(db_text);

  Server server(parse_db(db_text), "127.0.0.1", 0);
  std::thread serving([&] { server.run(1); });

  Rng q_rng(42);
  const IndexSet w{1, 2}, s{3};
  const std::string query_text = serialize_query(generate_query(p, w, s, q_rng));
  std::string reply;
  try {
    reply = fetch("127.0.0.1", server.port(), query_text);
  } catch (...) {
    server.stop();
    serving.join();
    throw;
  }
  serving.join();

  const Query query = parse_query(query_text);
  const FieldMatrix got = recover(p, query, parse_answer(reply), w, s,
                                  parse_db(serialize_db(MessageDb(db.rows(s)))).matrix());
  out.require(reply == serialize_answer(compute_answer(query, db)),
              "networked answer differs from the local one");
  out.require(serialize_db(MessageDb(got)) == serialize_db(MessageDb(db.rows(w))),
              "recovered rows differ from the database");
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "capacity tightness for K <= 24, D <= 4, M <= 6", 1.0,
                      capacity_tightness);
  ok &= run_criterion(2, "exhaustive recovery for K in {6,9,12}", 30.0, recoverability);
  ok &= run_criterion(3, "exact privacy at (6,2,1,3), (9,2,4,3), (8,2,2,2); broken generator fails",
                      0.0, exact_privacy);
  ok &= run_criterion(4, "Monte-Carlo privacy at (6,2,1), 1e5 trials, tol 0.02", 30.0,
                      montecarlo_privacy);
  ok &= run_criterion(5, "converse bound met with equality at (6,2,1)", 0.0, converse);
  ok &= run_criterion(6, "prior scheme separation at (9,2,4) and (12,2,4)", 0.0,
                      remark_separation);
  ok &= run_criterion(7, "known capacities match the bound for K <= 60", 0.0,
                      known_capacity_consistency);
  ok &= run_criterion(8, "MDS property for T <= 8", 5.0, mds_property);
  ok &= run_criterion(9, "networked pipeline at (6,2,1,q=3,n=4,seed=42)", 5.0,
                      networked_pipeline);
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
  return ok ? 0 : 1;
}
