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

// Command-line front end: file generation, answering, recovery, audits,
// capacity tables and the TCP transport.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ipir/capacity.hpp"
#include "ipir/errors.hpp"
#include "ipir/net.hpp"
#include "ipir/privacy_audit.hpp"
#include "ipir/protocol.hpp"
#include "ipir/wire.hpp"

namespace {

using namespace ipir;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitAuditFail = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  out.close();
  if (!out) throw Error("cannot write " + path);
}

IndexSet parse_index_list(const std::string& text, const char* flag) {
  IndexSet out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view tok =
        std::string_view(text).substr(start, comma - start);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ValidationError(std::string(flag) + ": bad index '" +
                            std::string(tok) + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw ValidationError(std::string(flag) + ": repeated index");
  }
  return out;
}

// K, n, q from the first line of a database file.
struct DbHeader {
  std::uint64_t k = 0, n = 0, q = 0;
};

DbHeader read_db_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  std::istringstream ss(line);
  std::string magic, version;
  DbHeader h;
  if (!(ss >> magic >> version >> h.k >> h.n >> h.q) || magic != "IPIR-DB" ||
      version != "v1") {
    throw ParseError(1, 0, "expected 'IPIR-DB v1 K n q' in " + path);
  }
  return h;
}

std::string render_matrix_db(const FieldMatrix& rows) {
  return serialize_db(MessageDb(rows));
}

struct Options {
  // gen-db
  std::uint64_t k = 0, n = 0, q = 0, seed = 0;
  std::string out;
  // gen-query
  std::string db_header;
  std::uint64_t d = 0, m = 0;
  std::string demand, side;
  // answer / recover / fetch
  std::string db, query, answer, side_data;
  // audits
  bool exact = false;
  std::uint64_t trials = 0;
  double tol = 0.02;
  // net
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::size_t max_requests = 0;
  std::string rows;
};

int cmd_gen_db(const Options& o) {
  Rng rng(o.seed);
  const MessageDb db = MessageDb::random(PrimeField(o.q), o.k, o.n, rng);
  write_output(o.out, serialize_db(db));
  return kExitOk;
}

int cmd_gen_query(const Options& o) {
  std::uint64_t k = o.k, n = o.n, q = o.q;
  if (!o.db_header.empty()) {
    const DbHeader h = read_db_header(o.db_header);
    if ((k != 0 && k != h.k) || (q != 0 && q != h.q) || (n != 0 && n != h.n)) {
      throw ValidationError("flags disagree with the database header");
    }
    k = h.k;
    n = h.n;
    q = h.q;
  }
  if (k == 0 || q == 0) {
    throw ValidationError("need --db-header or both --k and --q");
  }
  const ProtocolParams p = derive_params(k, o.d, o.m, q, n == 0 ? 1 : n);
  const IndexSet w = parse_index_list(o.demand, "--demand");
  const IndexSet s = parse_index_list(o.side, "--side");
  Rng rng(o.seed);
  write_output(o.out, serialize_query(generate_query(p, w, s, rng)));
  return kExitOk;
}

int cmd_answer(const Options& o) {
  const MessageDb db = parse_db(read_file(o.db));
  const Query q = parse_query(read_file(o.query));
  write_output(o.out, serialize_answer(compute_answer(q, db)));
  return kExitOk;
}

int cmd_recover(const Options& o) {
  const Query q = parse_query(read_file(o.query));
  const Answer a = parse_answer(read_file(o.answer));
  const IndexSet w = parse_index_list(o.demand, "--demand");
  const IndexSet s = parse_index_list(o.side, "--side");
  const MessageDb side = parse_db(read_file(o.side_data));
  const ProtocolParams p = derive_params(q.messages(), w.size(), s.size(),
                                         q.generator().field().order(),
                                         a.symbols());
  if (!matches(q, p)) {
    throw ValidationError("query does not fit the demand and side sizes");
  }
  write_output(o.out, render_matrix_db(recover(p, q, a, w, s, side.matrix())));
  return kExitOk;
}

int cmd_extract_rows(const Options& o) {
  const MessageDb db = parse_db(read_file(o.db));
  write_output(o.out, render_matrix_db(db.rows(parse_index_list(o.rows, "--rows"))));
  return kExitOk;
}

int cmd_audit_privacy(const Options& o) {
  const ProtocolParams p = derive_params(o.k, o.d, o.m, o.q, 1);
  PrivacyReport r;
  if (o.exact) {
    r = audit_exact(p);
    std::cout << "mode exact\n";
    std::cout << "queries " << r.queries_audited << "\n";
    std::cout << "max-deviation " << r.exact_deviation->to_string() << "\n";
  } else {
    if (o.trials == 0) throw ValidationError("--trials must be positive (or use --exact)");
    Rng rng(o.seed);
    r = audit_montecarlo(p, o.trials, o.tol, rng);
    std::cout << "mode montecarlo\n";
    std::cout << "trials " << r.samples << "\n";
    std::cout << "bins " << r.queries_seen << " judged " << r.queries_audited << "\n";
    std::cout << "max-deviation " << r.deviation << " tolerance " << o.tol << "\n";
  }
  std::cout << "target " << Rational(BigInt(o.d), BigInt(o.k)) << "\n";
  std::cout << (r.pass ? "PASS" : "FAIL") << "\n";
  return r.pass ? kExitOk : kExitAuditFail;
}

int cmd_audit_converse(const Options& o) {
  const Query q = parse_query(read_file(o.query));
  const ProtocolParams p =
      derive_params(q.messages(), o.d, o.m, q.generator().field().order(), 1);
  if (!matches(q, p)) throw ValidationError("query does not fit --d and --m");
  const PosteriorTable t = posterior_for_query(q, p);
  const ConverseResult r = converse_audit(t, p, download_cost(p));
  std::cout << "tuples " << t.tuple_count() << "\n";
  std::cout << "lhs " << r.lhs << "\n";
  std::cout << "bound " << r.bound << "\n";
  std::cout << "download " << r.download << "\n";
  std::cout << "min-download " << r.min_download << "\n";
  std::cout << (r.pass ? "PASS" : "FAIL") << "\n";
  return r.pass ? kExitOk : kExitAuditFail;
}

int cmd_capacity(const Options& o) {
  const auto opt = [](const std::optional<Rational>& r) {
    return r ? r->to_string() : std::string("n/a");
  };
  std::cout << "bound " << linear_capacity_bound(o.k, o.d, o.m) << "\n";
  std::cout << "achievable " << opt(achievable_rate(o.k, o.d, o.m)) << "\n";
  std::cout << "prior " << prior_scheme_rate(o.k, o.d, o.m) << "\n";
  std::cout << "conjecture " << conjectured_capacity(o.k, o.d, o.m)
            << " (conjecture, unproven)\n";
  std::cout << "known " << opt(known_capacity(o.k, o.d, o.m)) << "\n";
  std::cout << "min-download " << min_download(o.k, o.d, o.m) << "\n";
  return kExitOk;
}

int cmd_serve(const Options& o) {
  Server server(parse_db(read_file(o.db)), o.host, o.port);
  std::cout << "listening " << o.host << ":" << server.port() << std::endl;
  server.run(o.max_requests);
  return kExitOk;
}

int cmd_fetch(const Options& o) {
  const std::string reply = fetch(o.host, o.port, read_file(o.query));
  write_output(o.out, reply);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Individually-private information retrieval toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* gen_db = app.add_subcommand("gen-db", "Generate a random message database");
  gen_db->add_option("--k", o.k, "Message count")->required();
  gen_db->add_option("--n", o.n, "Symbols per message")->required();
  gen_db->add_option("--q", o.q, "Prime field order")->required();
  gen_db->add_option("--seed", o.seed, "RNG seed");
  gen_db->add_option("--out", o.out, "Output file (default stdout)");

  auto* gen_query = app.add_subcommand("gen-query", "Generate a query for a demand");
  gen_query->add_option("--db-header", o.db_header, "Take K, n, q from this database file");
  gen_query->add_option("--k", o.k, "Message count");
  gen_query->add_option("--d", o.d, "Demand size")->required();
  gen_query->add_option("--m", o.m, "Side-information size")->required();
  gen_query->add_option("--q", o.q, "Prime field order");
  gen_query->add_option("--n", o.n, "Symbols per message");
  gen_query->add_option("--demand", o.demand, "Demand indices, e.g. 1,2")->required();
  gen_query->add_option("--side", o.side, "Side-information indices")->required();
  gen_query->add_option("--seed", o.seed, "RNG seed");
  gen_query->add_option("--out", o.out, "Output file (default stdout)");

  auto* answer = app.add_subcommand("answer", "Compute the server answer");
  answer->add_option("--db", o.db, "Database file")->required();
  answer->add_option("--query", o.query, "Query file")->required();
  answer->add_option("--out", o.out, "Output file (default stdout)");

  auto* rec = app.add_subcommand("recover", "Recover demand messages from an answer");
  rec->add_option("--query", o.query, "Query file")->required();
  rec->add_option("--answer", o.answer, "Answer file")->required();
  rec->add_option("--demand", o.demand, "Demand indices")->required();
  rec->add_option("--side", o.side, "Side-information indices")->required();
  rec->add_option("--side-data", o.side_data,
                  "Side-information rows (database format, ascending index order)")
      ->required();
  rec->add_option("--out", o.out, "Output file (default stdout)");

  auto* extract = app.add_subcommand("extract-rows", "Copy selected rows of a database");
  extract->add_option("--db", o.db, "Database file")->required();
  extract->add_option("--rows", o.rows, "Indices, e.g. 3,5")->required();
  extract->add_option("--out", o.out, "Output file (default stdout)");

  auto* audit = app.add_subcommand("audit-privacy", "Audit the individual-privacy condition");
  audit->add_option("--k", o.k, "Message count")->required();
  audit->add_option("--d", o.d, "Demand size")->required();
  audit->add_option("--m", o.m, "Side-information size")->required();
  audit->add_option("--q", o.q, "Prime field order")->required();
  auto* exact_flag = audit->add_flag("--exact", o.exact, "Exhaustive exact audit");
  audit->add_option("--trials", o.trials, "Monte-Carlo trials")->excludes(exact_flag);
  audit->add_option("--tol", o.tol, "Monte-Carlo tolerance")->excludes(exact_flag);
  audit->add_option("--seed", o.seed, "RNG seed");

  auto* converse = app.add_subcommand("audit-converse", "Evaluate the converse bound on a query");
  converse->add_option("--query", o.query, "Query file")->required();
  converse->add_option("--d", o.d, "Demand size")->required();
  converse->add_option("--m", o.m, "Side-information size")->required();

  auto* cap = app.add_subcommand("capacity", "Print rate and capacity values");
  cap->add_option("--k", o.k, "Message count")->required();
  cap->add_option("--d", o.d, "Demand size")->required();
  cap->add_option("--m", o.m, "Side-information size")->required();

  auto* serve = app.add_subcommand("serve", "Answer queries over TCP");
  serve->add_option("--db", o.db, "Database file")->required();
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port (0 picks one)");
  serve->add_option("--max-requests", o.max_requests, "Exit after this many (0 = never)");

  auto* fetch_cmd = app.add_subcommand("fetch", "Send a query to a server");
  fetch_cmd->add_option("--host", o.host, "Server address");
  fetch_cmd->add_option("--port", o.port, "Server port")->required();
  fetch_cmd->add_option("--query", o.query, "Query file")->required();
  fetch_cmd->add_option("--out", o.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_db) return cmd_gen_db(o);
    if (*gen_query) return cmd_gen_query(o);
    if (*answer) return cmd_answer(o);
    if (*rec) return cmd_recover(o);
    if (*extract) return cmd_extract_rows(o);
    if (*audit) return cmd_audit_privacy(o);
    if (*converse) return cmd_audit_converse(o);
    if (*cap) return cmd_capacity(o);
    if (*serve) return cmd_serve(o);
    if (*fetch_cmd) return cmd_fetch(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
