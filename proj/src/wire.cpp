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

#include "ipir/wire.hpp"

#include <charconv>
#include <initializer_list>
#include <cstdint>
#include <utility>
#include <vector>

#include "ipir/errors.hpp"

namespace ipir {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {
    if (!text_.empty() && text_.back() != '\n') {
      throw ParseError(count_lines() , 0, "missing final newline");
    }
  }

  bool done() const noexcept { return pos_ >= text_.size(); }
  std::size_t line_number() const noexcept { return line_; }

  // Next line's tokens; `what` names the expected content for errors.
  std::vector<Token> next(const char* what) {
    if (done()) {
      throw ParseError(line_ + 1, 0, std::string("expected ") + what +
                                         ", found end of input");
    }
    const std::size_t end = text_.find('\n', pos_);
    const std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return split(line);
  }

  void expect_end() const {
    if (!done()) throw ParseError(line_ + 1, 0, "unexpected trailing line");
  }

 private:
  std::size_t count_lines() const {
    std::size_t n = 1;
    for (char c : text_) n += c == '\n';
    return n;
  }

  std::vector<Token> split(std::string_view line) const {
    std::vector<Token> out;
    std::size_t start = 0;
    while (true) {
      const std::size_t sp = line.find(' ', start);
      const std::string_view tok = line.substr(start, sp - start);
      if (tok.empty()) {
        throw ParseError(line_, start + 1, "empty token (extra whitespace)");
      }
      out.push_back(Token{tok, start + 1});
      if (sp == std::string_view::npos) break;
      start = sp + 1;
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

std::uint64_t parse_number(const Token& tok, std::size_t line) {
  const std::string_view s = tok.text;
  if (s.size() > 1 && s.front() == '0') {
    throw ParseError(line, tok.column, "leading zero in '" + std::string(s) + "'");
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, tok.column,
                     "expected a decimal integer, found '" + std::string(s) + "'");
  }
  return value;
}

void expect_count(const std::vector<Token>& toks, std::size_t count,
                  std::size_t line, const char* what) {
  if (toks.size() != count) {
    throw ParseError(line, 0, std::string(what) + ": expected " +
                                  std::to_string(count) + " values, found " +
                                  std::to_string(toks.size()));
  }
}

// Parses "<magic> v1 a b c ..." returning the numeric fields.
std::vector<std::uint64_t> parse_header(LineReader& in, std::string_view magic,
                                        std::size_t fields) {
  const std::vector<Token> toks = in.next("header");
  const std::size_t line = in.line_number();
  if (toks[0].text != magic) {
    throw ParseError(line, 1, "expected '" + std::string(magic) + "'");
  }
  if (toks.size() < 2 || toks[1].text != "v1") {
    throw ParseError(line, toks.size() < 2 ? 0 : toks[1].column,
                     "unsupported version, expected v1");
  }
  expect_count(toks, fields + 2, line, "header");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 2; i < toks.size(); ++i) {
    out.push_back(parse_number(toks[i], line));
  }
  return out;
}

PrimeField header_field(std::uint64_t q, std::size_t column) {
  try {
    return PrimeField(q);
  } catch (const ValidationError& e) {
    throw ParseError(1, column, e.what());
  }
}

// Reads `rows` lines of `cols` symbols each into a matrix over `field`.
FieldMatrix parse_symbol_rows(LineReader& in, const PrimeField& field,
                              std::size_t rows, std::size_t cols,
                              const char* what) {
  FieldMatrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::vector<Token> toks = in.next(what);
    const std::size_t line = in.line_number();
    expect_count(toks, cols, line, what);
    for (std::size_t c = 0; c < cols; ++c) {
      const std::uint64_t v = parse_number(toks[c], line);
      if (!field.contains(v)) {
        throw ParseError(line, toks[c].column,
                         "symbol " + std::to_string(v) + " is not below q=" +
                             std::to_string(field.order()));
      }
      m.set(r, c, v);
    }
  }
  return m;
}

void append_row(std::string& out, const FieldMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (c > 0) out.push_back(' ');
    out += std::to_string(m(r, c));
  }
  out.push_back('\n');
}

// Each body value takes at least two bytes, so a header promising more values
// than that is rejected before anything is allocated.
void require_body_fits(std::string_view text,
                       std::initializer_list<std::uint64_t> dims) {
  std::uint64_t total = 1;
  for (std::uint64_t v : dims) {
    if (v != 0 && total > text.size() / v) {
      throw ParseError(1, 0, "header dimensions exceed the body size");
    }
    total *= v;
  }
  if (total > text.size() / 2) {
    throw ParseError(1, 0, "header dimensions exceed the body size");
  }
}

template <typename... Fields>
std::string header(std::string_view magic, Fields... fields) {
  std::string out(magic);
  out += " v1";
  ((out += ' ', out += std::to_string(fields)), ...);
  out.push_back('\n');
  return out;
}

}  // namespace

std::string serialize_db(const MessageDb& db) {
  std::string out = header("IPIR-DB", db.messages(), db.symbols(),
                           db.field().order());
  for (std::size_t r = 0; r < db.messages(); ++r) {
    append_row(out, db.matrix(), r);
  }
  return out;
}

MessageDb parse_db(std::string_view text) {
  LineReader in(text);
  const auto h = parse_header(in, "IPIR-DB", 3);
  if (h[0] == 0 || h[1] == 0) throw ParseError(1, 0, "K and n must be positive");
  require_body_fits(text, {h[0], h[1]});
  const PrimeField field = header_field(h[2], 0);
  FieldMatrix m = parse_symbol_rows(in, field, h[0], h[1], "message row");
  in.expect_end();
  return MessageDb(std::move(m));
}

std::string serialize_query(const Query& query) {
  const GeneratorMatrix& g = query.generator();
  std::string out =
      header("IPIR-Q", query.messages(), query.group_count(),
             query.group_size(), query.dimension(), g.field().order());
  for (const IndexSet& group : query.groups()) {
    for (std::size_t j = 0; j < group.size(); ++j) {
      if (j > 0) out.push_back(' ');
      out += std::to_string(group[j]);
    }
    out.push_back('\n');
  }
  for (std::size_t l = 0; l < g.dimension(); ++l) append_row(out, g.matrix(), l);
  return out;
}

Query parse_query(std::string_view text) {
  LineReader in(text);
  const auto h = parse_header(in, "IPIR-Q", 5);
  const std::uint64_t k = h[0], p = h[1], t = h[2], d = h[3], q = h[4];
  require_body_fits(text, {p, t});
  if (p == 0 || t == 0 || p * t != k) {
    throw ParseError(1, 0, "header requires K = P*T with P, T >= 1");
  }
  if (d == 0 || d > t) throw ParseError(1, 0, "header requires 1 <= d <= T");

  std::vector<IndexSet> groups;
  std::vector<bool> seen(k + 1, false);
  for (std::uint64_t g = 0; g < p; ++g) {
    const std::vector<Token> toks = in.next("group line");
    const std::size_t line = in.line_number();
    expect_count(toks, t, line, "group line");
    IndexSet group;
    for (const Token& tok : toks) {
      const std::uint64_t i = parse_number(tok, line);
      if (i < 1 || i > k) {
        throw ParseError(line, tok.column, "index " + std::to_string(i) +
                                               " outside [1, K]");
      }
      if (!group.empty() && i <= group.back()) {
        throw ParseError(line, tok.column, "group indices must ascend");
      }
      if (seen[i]) {
        throw ParseError(line, tok.column, "index " + std::to_string(i) +
                                               " already used by another group");
      }
      seen[i] = true;
      group.push_back(i);
    }
    groups.push_back(std::move(group));
  }

  GeneratorMatrix generator = [&] {
    try {
      return build_generator(t, d, q);
    } catch (const ValidationError& e) {
      throw ParseError(1, 0, e.what());
    }
  }();
  for (std::uint64_t l = 0; l < d; ++l) {
    const std::vector<Token> toks = in.next("generator row");
    const std::size_t line = in.line_number();
    expect_count(toks, t, line, "generator row");
    for (std::size_t j = 0; j < t; ++j) {
      if (parse_number(toks[j], line) != generator.matrix()(l, j)) {
        throw ParseError(line, toks[j].column,
                         "coefficient differs from the public generator");
      }
    }
  }
  in.expect_end();
  return Query(std::move(groups), std::move(generator));
}

std::string serialize_answer(const Answer& answer) {
  const FieldMatrix& z = answer.coded();
  std::string out = header("IPIR-A", answer.group_count(), answer.dimension(),
                           answer.symbols(), z.field().order());
  for (std::size_t r = 0; r < z.rows(); ++r) append_row(out, z, r);
  return out;
}

Answer parse_answer(std::string_view text) {
  LineReader in(text);
  const auto h = parse_header(in, "IPIR-A", 4);
  const std::uint64_t p = h[0], d = h[1], n = h[2];
  if (p == 0 || d == 0 || n == 0) {
    throw ParseError(1, 0, "P, d and n must be positive");
  }
  require_body_fits(text, {p, d, n});
  const PrimeField field = header_field(h[3], 0);
  FieldMatrix z = parse_symbol_rows(in, field, p * d, n, "answer row");
  in.expect_end();
  return Answer(p, d, std::move(z));
}

}  // namespace ipir
