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

#ifndef IPIR_WIRE_HPP_
#define IPIR_WIRE_HPP_

#include <string>
#include <string_view>

#include "ipir/protocol.hpp"

namespace ipir {

// Canonical text artifacts. Every line ends in '\n', tokens are separated by
// exactly one space, numbers are plain decimal without leading zeros. Parsers
// accept only this form and throw ParseError (1-based line, column) on
// anything else, so parse followed by serialize reproduces the input bytes.
//
//   IPIR-DB v1 K n q       then K lines of n symbols
//   IPIR-Q v1 K P T d q    then P lines of T ascending indices, d lines of V
//   IPIR-A v1 P d n q      then P*d lines of n symbols, group-major

std::string serialize_db(const MessageDb& db);
MessageDb parse_db(std::string_view text);

std::string serialize_query(const Query& query);
// Also checks that the groups partition [K] and that V equals the public
// generator for (T, d, q).
Query parse_query(std::string_view text);

std::string serialize_answer(const Answer& answer);
Answer parse_answer(std::string_view text);

}  // namespace ipir

#endif  // IPIR_WIRE_HPP_
