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

#ifndef IPIR_NET_HPP_
#define IPIR_NET_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ipir/errors.hpp"
#include "ipir/protocol.hpp"

namespace ipir {

// Frame = 4-byte big-endian payload length, then the payload. A request
// carries a QueryFile, the reply an AnswerFile or an error payload starting
// with "ERR ". One request per connection.
inline constexpr std::size_t kMaxFrameBytes = std::size_t{64} << 20;
inline constexpr std::string_view kErrorPrefix = "ERR ";

// The server replied with an error frame.
class RemoteError : public Error {
 public:
  using Error::Error;
};

std::string encode_frame(std::string_view payload);

// Server-side work for one request: parse the query, answer it from `db`,
// serialize. Failures become an error payload.
std::string handle_request(const MessageDb& db, std::string_view payload);

// Owning TCP socket.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) noexcept : fd_(fd) {}
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket();

  static Socket connect(const std::string& host, std::uint16_t port);

  int fd() const noexcept { return fd_; }
  bool valid() const noexcept { return fd_ >= 0; }

  // Throws Error on failure.
  void send_all(std::string_view bytes);
  // False on EOF or error before `size` bytes arrived.
  bool read_exact(char* out, std::size_t size);

  // Reads one frame. Returns nullopt on a truncated frame; throws Error if the
  // announced length exceeds max_bytes (nothing beyond the prefix is read).
  std::optional<std::string> read_frame(std::size_t max_bytes = kMaxFrameBytes);
  void write_frame(std::string_view payload) { send_all(encode_frame(payload)); }

 private:
  int fd_ = -1;
};

// Answers queries against an immutable database, one thread per connection.
// The handler sees only the request bytes.
class Server {
 public:
  // Binds and listens; port 0 picks an ephemeral port.
  Server(MessageDb db, const std::string& host, std::uint16_t port);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const noexcept { return port_; }

  // Accept loop; returns after stop() or once `max_requests` connections
  // (0 = unlimited) have been served.
  void run(std::size_t max_requests = 0);
  void stop() noexcept { stopping_ = true; }

 private:
  void serve_connection(Socket conn) const;

  const MessageDb db_;
  Socket listener_;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex workers_mu_;
  std::vector<std::thread> workers_;
};

// Sends a QueryFile payload and returns the AnswerFile payload. Throws
// RemoteError on an error frame and Error on transport failures.
std::string fetch(const std::string& host, std::uint16_t port,
                  std::string_view query_payload);

}  // namespace ipir

#endif  // IPIR_NET_HPP_
