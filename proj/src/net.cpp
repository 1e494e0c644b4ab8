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

#include "ipir/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <utility>

#include "ipir/wire.hpp"

namespace ipir {

namespace {

constexpr int kPollMillis = 50;
constexpr int kIoTimeoutSeconds = 30;

std::string errno_text(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

void set_io_timeout(int fd) {
  timeval tv{};
  tv.tv_sec = kIoTimeoutSeconds;
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
}

std::uint32_t decode_length(const unsigned char* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

}  // namespace

std::string encode_frame(std::string_view payload) {
  if (payload.size() > kMaxFrameBytes) {
    throw Error("frame payload of " + std::to_string(payload.size()) +
                " bytes exceeds the 64 MiB limit");
  }
  const auto n = static_cast<std::uint32_t>(payload.size());
  std::string out;
  out.reserve(payload.size() + 4);
  out.push_back(static_cast<char>((n >> 24) & 0xff));
  out.push_back(static_cast<char>((n >> 16) & 0xff));
  out.push_back(static_cast<char>((n >> 8) & 0xff));
  out.push_back(static_cast<char>(n & 0xff));
  out.append(payload);
  return out;
}

std::string handle_request(const MessageDb& db, std::string_view payload) {
  try {
    return serialize_answer(compute_answer(parse_query(payload), db));
  } catch (const Error& e) {
    return std::string(kErrorPrefix) + e.what();
  }
}

Socket::Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

Socket::~Socket() {
  if (fd_ >= 0) ::close(fd_);
}

Socket Socket::connect(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
      rc != 0) {
    throw Error("resolve " + host + ": " + ::gai_strerror(rc));
  }
  Socket sock;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    Socket candidate(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!candidate.valid()) continue;
    if (::connect(candidate.fd(), ai->ai_addr, ai->ai_addrlen) == 0) {
      sock = std::move(candidate);
      break;
    }
  }
  ::freeaddrinfo(res);
  if (!sock.valid()) {
    throw Error(errno_text(("connect " + host + ":" + service).c_str()));
  }
  set_io_timeout(sock.fd());
  return sock;
}

void Socket::send_all(std::string_view bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd_, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(errno_text("send"));
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

bool Socket::read_exact(char* out, std::size_t size) {
  while (size > 0) {
    const ssize_t n = ::recv(fd_, out, size, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    out += n;
    size -= static_cast<std::size_t>(n);
  }
  return true;
}

std::optional<std::string> Socket::read_frame(std::size_t max_bytes) {
  unsigned char prefix[4];
  if (!read_exact(reinterpret_cast<char*>(prefix), sizeof prefix)) {
    return std::nullopt;
  }
  const std::uint32_t length = decode_length(prefix);
  if (length > max_bytes) {
    throw Error("frame of " + std::to_string(length) +
                " bytes exceeds the 64 MiB limit");
  }
  std::string payload(length, '\0');
  if (!read_exact(payload.data(), length)) return std::nullopt;
  return payload;
}

Server::Server(MessageDb db, const std::string& host, std::uint16_t port)
    : db_(std::move(db)) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
      rc != 0) {
    throw Error("resolve " + host + ": " + ::gai_strerror(rc));
  }
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    Socket candidate(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!candidate.valid()) continue;
    const int one = 1;
    ::setsockopt(candidate.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(candidate.fd(), ai->ai_addr, ai->ai_addrlen) == 0 &&
        ::listen(candidate.fd(), SOMAXCONN) == 0) {
      listener_ = std::move(candidate);
      break;
    }
  }
  ::freeaddrinfo(res);
  if (!listener_.valid()) {
    throw Error(errno_text(("listen " + host + ":" + service).c_str()));
  }

  sockaddr_storage bound{};
  socklen_t len = sizeof bound;
  ::getsockname(listener_.fd(), reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = bound.ss_family == AF_INET6
              ? ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port)
              : ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
}

Server::~Server() {
  stop();
  std::lock_guard lock(workers_mu_);
  for (std::thread& t : workers_) {
    if (t.joinable()) t.join();
  }
}

void Server::run(std::size_t max_requests) {
  std::size_t served = 0;
  while (!stopping_ && (max_requests == 0 || served < max_requests)) {
    pollfd pfd{listener_.fd(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, kPollMillis);
    if (ready <= 0) continue;
    Socket conn(::accept(listener_.fd(), nullptr, nullptr));
    if (!conn.valid()) continue;
    set_io_timeout(conn.fd());
    ++served;
    std::lock_guard lock(workers_mu_);
    workers_.emplace_back(
        [this](Socket c) { serve_connection(std::move(c)); }, std::move(conn));
  }
  std::lock_guard lock(workers_mu_);
  for (std::thread& t : workers_) {
    if (t.joinable()) t.join();
  }
  workers_.clear();
}

void Server::serve_connection(Socket conn) const {
  try {
    std::optional<std::string> request;
    try {
      request = conn.read_frame();
    } catch (const Error& e) {
      conn.write_frame(std::string(kErrorPrefix) + e.what());
      return;
    }
    if (!request) {
      conn.write_frame(std::string(kErrorPrefix) + "truncated frame");
      return;
    }
    conn.write_frame(handle_request(db_, *request));
  } catch (const Error&) {
    // Peer went away; nothing left to report to it.
  }
}

std::string fetch(const std::string& host, std::uint16_t port,
                  std::string_view query_payload) {
  Socket sock = Socket::connect(host, port);
  sock.write_frame(query_payload);
  std::optional<std::string> reply = sock.read_frame();
  if (!reply) throw Error("connection closed before a full reply arrived");
  if (reply->starts_with(kErrorPrefix)) {
    throw RemoteError(reply->substr(kErrorPrefix.size()));
  }
  return *std::move(reply);
}

}  // namespace ipir
