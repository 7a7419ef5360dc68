#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "asid/error.hpp"
#include "asid/synclink.hpp"

namespace asid::synclink {

namespace {

using Clock = std::chrono::steady_clock;

std::string errno_text() { return std::strerror(errno); }

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() > 0 ? static_cast<int>(left.count()) : 0;
}

bool wait_for(int fd, short events, Clock::time_point deadline) {
  pollfd p{fd, events, 0};
  while (true) {
    const int rc = ::poll(&p, 1, remaining_ms(deadline));
    if (rc > 0) return true;
    if (rc == 0) return false;
    if (errno != EINTR) throw TransportError("poll: " + errno_text());
  }
}

void send_all(int fd, std::string_view bytes, Clock::time_point deadline) {
  while (!bytes.empty()) {
    if (!wait_for(fd, POLLOUT, deadline)) throw TransportError("send timed out");
    const ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw TransportError("send: " + errno_text());
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

class TcpConnection final : public Connection {
 public:
  TcpConnection(int fd, std::chrono::milliseconds timeout) : fd_(fd), timeout_(timeout) {}
  ~TcpConnection() override { close(); }

  std::size_t read(char* buf, std::size_t n) override {
    if (fd_ < 0) return 0;
    if (!wait_for(fd_, POLLIN, Clock::now() + timeout_)) return 0;
    const ssize_t got = ::recv(fd_, buf, n, 0);
    return got > 0 ? static_cast<std::size_t>(got) : 0;
  }

  void write(std::string_view bytes) override {
    if (fd_ >= 0) send_all(fd_, bytes, Clock::now() + timeout_);
  }

  void close() override {
    if (fd_ < 0) return;
    // Half-close and drain so unread request bytes do not turn into a reset
    // that could discard the response still in flight.
    ::shutdown(fd_, SHUT_WR);
    char sink[256];
    const auto deadline = Clock::now() + std::chrono::milliseconds(500);
    while (wait_for(fd_, POLLIN, deadline) && ::recv(fd_, sink, sizeof sink, 0) > 0) {
    }
    ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
  std::chrono::milliseconds timeout_;
};

}  // namespace

std::string TcpClientTransport::exchange(std::string_view request) {
  const auto deadline = Clock::now() + timeout_;

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port_str = std::to_string(port_);
  if (const int rc = ::getaddrinfo(host_.c_str(), port_str.c_str(), &hints, &res); rc != 0) {
    throw TransportError("resolve " + host_ + ": " + ::gai_strerror(rc));
  }

  std::string last_error = "no address";
  int connected = -1;
  for (addrinfo* ai = res; ai != nullptr && connected < 0; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_NONBLOCK, ai->ai_protocol);
    if (fd < 0) {
      last_error = errno_text();
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      connected = fd;
      break;
    }
    if (errno == EINPROGRESS && wait_for(fd, POLLOUT, deadline)) {
      int err = 0;
      socklen_t len = sizeof err;
      ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
      if (err == 0) {
        connected = fd;
        break;
      }
      last_error = std::strerror(err);
    } else {
      last_error = errno == EINPROGRESS ? "connect timed out" : errno_text();
    }
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (connected < 0) {
    throw TransportError("connect " + host_ + ":" + port_str + ": " + last_error);
  }

  Fd sock(connected);
  send_all(sock.get(), request, deadline);

  std::string response;
  char buf[4096];
  while (true) {
    if (!wait_for(sock.get(), POLLIN, deadline)) throw TransportError("read timed out");
    const ssize_t n = ::recv(sock.get(), buf, sizeof buf, 0);
    if (n == 0) break;
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw TransportError("recv: " + errno_text());
    }
    response.append(buf, static_cast<std::size_t>(n));
  }
  return response;
}

FileServer::FileServer(firmware::SdCardImage& sd, std::string bind_address, std::uint16_t port)
    : sd_(sd) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, bind_address.c_str(), &addr.sin_addr) != 1) {
    throw TransportError("invalid IPv4 bind address: " + bind_address);
  }
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listen_fd_ < 0) throw TransportError("socket: " + errno_text());
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 4) != 0) {
    const std::string err = errno_text();
    ::close(listen_fd_);
    throw TransportError("bind " + bind_address + ":" + std::to_string(port) + ": " + err);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

FileServer::~FileServer() {
  stop();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void FileServer::run() {
  while (!stop_.load()) {
    pollfd p{listen_fd_, POLLIN, 0};
    const int rc = ::poll(&p, 1, 50);
    if (rc < 0 && errno != EINTR) throw TransportError("poll: " + errno_text());
    if (rc <= 0) continue;
    const int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) continue;
    TcpConnection conn(fd, kDefaultTimeout);
    try {
      if (handle_client(conn, sd_)) served_.fetch_add(1);
    } catch (const TransportError&) {
      // A client that vanishes mid-transfer only ends its own connection.
    }
  }
}

void FileServer::start_background() {
  worker_ = std::thread([this] { run(); });
}

void FileServer::stop() {
  stop_.store(true);
  if (worker_.joinable()) worker_.join();
}

}  // namespace asid::synclink
