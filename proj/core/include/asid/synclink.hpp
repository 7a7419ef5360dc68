#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "asid/civil_time.hpp"
#include "asid/sdcard.hpp"

namespace asid::synclink {

enum class Target { Air, Ground };

std::string_view to_string(Target target);
std::string_view file_name(Target target);

inline constexpr std::size_t kChunkSize = 1760;
inline constexpr std::size_t kMaxRequestBytes = 8 * 1024;
inline constexpr std::chrono::milliseconds kDefaultTimeout{10000};

/// AIR iff "air" first occurs past index 5 of the request text.
Target route(std::string_view request_text);

struct HttpFileResponse {
  std::string status_line;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;

  /// Status line, headers and the blank line, all CRLF-terminated.
  std::string header_block() const;
  std::string wire() const { return header_block() + body; }
};

HttpFileResponse make_file_response(std::string_view name, std::string body);

/// Server side of one client connection.
class Connection {
 public:
  virtual ~Connection() = default;
  /// Reads up to `n` bytes; 0 on end of stream.
  virtual std::size_t read(char* buf, std::size_t n) = 0;
  virtual void write(std::string_view bytes) = 0;
  virtual void close() = 0;
};

/// Connection over in-memory buffers that records every write call.
class MemoryConnection final : public Connection {
 public:
  explicit MemoryConnection(std::string input) : input_(std::move(input)) {}

  std::size_t read(char* buf, std::size_t n) override;
  void write(std::string_view bytes) override;
  void close() override { closed_ = true; }

  const std::string& output() const { return output_; }
  const std::vector<std::size_t>& write_sizes() const { return write_sizes_; }
  bool closed() const { return closed_; }

 private:
  std::string input_;
  std::size_t pos_ = 0;
  std::string output_;
  std::vector<std::size_t> write_sizes_;
  bool closed_ = false;
};

/// Writes headers then the file in kChunkSize pieces and closes. Serving the
/// ground file removes both logs. A missing file closes with nothing sent.
bool serve_file(std::string_view name, firmware::SdCardImage& sd, Connection& conn);

/// Reads up to the first LF, routes and serves. Returns the served target, or
/// nothing when the request was incomplete or the file was missing.
std::optional<Target> handle_client(Connection& conn, firmware::SdCardImage& sd);

// ---- client side ----

std::string request_line(Target target);
std::string build_request(Target target);

/// Splits a raw response, checks the status line and returns the body.
/// ProtocolError on a malformed response or a status other than 200.
std::string parse_response(std::string_view raw);

/// Sends one request and returns every byte received until close.
class ClientTransport {
 public:
  virtual ~ClientTransport() = default;
  virtual std::string exchange(std::string_view request) = 0;
};

/// Runs the server handler synchronously against an SD image.
class InProcessTransport final : public ClientTransport {
 public:
  explicit InProcessTransport(firmware::SdCardImage& sd) : sd_(sd) {}
  std::string exchange(std::string_view request) override;

  /// Write sizes of the most recent exchange.
  const std::vector<std::size_t>& last_write_sizes() const { return last_writes_; }

 private:
  firmware::SdCardImage& sd_;
  std::vector<std::size_t> last_writes_;
};

class TcpClientTransport final : public ClientTransport {
 public:
  TcpClientTransport(std::string host, std::uint16_t port,
                     std::chrono::milliseconds timeout = kDefaultTimeout)
      : host_(std::move(host)), port_(port), timeout_(timeout) {}
  std::string exchange(std::string_view request) override;

 private:
  std::string host_;
  std::uint16_t port_;
  std::chrono::milliseconds timeout_;
};

std::string fetch(ClientTransport& transport, Target target);
std::string fetch(const std::string& host, std::uint16_t port, Target target,
                  std::chrono::milliseconds timeout = kDefaultTimeout);

struct SyncResult {
  std::string air;
  std::string ground;
  DateTime fetched_at;
};

/// Fetches AIR, then GROUND. Any failure propagates and nothing is kept.
SyncResult sync(ClientTransport& transport);
SyncResult sync(const std::string& host, std::uint16_t port,
                std::chrono::milliseconds timeout = kDefaultTimeout);

/// Writes air.csv and ground.csv into `dir`, each via a temporary file and rename.
void persist(const SyncResult& result, const std::filesystem::path& dir);

/// Sequential accept-serve loop over TCP.
class FileServer {
 public:
  FileServer(firmware::SdCardImage& sd, std::string bind_address, std::uint16_t port);
  ~FileServer();
  FileServer(const FileServer&) = delete;
  FileServer& operator=(const FileServer&) = delete;

  /// Bound port; resolves port 0 to the ephemeral port chosen by the OS.
  std::uint16_t port() const { return port_; }

  /// Serves until stop() is called.
  void run();
  void start_background();
  void stop();

  std::size_t served() const { return served_.load(); }

 private:
  firmware::SdCardImage& sd_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<std::size_t> served_{0};
  std::thread worker_;
};

}  // namespace asid::synclink
