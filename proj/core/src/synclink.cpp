#include "asid/synclink.hpp"

#include <chrono>
#include <fstream>

#include "asid/error.hpp"

namespace asid::synclink {

std::string_view to_string(Target target) { return target == Target::Air ? "AIR" : "GROUND"; }

std::string_view file_name(Target target) {
  return target == Target::Air ? firmware::kAirFile : firmware::kGroundFile;
}

Target route(std::string_view request_text) {
  // indexOf returns -1 when absent, which also fails the test.
  const auto pos = request_text.find("air");
  return pos != std::string_view::npos && pos > 5 ? Target::Air : Target::Ground;
}

std::string HttpFileResponse::header_block() const {
  std::string out = status_line + "\r\n";
  for (const auto& [k, v] : headers) out += k + ": " + v + "\r\n";
  out += "\r\n";
  return out;
}

HttpFileResponse make_file_response(std::string_view name, std::string body) {
  HttpFileResponse r;
  r.status_line = "HTTP/1.1 200 OK";
  r.headers = {
      {"Content-Type", "text/csv"},
      {"Content-Disposition", "attachment; filename=\"" + std::string(name) + "\""},
      {"Connection", "close"},
  };
  r.body = std::move(body);
  return r;
}

std::size_t MemoryConnection::read(char* buf, std::size_t n) {
  const std::size_t k = std::min(n, input_.size() - pos_);
  input_.copy(buf, k, pos_);
  pos_ += k;
  return k;
}

void MemoryConnection::write(std::string_view bytes) {
  output_.append(bytes);
  write_sizes_.push_back(bytes.size());
}

bool serve_file(std::string_view name, firmware::SdCardImage& sd, Connection& conn) {
  const auto body = sd.read(name);
  if (!body) {
    conn.close();
    return false;
  }
  const auto response = make_file_response(name, {});
  conn.write(response.status_line + "\r\n");
  for (const auto& [k, v] : response.headers) conn.write(k + ": " + v + "\r\n");
  conn.write("\r\n");

  const std::string_view data = *body;
  for (std::size_t off = 0; off < data.size(); off += kChunkSize) {
    conn.write(data.substr(off, kChunkSize));
  }
  conn.close();

  if (name == firmware::kGroundFile) {
    sd.remove(firmware::kAirFile);
    sd.remove(firmware::kGroundFile);
  }
  return true;
}

std::optional<Target> handle_client(Connection& conn, firmware::SdCardImage& sd) {
  std::string request;
  char buf[512];
  while (request.size() < kMaxRequestBytes) {
    const std::size_t n = conn.read(buf, std::min(sizeof buf, kMaxRequestBytes - request.size()));
    if (n == 0) break;
    const std::string_view chunk(buf, n);
    const auto lf = chunk.find('\n');
    if (lf != std::string_view::npos) {
      request.append(chunk.substr(0, lf + 1));
      const Target target = route(request);
      if (serve_file(file_name(target), sd, conn)) return target;
      return std::nullopt;
    }
    request.append(chunk);
  }
  conn.close();
  return std::nullopt;
}

std::string request_line(Target target) {
  return target == Target::Air ? "GET /download/air.csv HTTP/1.1" : "GET /ground.csv HTTP/1.1";
}

std::string build_request(Target target) { return request_line(target) + "\r\n\r\n"; }

std::string parse_response(std::string_view raw) {
  const auto end = raw.find("\r\n\r\n");
  if (end == std::string_view::npos) {
    throw ProtocolError(raw.empty() ? "empty response (file missing on the station?)"
                                    : "response has no header terminator");
  }
  const auto eol = raw.find("\r\n");
  const auto status = raw.substr(0, eol);
  if (status != "HTTP/1.1 200 OK") {
    throw ProtocolError("unexpected status line: '" + std::string(status) + "'");
  }
  return std::string(raw.substr(end + 4));
}

std::string InProcessTransport::exchange(std::string_view request) {
  MemoryConnection conn{std::string(request)};
  handle_client(conn, sd_);
  last_writes_ = conn.write_sizes();
  return conn.output();
}

std::string fetch(ClientTransport& transport, Target target) {
  return parse_response(transport.exchange(build_request(target)));
}

std::string fetch(const std::string& host, std::uint16_t port, Target target,
                  std::chrono::milliseconds timeout) {
  TcpClientTransport transport(host, port, timeout);
  return fetch(transport, target);
}

namespace {
DateTime utc_now() {
  const auto now = std::chrono::system_clock::now();
  return DateTime::from_epoch_seconds(
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count());
}
}  // namespace

SyncResult sync(ClientTransport& transport) {
  SyncResult result;
  result.air = fetch(transport, Target::Air);
  result.ground = fetch(transport, Target::Ground);
  result.fetched_at = utc_now();
  return result;
}

SyncResult sync(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout) {
  TcpClientTransport transport(host, port, timeout);
  return sync(transport);
}

void persist(const SyncResult& result, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw TransportError("cannot create " + dir.string() + ": " + ec.message());

  const std::pair<std::string_view, const std::string*> files[] = {
      {firmware::kAirFile, &result.air}, {firmware::kGroundFile, &result.ground}};
  std::vector<std::pair<fs::path, fs::path>> staged;
  for (const auto& [name, bytes] : files) {
    const fs::path final_path = dir / name;
    fs::path tmp = final_path;
    tmp += ".part";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes->data(), static_cast<std::streamsize>(bytes->size()));
    out.close();
    if (!out) {
      for (const auto& s : staged) fs::remove(s.first, ec);
      fs::remove(tmp, ec);
      throw TransportError("cannot write " + tmp.string());
    }
    staged.emplace_back(tmp, final_path);
  }
  for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

}  // namespace asid::synclink
