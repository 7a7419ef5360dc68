#include <gtest/gtest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>

#include "asid/error.hpp"
#include "asid/synclink.hpp"
#include "unit/test_util.hpp"

using namespace asid;
using namespace asid::synclink;
using firmware::SdCardImage;

namespace {

// Literal re-evaluation of the station's condition, written independently:
// String::indexOf returns -1 when absent.
int index_of(const std::string& hay, const std::string& needle) {
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    if (hay.compare(i, needle.size(), needle) == 0) return static_cast<int>(i);
  }
  return -1;
}

SdCardImage card(std::string air, std::string ground) {
  SdCardImage sd;
  sd.write(firmware::kAirFile, air);
  sd.write(firmware::kGroundFile, ground);
  return sd;
}

std::string rows(std::size_t bytes) {
  std::string s;
  for (std::size_t i = 0; s.size() < bytes; ++i) s += "row " + std::to_string(i) + ",\r\n";
  s.resize(bytes);
  return s;
}

const char* kAirHeaders =
    "HTTP/1.1 200 OK\r\n"
    "Content-Type: text/csv\r\n"
    "Content-Disposition: attachment; filename=\"air.csv\"\r\n"
    "Connection: close\r\n"
    "\r\n";

}  // namespace

TEST(Route, LiteralExamples) {
  EXPECT_EQ(route("GET /download/air.csv HTTP/1.1\n"), Target::Air);
  EXPECT_EQ(route("GET /ground HTTP/1.1\n"), Target::Ground);
  EXPECT_EQ(route("GET /air.csv HTTP/1.1\n"), Target::Ground);
  EXPECT_EQ(route("GET /xair.csv HTTP/1.1\n"), Target::Air);
  EXPECT_EQ(route(""), Target::Ground);
  EXPECT_EQ(route("air"), Target::Ground);
}

TEST(Route, FuzzAgainstIndependentEvaluation) {
  test::Gen gen(99);
  const std::string alphabet = "GETairdownload/ .csvHTP1\r";
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    const int n = gen.integer(0, 40);
    for (int k = 0; k < n; ++k) {
      s += gen.integer(0, 3) == 0 ? static_cast<char>(gen.integer(32, 126))
                                  : alphabet[gen.integer(0, static_cast<int>(alphabet.size()) - 1)];
    }
    const Target expected = index_of(s, "air") > 5 ? Target::Air : Target::Ground;
    ASSERT_EQ(route(s), expected) << s;
  }
}

TEST(ServeFile, HeaderBlockAndChunks) {
  auto sd = card(rows(3521), "g");
  MemoryConnection conn("GET /download/air.csv HTTP/1.1\r\n\r\n");
  ASSERT_EQ(handle_client(conn, sd), Target::Air);
  EXPECT_TRUE(conn.closed());
  EXPECT_EQ(conn.output(), std::string(kAirHeaders) + rows(3521));
  const std::vector<std::size_t> expected{17, 24, 53, 19, 2, 1760, 1760, 1};
  EXPECT_EQ(conn.write_sizes(), expected);
  // Air files stay on the card.
  EXPECT_TRUE(sd.exists(firmware::kAirFile));
  EXPECT_TRUE(sd.exists(firmware::kGroundFile));
}

TEST(ServeFile, ResponseObjectMatchesWire) {
  const auto r = make_file_response("air.csv", "abc");
  EXPECT_EQ(r.header_block(), kAirHeaders);
  EXPECT_EQ(r.wire(), std::string(kAirHeaders) + "abc");
  ASSERT_EQ(r.headers.size(), 3u);
  EXPECT_EQ(r.headers[0].first, "Content-Type");
  EXPECT_EQ(r.headers[1].first, "Content-Disposition");
  EXPECT_EQ(r.headers[2].first, "Connection");
}

TEST(ServeFile, ChunkingPreservesContent) {
  for (std::size_t size : {0u, 1u, 1759u, 1760u, 1761u, 3520u, 3521u, 10000u}) {
    auto sd = card(rows(size), "g");
    MemoryConnection conn("GET /download/air.csv HTTP/1.1\n");
    handle_client(conn, sd);
    const auto& w = conn.write_sizes();
    ASSERT_GE(w.size(), 5u);
    std::size_t total = 0;
    for (std::size_t i = 5; i < w.size(); ++i) {
      EXPECT_LE(w[i], kChunkSize);
      if (i + 1 < w.size()) EXPECT_EQ(w[i], kChunkSize);
      total += w[i];
    }
    EXPECT_EQ(total, size);
    EXPECT_EQ(w.size() - 5, (size + kChunkSize - 1) / kChunkSize);
    EXPECT_EQ(parse_response(conn.output()), rows(size));
  }
}

TEST(ServeFile, GroundRemovesBothFiles) {
  auto sd = card("a", "g");
  MemoryConnection conn("GET /ground.csv HTTP/1.1\r\n\r\n");
  ASSERT_EQ(handle_client(conn, sd), Target::Ground);
  EXPECT_FALSE(sd.exists(firmware::kAirFile));
  EXPECT_FALSE(sd.exists(firmware::kGroundFile));
  MemoryConnection again("GET /download/air.csv HTTP/1.1\r\n\r\n");
  EXPECT_FALSE(handle_client(again, sd).has_value());
  EXPECT_TRUE(again.output().empty());
  EXPECT_TRUE(again.closed());
}

TEST(ServeFile, IncompleteRequestGetsNothing) {
  auto sd = card("a", "g");
  MemoryConnection conn("GET /download/air.csv HTTP/1.1");
  EXPECT_FALSE(handle_client(conn, sd).has_value());
  EXPECT_TRUE(conn.output().empty());
  MemoryConnection huge(std::string(kMaxRequestBytes + 10, 'x') + "\n");
  EXPECT_FALSE(handle_client(huge, sd).has_value());
  EXPECT_TRUE(huge.output().empty());
  EXPECT_TRUE(sd.exists(firmware::kGroundFile));
}

TEST(Client, RequestLines) {
  EXPECT_EQ(build_request(Target::Air), "GET /download/air.csv HTTP/1.1\r\n\r\n");
  EXPECT_EQ(build_request(Target::Ground), "GET /ground.csv HTTP/1.1\r\n\r\n");
  EXPECT_EQ(route(request_line(Target::Air)), Target::Air);
  EXPECT_EQ(route(request_line(Target::Ground)), Target::Ground);
}

TEST(Client, ParseResponse) {
  EXPECT_EQ(parse_response(std::string(kAirHeaders) + "body"), "body");
  EXPECT_EQ(parse_response(kAirHeaders), "");
  EXPECT_THROW(parse_response(""), ProtocolError);
  EXPECT_THROW(parse_response("HTTP/1.1 404 Not Found\r\n\r\n"), ProtocolError);
  EXPECT_THROW(parse_response("HTTP/1.1 200 OK\r\nContent-Type: text/csv\r\n"), ProtocolError);
}

TEST(InProcess, AirThenGround) {
  const auto air = rows(3521), ground = rows(300);
  auto sd = card(air, ground);
  InProcessTransport t(sd);
  EXPECT_EQ(fetch(t, Target::Air), air);
  EXPECT_EQ(t.last_write_sizes().back(), 1u);
  EXPECT_EQ(fetch(t, Target::Ground), ground);
  EXPECT_THROW(fetch(t, Target::Air), ProtocolError);
}

TEST(InProcess, GroundFirstBreaksAir) {
  auto sd = card("a", "g");
  InProcessTransport t(sd);
  EXPECT_EQ(fetch(t, Target::Ground), "g");
  EXPECT_THROW(fetch(t, Target::Air), ProtocolError);
}

TEST(InProcess, EmptyAirFile) {
  auto sd = card("", "g");
  InProcessTransport t(sd);
  const auto raw = t.exchange(build_request(Target::Air));
  EXPECT_EQ(raw, kAirHeaders);
  EXPECT_EQ(fetch(t, Target::Air), "");
}

TEST(Sync, SucceedsExactlyOnce) {
  auto sd = card("air-bytes", "ground-bytes");
  InProcessTransport t(sd);
  const auto r = sync(t);
  EXPECT_EQ(r.air, "air-bytes");
  EXPECT_EQ(r.ground, "ground-bytes");
  EXPECT_THROW(sync(t), ProtocolError);
}

TEST(Sync, OrderingProperty) {
  // Of all fetch orders over the two files, only AIR then GROUND yields both.
  const std::vector<std::vector<Target>> orders = {
      {Target::Air, Target::Ground}, {Target::Ground, Target::Air},
      {Target::Ground, Target::Ground}, {Target::Air, Target::Air}};
  for (std::size_t k = 0; k < orders.size(); ++k) {
    auto sd = card("A", "G");
    InProcessTransport t(sd);
    bool got_air = false, got_ground = false;
    for (auto target : orders[k]) {
      try {
        const auto body = fetch(t, target);
        (target == Target::Air ? got_air : got_ground) = true;
        EXPECT_EQ(body, target == Target::Air ? "A" : "G");
      } catch (const ProtocolError&) {
      }
    }
    EXPECT_EQ(got_air && got_ground, k == 0) << k;
  }
}

TEST(Sync, PersistWritesBothFiles) {
  test::TempDir dir("persist");
  SyncResult r{"air", "ground", {}};
  persist(r, dir.path() / "out");
  EXPECT_EQ(test::read_file(dir.path() / "out" / "air.csv"), "air");
  EXPECT_EQ(test::read_file(dir.path() / "out" / "ground.csv"), "ground");
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "out" / "air.csv.part"));
}

TEST(Tcp, LoopbackSyncIsByteIdentical) {
  const auto air = rows(3521), ground = rows(777);
  auto sd = card(air, ground);
  FileServer server(sd, "127.0.0.1", 0);
  ASSERT_GT(server.port(), 0);
  server.start_background();
  const auto r = sync("127.0.0.1", server.port(), std::chrono::milliseconds(2000));
  server.stop();
  EXPECT_EQ(r.air, air);
  EXPECT_EQ(r.ground, ground);
  EXPECT_EQ(server.served(), 2u);
  EXPECT_FALSE(sd.exists(firmware::kAirFile));
}

TEST(Tcp, WireMatchesTemplate) {
  auto sd = card(rows(1800), "g");
  FileServer server(sd, "127.0.0.1", 0);
  server.start_background();
  TcpClientTransport t("127.0.0.1", server.port(), std::chrono::milliseconds(2000));
  const auto raw = t.exchange(build_request(Target::Air));
  server.stop();
  EXPECT_EQ(raw, std::string(kAirHeaders) + rows(1800));
}

TEST(Tcp, RefusedConnectionIsTransportError) {
  std::uint16_t port = 0;
  {
    SdCardImage sd;
    FileServer probe(sd, "127.0.0.1", 0);
    port = probe.port();
  }
  EXPECT_THROW(fetch("127.0.0.1", port, Target::Air, std::chrono::milliseconds(500)),
               TransportError);
  EXPECT_THROW(sync("127.0.0.1", port, std::chrono::milliseconds(500)), TransportError);
}

TEST(Tcp, SilentServerTimesOut) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  ASSERT_GE(fd, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  ASSERT_EQ(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr), 0);
  ASSERT_EQ(::listen(fd, 4), 0);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  const auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(fetch("127.0.0.1", ntohs(addr.sin_port), Target::Air, std::chrono::milliseconds(300)),
               TransportError);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(3));
  ::close(fd);
}

TEST(Tcp, BadBindAddress) {
  SdCardImage sd;
  EXPECT_THROW(FileServer(sd, "not-an-ip", 0), TransportError);
}
