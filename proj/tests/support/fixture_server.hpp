#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace waccess::testing {

// Local HTTP server for crawler tests. Besides registered pages it serves:
//   /status/<code>   that status with a small body
//   /loop/<n>        302 to /loop/<n+1>, forever
//   /hop/<n>         302 chain that ends in a page after n hops
//   /empty           200 with no body
//   /slow            sleeps 3 s before answering
// Every request is counted; peak() is the largest number handled at once.
class FixtureServer {
 public:
  // Binds `host` on an ephemeral port and starts serving.
  explicit FixtureServer(const std::string& host = "127.0.0.1", int latency_ms = 0);
  ~FixtureServer();
  FixtureServer(const FixtureServer&) = delete;
  FixtureServer& operator=(const FixtureServer&) = delete;

  void add(const std::string& path, std::string body, std::string content_type = "text/html; charset=utf-8");

  [[nodiscard]] int port() const { return port_; }
  [[nodiscard]] std::string url(const std::string& path, const std::string& host = "127.0.0.1") const;
  [[nodiscard]] int peak() const { return peak_.load(); }
  [[nodiscard]] int requests() const { return requests_.load(); }
  [[nodiscard]] std::map<std::string, int> hits_by_host() const;

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  int latency_ms_ = 0;
  std::atomic<int> active_{0};
  std::atomic<int> peak_{0};
  std::atomic<int> requests_{0};
  mutable std::mutex mutex_;
  std::map<std::string, std::pair<std::string, std::string>> pages_;
  std::map<std::string, int> hits_by_host_;
};

}  // namespace waccess::testing
