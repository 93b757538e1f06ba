#pragma once

#include <memory>
#include <string>
#include <thread>

#include "gateway/service.hpp"

namespace httplib {
class Server;
}

namespace esp2cs::gateway {

/// Serves a Service over HTTP on a background thread.
class HttpServer {
public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free one) and starts serving.
  /// Returns the bound port; throws Error when binding fails.
  int start(const std::string& host, int port);
  void stop();
  [[nodiscard]] int port() const { return port_; }

private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace esp2cs::gateway
