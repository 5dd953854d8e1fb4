#pragma once

#include <memory>
#include <string>

#include "holocity/api/service.hpp"

namespace holocity::api {

// HTTP/1.1 front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  // Binds host:port (port 0 picks a free one) and returns the bound port,
  // or -1 on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(). Returns false if the listener failed.
  bool run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace holocity::api
