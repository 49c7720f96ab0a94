#ifndef MINUTES_HTTP_SERVER_HPP_
#define MINUTES_HTTP_SERVER_HPP_

#include <memory>
#include <string>

#include "minutes/error.hpp"

namespace httplib {
class Server;
}

namespace minutes::api {

class Service;

// HTTP status for an error category: 404 for missing things, 409 for
// revision conflicts, 416 for bad ranges, 422 for rejected content, 400 for
// malformed requests.
int http_status(Errc code) noexcept;

// HTTP/1.1 + JSON front end:
//   GET  /meetings
//   GET  /meetings/{id}
//   GET  /meetings/{id}/view?t=&s=&annotator=
//   POST /meetings/{id}/mutations      {"expected_revision": n, "ops": [...]}
//   GET  /meetings/{id}/metrics?t=&s=&annotators=a,b&iaa=1
//   GET  /meetings/{id}/search?t=&q=&case=1
//   GET  /meetings/{id}/media           (Range-capable)
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 binds an ephemeral port. Returns false if the port is taken.
  bool bind(const std::string& host, int port);
  int port() const noexcept { return port_; }

  // Blocks until stop() is called.
  void run();
  void stop();
  void wait_until_ready() const;

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = -1;
};

}  // namespace minutes::api

#endif  // MINUTES_HTTP_SERVER_HPP_
