#include "minutes/http_server.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <httplib.h>

#include "minutes/service.hpp"

namespace minutes::api {
namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kMeetingPath = "/meetings/([A-Za-z0-9._-]+)";

void send_json(httplib::Response& res, int status, const json::json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, http_status(e.code()),
            {{"error", errc_name(e.code())}, {"message", e.what()}});
}

std::optional<std::string> param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

std::string required_param(const httplib::Request& req, const char* key) {
  auto value = param(req, key);
  if (!value || value->empty()) {
    throw Error(Errc::kMalformedRequest, std::string("missing query parameter '") + key + "'");
  }
  return *value;
}

bool flag_param(const httplib::Request& req, const char* key) {
  auto value = param(req, key);
  return value && (*value == "1" || *value == "true" || *value == "yes");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// Runs a handler, turning minutes::Error into a JSON error response.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    }
  };
}

}  // namespace

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::kNotFound:
    case Errc::kUnknownVersion:
    case Errc::kNoMedia:
      return 404;
    case Errc::kConflict:
      return 409;
    case Errc::kRangeNotSatisfiable:
      return 416;
    case Errc::kMalformedRequest:
      return 400;
    case Errc::kIoFailure:
      return 500;
    default:
      return 422;
  }
}

HttpServer::HttpServer(Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& svr = *server_;
  svr.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  svr.Get("/meetings", guarded([this](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, service_.list());
          }));

  svr.Get(kMeetingPath, guarded([this](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, service_.get_meeting(req.matches[1]));
          }));

  svr.Get(std::string(kMeetingPath) + "/view",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
            ViewQuery query{param(req, "t"), param(req, "s"), param(req, "annotator")};
            send_json(res, 200, service_.get_view(req.matches[1], query));
          }));

  svr.Post(std::string(kMeetingPath) + "/mutations",
           guarded([this](const httplib::Request& req, httplib::Response& res) {
             const std::string id = req.matches[1];
             auto body = json::json::parse(req.body, nullptr, false);
             if (body.is_discarded() || !body.is_object()) {
               throw Error(Errc::kMalformedRequest, "request body must be a JSON object");
             }
             auto expected = body.find("expected_revision");
             if (expected == body.end() || !expected->is_number_unsigned()) {
               throw Error(Errc::kMalformedRequest,
                           "'expected_revision' must be a non-negative integer");
             }
             auto ops = body.contains("ops") ? body["ops"] : json::json::array();
             auto outcome = service_.mutate(id, expected->get<std::uint64_t>(), ops);
             switch (outcome.status) {
               case MutationOutcome::Status::kApplied:
                 send_json(res, 200,
                           {{"revision", outcome.revision}, {"results", outcome.results}});
                 break;
               case MutationOutcome::Status::kConflict:
                 send_json(res, 409,
                           {{"error", "Conflict"},
                            {"current_revision", outcome.revision},
                            {"message", outcome.reason}});
                 break;
               case MutationOutcome::Status::kRejected: {
                 json::json body_out = {{"error", errc_name(outcome.code)},
                                        {"reason", outcome.reason},
                                        {"current_revision", outcome.revision}};
                 body_out["op_index"] =
                     outcome.op_index ? json::json(*outcome.op_index) : json::json(nullptr);
                 send_json(res, outcome.op_index ? 422 : http_status(outcome.code), body_out);
                 break;
               }
             }
           }));

  svr.Get(std::string(kMeetingPath) + "/metrics",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
            MetricsQuery query;
            query.transcript = required_param(req, "t");
            query.summary = required_param(req, "s");
            query.annotators = split_list(param(req, "annotators").value_or(""));
            query.iaa = flag_param(req, "iaa");
            send_json(res, 200, service_.metrics(req.matches[1], query));
          }));

  svr.Get(std::string(kMeetingPath) + "/search",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200,
                      service_.search(req.matches[1], required_param(req, "t"),
                                      required_param(req, "q"), flag_param(req, "case")));
          }));

  // Range handling (206 / Content-Range / 416) is done by httplib on top of
  // the content provider.
  svr.Get(std::string(kMeetingPath) + "/media",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
            MediaFile media = service_.media(req.matches[1]);
            res.set_header("Accept-Ranges", "bytes");
            auto path = media.path;
            res.set_content_provider(
                static_cast<std::size_t>(media.size), media.content_type,
                [path](std::size_t offset, std::size_t length, httplib::DataSink& sink) {
                  std::ifstream in(path, std::ios::binary);
                  if (!in) return false;
                  in.seekg(static_cast<std::streamoff>(offset));
                  std::vector<char> buf(std::min<std::size_t>(length, 64 * 1024));
                  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
                  const auto got = static_cast<std::size_t>(in.gcount());
                  if (got == 0) return false;
                  return sink.write(buf.data(), got);
                });
          }));
}

HttpServer::~HttpServer() = default;

bool HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    return port_ > 0;
  }
  if (!server_->bind_to_port(host, port)) return false;
  port_ = port;
  return true;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace minutes::api
