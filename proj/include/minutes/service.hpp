#ifndef MINUTES_SERVICE_HPP_
#define MINUTES_SERVICE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "minutes/error.hpp"
#include "minutes/json.hpp"
#include "minutes/meeting.hpp"

namespace minutes::api {

struct ViewQuery {
  std::optional<std::string> transcript;
  std::optional<std::string> summary;
  std::optional<std::string> annotator;
};

struct MetricsQuery {
  std::string transcript;
  std::string summary;
  std::vector<std::string> annotators;
  bool iaa = false;
};

struct MutationOutcome {
  enum class Status { kApplied, kConflict, kRejected };
  Status status = Status::kApplied;
  // New revision when applied; the server's current revision otherwise.
  std::uint64_t revision = 0;
  json::json results = json::json::array();
  // kRejected only.
  std::optional<std::size_t> op_index;
  Errc code = Errc::kMalformedRequest;
  std::string reason;
};

struct MediaFile {
  std::filesystem::path path;
  std::uintmax_t size = 0;
  std::string content_type;
};

// Transport-independent service over a corpus directory (or a single meeting
// directory). Reads share a per-meeting lock; mutations take it exclusively,
// apply their commands to a copy, persist the copy and only then publish it.
// Lookup failures throw minutes::Error (kNotFound, kUnknownVersion, ...).
class Service {
 public:
  explicit Service(std::filesystem::path corpus);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  std::vector<std::string> meeting_ids() const;
  json::json list() const;
  json::json get_meeting(const std::string& id) const;
  json::json get_view(const std::string& id, const ViewQuery& query);
  MutationOutcome mutate(const std::string& id, std::uint64_t expected_revision,
                         const json::json& ops);
  json::json metrics(const std::string& id, const MetricsQuery& query) const;
  json::json search(const std::string& id, const std::string& transcript,
                    const std::string& pattern, bool case_sensitive) const;
  MediaFile media(const std::string& id) const;

  std::uint64_t revision(const std::string& id) const;
  std::filesystem::path meeting_root(const std::string& id) const;

 private:
  struct Entry;
  Entry& entry(const std::string& id) const;

  std::filesystem::path corpus_;
  std::map<std::string, std::unique_ptr<Entry>, std::less<>> meetings_;
};

}  // namespace minutes::api

#endif  // MINUTES_SERVICE_HPP_
