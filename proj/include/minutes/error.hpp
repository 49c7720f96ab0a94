#ifndef MINUTES_ERROR_HPP_
#define MINUTES_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace minutes {

// Failure categories shared by every layer. The name of each enumerator is
// what shows up in JSON error bodies and CLI diagnostics.
enum class Errc {
  // core
  kUnknownVersion,
  kDuplicateVersion,
  kInvalidName,
  kUnknownDa,
  kUnknownPoint,
  kOffsetOutOfRange,
  kIndexOutOfRange,
  kNotAdjacent,
  kSpeakerMismatch,
  kConflictingAlignment,
  kInvalidTimes,
  kInvalidSpeaker,
  kInvalidIndentSymbol,
  kInvalidScore,
  kInvalidPattern,
  // metrics
  kEmptyTranscript,
  kVersionMismatch,
  kTooFewAnnotators,
  kUnknownAnnotator,
  // store
  kIoFailure,
  kEmptyDaText,
  kMissingFile,
  kParseError,
  kDanglingReference,
  kAlreadyExists,
  // api
  kNotFound,
  kConflict,
  kMalformedRequest,
  kNoMedia,
  kRangeNotSatisfiable,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace minutes

#endif  // MINUTES_ERROR_HPP_
