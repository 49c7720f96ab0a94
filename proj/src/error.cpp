#include "minutes/error.hpp"

namespace minutes {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kUnknownVersion: return "UnknownVersion";
    case Errc::kDuplicateVersion: return "DuplicateVersion";
    case Errc::kInvalidName: return "InvalidName";
    case Errc::kUnknownDa: return "UnknownDa";
    case Errc::kUnknownPoint: return "UnknownPoint";
    case Errc::kOffsetOutOfRange: return "OffsetOutOfRange";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kNotAdjacent: return "NotAdjacent";
    case Errc::kSpeakerMismatch: return "SpeakerMismatch";
    case Errc::kConflictingAlignment: return "ConflictingAlignment";
    case Errc::kInvalidTimes: return "InvalidTimes";
    case Errc::kInvalidSpeaker: return "InvalidSpeaker";
    case Errc::kInvalidIndentSymbol: return "InvalidIndentSymbol";
    case Errc::kInvalidScore: return "InvalidScore";
    case Errc::kInvalidPattern: return "InvalidPattern";
    case Errc::kEmptyTranscript: return "EmptyTranscript";
    case Errc::kVersionMismatch: return "VersionMismatch";
    case Errc::kTooFewAnnotators: return "TooFewAnnotators";
    case Errc::kUnknownAnnotator: return "UnknownAnnotator";
    case Errc::kIoFailure: return "IoFailure";
    case Errc::kEmptyDaText: return "EmptyDaText";
    case Errc::kMissingFile: return "MissingFile";
    case Errc::kParseError: return "ParseError";
    case Errc::kDanglingReference: return "DanglingReference";
    case Errc::kAlreadyExists: return "AlreadyExists";
    case Errc::kNotFound: return "NotFound";
    case Errc::kConflict: return "Conflict";
    case Errc::kMalformedRequest: return "MalformedRequest";
    case Errc::kNoMedia: return "NoMedia";
    case Errc::kRangeNotSatisfiable: return "RangeNotSatisfiable";
  }
  return "Unknown";
}

}  // namespace minutes
