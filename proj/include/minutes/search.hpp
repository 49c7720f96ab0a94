#ifndef MINUTES_SEARCH_HPP_
#define MINUTES_SEARCH_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "minutes/meeting.hpp"

namespace minutes {

// Patterns use the ECMAScript grammar of std::regex, applied to the UTF-8
// bytes of each DA text. Case-insensitive matching folds ASCII only.
inline constexpr std::string_view kRegexDialect = "ECMAScript (std::regex)";

struct SearchMatch {
  DaId da;
  std::size_t begin = 0;  // code points, half-open
  std::size_t end = 0;
  bool operator==(const SearchMatch&) const = default;
};

// Matches in transcript order, then left to right; leftmost-first and
// non-overlapping within each DA. Throws Errc::kInvalidPattern.
std::vector<SearchMatch> search(const TranscriptVersion& transcript,
                                std::string_view pattern, bool case_sensitive);

}  // namespace minutes

#endif  // MINUTES_SEARCH_HPP_
