#include "minutes/search.hpp"

#include <regex>
#include <string>

#include "minutes/text.hpp"

namespace minutes {

std::vector<SearchMatch> search(const TranscriptVersion& transcript,
                                std::string_view pattern, bool case_sensitive) {
  auto flags = std::regex::ECMAScript;
  if (!case_sensitive) flags |= std::regex::icase;
  std::regex re;
  try {
    re.assign(pattern.begin(), pattern.end(), flags);
  } catch (const std::regex_error& e) {
    throw Error(Errc::kInvalidPattern, "invalid " + std::string(kRegexDialect) +
                                           " pattern '" + std::string(pattern) +
                                           "': " + e.what());
  }

  std::vector<SearchMatch> matches;
  for (const auto& da : transcript.das) {
    const std::string& s = da.text;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), re);
         it != std::sregex_iterator(); ++it) {
      const auto begin = static_cast<std::size_t>(it->position(0));
      const auto end = begin + static_cast<std::size_t>(it->length(0));
      matches.push_back(
          {da.id, text::char_offset(s, begin), text::char_offset(s, end)});
    }
  }
  return matches;
}

}  // namespace minutes
