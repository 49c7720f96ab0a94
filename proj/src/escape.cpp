#include "minutes/error.hpp"
#include "minutes/store.hpp"

namespace minutes::store {

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    const char c = escaped[i];
    if (c == '\t' || c == '\n') {
      throw Error(Errc::kParseError, "raw tab or newline inside a field");
    }
    if (c != '\\') {
      out += c;
      continue;
    }
    if (++i == escaped.size()) {
      throw Error(Errc::kParseError, "dangling backslash at end of field");
    }
    switch (escaped[i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case '\\': out += '\\'; break;
      default:
        throw Error(Errc::kParseError,
                    std::string("unknown escape sequence \\") + escaped[i]);
    }
  }
  return out;
}

}  // namespace minutes::store
