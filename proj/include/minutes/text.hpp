#ifndef MINUTES_TEXT_HPP_
#define MINUTES_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>

// UTF-8 helpers. Character offsets exposed by the engine count Unicode code
// points; malformed bytes count as one character each.
namespace minutes::text {

std::size_t char_length(std::string_view s);

// Byte offset of the `chars`-th code point; clamps to s.size().
std::size_t byte_offset(std::string_view s, std::size_t chars);

// Number of code points that start before `bytes`.
std::size_t char_offset(std::string_view s, std::size_t bytes);

bool is_space(char c) noexcept;
std::string_view trim_left(std::string_view s);
std::string_view trim_right(std::string_view s);

}  // namespace minutes::text

#endif  // MINUTES_TEXT_HPP_
