#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 text helpers. Character classes come from ICU; case mapping is the
// simple (one code point to one code point) mapping.
namespace etdq::text {

// Unicode general category P* plus the symbols ~^$|<>=+.
bool is_punct(char32_t c);
bool is_space(char32_t c);
bool is_alnum(char32_t c);
bool is_upper(char32_t c);
bool is_digit(char32_t c);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view s);

std::string to_upper(std::string_view s);
std::string to_lower(std::string_view s);

// Uppercase, punctuation removed, whitespace runs collapsed, trimmed.
std::string normalize_surface(std::string_view s);

// Removes punctuation characters only.
std::string strip_punct(std::string_view s);

std::string_view trim(std::string_view s);

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;
};

// Maximal runs of non-whitespace code points.
std::vector<Token> split_whitespace(std::string_view s);

// Number of code points.
std::size_t length(std::string_view utf8);

bool iequals(std::string_view a, std::string_view b);

}  // namespace etdq::text
