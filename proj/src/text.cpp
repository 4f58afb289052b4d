#include "etdq/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>

namespace etdq::text {

namespace {

template <typename F>
void for_each_code_point(std::string_view s, F&& f) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto n = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < n) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) continue;  // ill-formed sequence: dropped
    f(static_cast<char32_t>(c), static_cast<std::size_t>(start), static_cast<std::size_t>(i));
  }
}

void append_utf8(std::string& out, char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  if (!error) out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

}  // namespace

bool is_punct(char32_t c) {
  switch (c) {
    case U'~': case U'^': case U'$': case U'|': case U'<': case U'>': case U'=': case U'+':
      return true;
    default:
      return u_ispunct(static_cast<UChar32>(c));
  }
}

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }
bool is_alnum(char32_t c) { return u_isalnum(static_cast<UChar32>(c)); }
bool is_upper(char32_t c) { return u_isupper(static_cast<UChar32>(c)); }
bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }

std::u32string to_u32(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  for_each_code_point(utf8, [&](char32_t c, std::size_t, std::size_t) { out.push_back(c); });
  return out;
}

std::string to_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) append_utf8(out, c);
  return out;
}

std::string to_upper(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for_each_code_point(s, [&](char32_t c, std::size_t, std::size_t) {
    append_utf8(out, static_cast<char32_t>(u_toupper(static_cast<UChar32>(c))));
  });
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for_each_code_point(s, [&](char32_t c, std::size_t, std::size_t) {
    append_utf8(out, static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))));
  });
  return out;
}

std::string normalize_surface(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for_each_code_point(s, [&](char32_t c, std::size_t, std::size_t) {
    if (is_punct(c)) return;
    if (is_space(c)) {
      pending_space = !out.empty();
      return;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    append_utf8(out, static_cast<char32_t>(u_toupper(static_cast<UChar32>(c))));
  });
  return out;
}

std::string strip_punct(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for_each_code_point(s, [&](char32_t c, std::size_t b, std::size_t e) {
    if (!is_punct(c)) out.append(s.substr(b, e - b));
  });
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t first = s.size();
  std::size_t last = 0;
  for_each_code_point(s, [&](char32_t c, std::size_t b, std::size_t e) {
    if (is_space(c)) return;
    first = std::min(first, b);
    last = e;
  });
  if (first >= last) return s.substr(0, 0);
  return s.substr(first, last - first);
}

std::vector<Token> split_whitespace(std::string_view s) {
  std::vector<Token> out;
  bool in_token = false;
  std::size_t begin = 0;
  std::size_t end = 0;
  for_each_code_point(s, [&](char32_t c, std::size_t b, std::size_t e) {
    if (is_space(c)) {
      if (in_token) out.push_back({std::string(s.substr(begin, end - begin)), begin, end});
      in_token = false;
      return;
    }
    if (!in_token) {
      in_token = true;
      begin = b;
    }
    end = e;
  });
  if (in_token) out.push_back({std::string(s.substr(begin, end - begin)), begin, end});
  return out;
}

std::size_t length(std::string_view utf8) {
  std::size_t n = 0;
  for_each_code_point(utf8, [&](char32_t, std::size_t, std::size_t) { ++n; });
  return n;
}

bool iequals(std::string_view a, std::string_view b) { return to_lower(a) == to_lower(b); }

}  // namespace etdq::text
