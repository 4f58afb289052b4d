#include "etdq/departments.hpp"

#include "etdq/text.hpp"

#include <algorithm>

namespace etdq {

const std::vector<std::string>& department_boilerplate() {
  static const std::vector<std::string> words = {"DEPARTMENT", "DEPT",    "OF",      "SCHOOL", "COLLEGE",
                                                 "GRADUATE",   "STUDIES", "PROGRAM", "IN"};
  return words;
}

bool is_department_boilerplate(std::string_view normalized_word) {
  const auto& words = department_boilerplate();
  return std::find(words.begin(), words.end(), normalized_word) != words.end();
}

std::string strip_parenthesized_suffix(std::string_view value) {
  auto v = text::trim(value);
  if (!v.empty() && v.back() == ')') {
    const auto open = v.rfind('(');
    if (open != std::string_view::npos && open > 0) {
      const auto head = text::trim(v.substr(0, open));
      if (!head.empty()) return std::string(head);
    }
  }
  return std::string(v);
}

std::string department_key(std::string_view value) {
  const auto normalized = text::normalize_surface(strip_parenthesized_suffix(value));
  std::string out;
  for (const auto& tok : text::split_whitespace(normalized)) {
    if (is_department_boilerplate(tok.text)) continue;
    if (!out.empty()) out.push_back(' ');
    out += tok.text;
  }
  return out;
}

AliasDictionary load_department_dictionary(const std::filesystem::path& path) {
  return AliasDictionary::load(path, [](std::string_view s) { return department_key(s); });
}

WordFrequencyList department_vocabulary(WordFrequencyList english, const AliasDictionary& departments) {
  std::vector<std::string> texts;
  for (const auto& e : departments.entries()) {
    texts.push_back(e.canonical);
    texts.insert(texts.end(), e.aliases.begin(), e.aliases.end());
  }
  texts.insert(texts.end(), department_boilerplate().begin(), department_boilerplate().end());
  english.add_vocabulary(texts);
  return english;
}

}  // namespace etdq
