#pragma once

#include "etdq/dictionaries.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace etdq {

// Words that carry no department identity: DEPARTMENT, DEPT, OF, SCHOOL,
// COLLEGE, GRADUATE, STUDIES, PROGRAM, IN (normalized forms).
bool is_department_boilerplate(std::string_view normalized_word);
const std::vector<std::string>& department_boilerplate();

// "Public Health (PMH)" -> "Public Health". Only a single trailing group is
// removed; the input is trimmed.
std::string strip_parenthesized_suffix(std::string_view value);

// Normalized value with the parenthesized suffix and boilerplate words
// removed: "Dept. of CS" -> "CS", "School of Music" -> "MUSIC".
std::string department_key(std::string_view value);

// Department dictionary indexed by department_key.
AliasDictionary load_department_dictionary(const std::filesystem::path& path);

// English list plus every token of the department dictionary (canonicals,
// aliases) and the boilerplate words, each added with count 1 when absent.
WordFrequencyList department_vocabulary(WordFrequencyList english, const AliasDictionary& departments);

}  // namespace etdq
