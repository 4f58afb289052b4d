#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etdq {

enum class NameLabel { Person, Other };

struct NameToken {
  std::string text;
  std::size_t offset = 0;  // byte offset into the judged string
  NameLabel label = NameLabel::Person;
};

struct NameJudgment {
  std::string input;
  std::vector<NameToken> tokens;

  bool all_person() const;
  // Tokens stitched back together with the separators found between them.
  std::string reconstruct() const;
};

// Labels every part of a personal-name string as PERSON or not. Remote
// implementations throw ProviderError on failure.
class NameJudge {
 public:
  virtual ~NameJudge() = default;
  virtual NameJudgment judge(std::string_view name) const = 0;
};

// Token rules: digits, role keywords, all-caps acronyms (honorifics
// excepted) and lowercase function words (name particles excepted) are
// OTHER; everything else is PERSON.
class RuleNameJudge final : public NameJudge {
 public:
  NameJudgment judge(std::string_view name) const override;
  static NameLabel label_token(std::string_view token);
};

// POSTs {"text": ...} and expects {"tokens": [{"token", "label"}]}. Any label
// other than "PERSON" maps to OTHER. Safe for concurrent calls (one client per
// call).
class RemoteNameJudge final : public NameJudge {
 public:
  explicit RemoteNameJudge(std::string url,
                           std::chrono::milliseconds timeout = std::chrono::seconds(5));
  NameJudgment judge(std::string_view name) const override;

 private:
  std::string scheme_host_port_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

struct Contributor {
  std::string name;
  std::optional<std::string> role;
  std::string separator;  // text between name and role, e.g. ", "

  std::string reassemble() const { return role ? name + separator + *role : name; }
};

// Splits a contributor string on its last comma when the suffix is a known
// committee role. The input is trimmed first.
Contributor parse_contributor(std::string_view value);

// True when the normalized text is a committee role.
bool is_role(std::string_view text);

}  // namespace etdq
