#include "etdq/names.hpp"

#include "etdq/errors.hpp"
#include "etdq/text.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>

namespace etdq {

namespace {

constexpr std::array<std::string_view, 5> kHonorifics = {"JR", "SR", "II", "III", "IV"};
constexpr std::array<std::string_view, 7> kRoleKeywords = {"CHAIR",  "COCHAIR",  "COMMITTEE", "MEMBER",
                                                           "ADVISOR", "COADVISOR", "DIRECTOR"};
constexpr std::array<std::string_view, 8> kRoleLexicon = {"CHAIR",   "COCHAIR",   "COMMITTEE MEMBER",
                                                          "MEMBER",  "ADVISOR",   "COADVISOR",
                                                          "DIRECTOR", "CO CHAIR"};
constexpr std::array<std::string_view, 7> kParticles = {"van", "von", "de", "la", "der", "bin", "al"};
constexpr std::array<std::string_view, 24> kFunctionWords = {
    "a",  "an", "the",  "of",   "and", "or", "for",  "in",  "on",   "at",   "by",  "with",
    "to", "from", "as", "is", "are", "was", "be", "this", "that", "not", "but", "into"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

}  // namespace

bool NameJudgment::all_person() const {
  return std::all_of(tokens.begin(), tokens.end(),
                     [](const NameToken& t) { return t.label == NameLabel::Person; });
}

std::string NameJudgment::reconstruct() const {
  std::string out;
  std::size_t pos = 0;
  for (const auto& t : tokens) {
    if (t.offset > pos) out += input.substr(pos, t.offset - pos);
    out += t.text;
    pos = t.offset + t.text.size();
  }
  if (pos < input.size()) out += input.substr(pos);
  return out;
}

NameLabel RuleNameJudge::label_token(std::string_view token) {
  const auto cps = text::to_u32(token);
  // core: token without leading/trailing punctuation
  std::size_t b = 0, e = cps.size();
  while (b < e && text::is_punct(cps[b])) ++b;
  while (e > b && text::is_punct(cps[e - 1])) --e;
  const std::u32string core(cps.substr(b, e - b));
  if (core.empty()) return NameLabel::Other;
  if (std::any_of(core.begin(), core.end(), [](char32_t c) { return text::is_digit(c); })) {
    return NameLabel::Other;
  }

  const auto core_utf8 = text::to_utf8(core);
  const auto normalized = text::normalize_surface(core_utf8);
  if (contains(kHonorifics, normalized)) return NameLabel::Person;
  if (contains(kRoleKeywords, normalized)) return NameLabel::Other;

  // Dotted initials ("J.R.") are names, not acronyms.
  const bool dotted = core.find(U'.') != std::u32string::npos;
  std::size_t letters = 0;
  bool all_upper = true;
  for (char32_t c : core) {
    if (text::is_alnum(c)) {
      ++letters;
      if (!text::is_upper(c)) all_upper = false;
    }
  }
  if (!dotted && letters >= 2 && all_upper) return NameLabel::Other;

  const auto lowered = text::to_lower(core_utf8);
  if (lowered == core_utf8 && !contains(kParticles, lowered) && contains(kFunctionWords, lowered)) {
    return NameLabel::Other;
  }
  return NameLabel::Person;
}

NameJudgment RuleNameJudge::judge(std::string_view name) const {
  NameJudgment out{std::string(name), {}};
  std::size_t i = 0;
  while (i < name.size()) {
    while (i < name.size() && (name[i] == ',' || name[i] == ' ' || name[i] == '\t' || name[i] == '\n' ||
                               name[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < name.size() && !(name[i] == ',' || name[i] == ' ' || name[i] == '\t' || name[i] == '\n' ||
                                name[i] == '\r')) {
      ++i;
    }
    if (i > start) {
      const auto tok = name.substr(start, i - start);
      out.tokens.push_back({std::string(tok), start, label_token(tok)});
    }
  }
  return out;
}

RemoteNameJudge::RemoteNameJudge(std::string url, std::chrono::milliseconds timeout) : timeout_(timeout) {
  const auto scheme_end = url.find("://");
  const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

NameJudgment RemoteNameJudge::judge(std::string_view name) const {
  httplib::Client client(scheme_host_port_);
  const auto secs = timeout_.count() / 1000;
  const auto usecs = (timeout_.count() % 1000) * 1000;
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  const nlohmann::json body = {{"text", std::string(name)}};
  auto res = client.Post(path_, body.dump(), "application/json");
  if (!res) throw ProviderError("name judge unreachable: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) {
    throw ProviderError("name judge returned HTTP " + std::to_string(res->status));
  }

  NameJudgment out{std::string(name), {}};
  try {
    const auto doc = nlohmann::json::parse(res->body);
    std::size_t cursor = 0;
    for (const auto& t : doc.at("tokens")) {
      auto tok = t.at("token").get<std::string>();
      const auto label = t.at("label").get<std::string>() == "PERSON" ? NameLabel::Person : NameLabel::Other;
      auto pos = out.input.find(tok, cursor);
      if (pos == std::string::npos) pos = cursor;
      else cursor = pos + tok.size();
      out.tokens.push_back({std::move(tok), pos, label});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed name judge response: ") + e.what());
  }
  return out;
}

bool is_role(std::string_view s) { return contains(kRoleLexicon, text::normalize_surface(s)); }

Contributor parse_contributor(std::string_view value) {
  const auto trimmed = text::trim(value);
  const auto comma = trimmed.rfind(',');
  if (comma != std::string_view::npos) {
    const auto role = text::trim(trimmed.substr(comma + 1));
    const auto name = text::trim(trimmed.substr(0, comma));
    if (!role.empty() && !name.empty() && is_role(role)) {
      const auto name_end = static_cast<std::size_t>(name.data() + name.size() - trimmed.data());
      const auto role_begin = static_cast<std::size_t>(role.data() - trimmed.data());
      return {std::string(name), std::string(role),
              std::string(trimmed.substr(name_end, role_begin - name_end))};
    }
  }
  return {std::string(trimmed), std::nullopt, {}};
}

}  // namespace etdq
