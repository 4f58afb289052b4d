#include "etdq/dictionaries.hpp"

#include "etdq/errors.hpp"
#include "etdq/text.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace etdq {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  return in;
}

void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

AliasDictionary::AliasDictionary() : AliasDictionary(std::vector<AliasEntry>{}) {}

AliasDictionary::AliasDictionary(std::vector<AliasEntry> entries, KeyFn key_fn)
    : key_fn_(key_fn ? std::move(key_fn) : KeyFn([](std::string_view s) {
        return text::normalize_surface(s);
      })) {
  entries_.reserve(entries.size());
  for (auto& e : entries) {
    const std::string canonical(text::trim(e.canonical));
    if (canonical.empty()) throw LoadError("dictionary entry with empty canonical name");
    const auto idx = entries_.size();
    AliasEntry clean{canonical, {}};
    std::unordered_set<std::string> own_keys;

    auto claim = [&](const std::string& surface, bool is_canonical) {
      const auto k = key_fn_(surface);
      if (k.empty()) throw LoadError("surface '" + surface + "' of '" + canonical + "' normalizes to nothing");
      auto [it, inserted] = index_.try_emplace(k, Slot{idx, is_canonical});
      if (!inserted && it->second.entry != idx) {
        throw LoadError("key '" + k + "' maps to both '" + entries_[it->second.entry].canonical +
                        "' and '" + canonical + "'");
      }
      return own_keys.insert(k).second;
    };

    claim(canonical, true);
    for (auto& alias : e.aliases) {
      const std::string a(text::trim(alias));
      if (a.empty()) continue;
      if (claim(a, false)) clean.aliases.push_back(a);
    }
    entries_.push_back(std::move(clean));
  }
}

AliasDictionary AliasDictionary::load(const std::filesystem::path& path, KeyFn key_fn) {
  auto in = open_or_throw(path);
  std::vector<AliasEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (text::trim(line).empty()) continue;
    auto cols = split_tabs(line);
    if (text::trim(cols[0]).empty()) {
      throw LoadError(path.string() + ":" + std::to_string(line_no) + ": empty canonical name");
    }
    AliasEntry e{std::move(cols[0]), {}};
    for (std::size_t i = 1; i < cols.size(); ++i) e.aliases.push_back(std::move(cols[i]));
    entries.push_back(std::move(e));
  }
  if (in.bad()) throw LoadError("read error on " + path.string());
  try {
    return AliasDictionary(std::move(entries), std::move(key_fn));
  } catch (const LoadError& err) {
    throw LoadError(path.string() + ": " + err.what());
  }
}

std::string AliasDictionary::key(std::string_view surface) const { return key_fn_(surface); }

Match AliasDictionary::lookup(std::string_view surface) const { return lookup_key(key_fn_(surface)); }

Match AliasDictionary::lookup_key(const std::string& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return {};
  return {it->second.canonical ? MatchKind::Canonical : MatchKind::Alias,
          entries_[it->second.entry].canonical};
}

const AliasEntry* AliasDictionary::find_entry(std::string_view surface) const {
  const auto it = index_.find(key_fn_(surface));
  return it == index_.end() ? nullptr : &entries_[it->second.entry];
}

WordFrequencyList WordFrequencyList::load(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  WordFrequencyList list;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (text::trim(line).empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw LoadError(where + ": expected word<TAB>count");
    const auto word = text::trim(std::string_view(line).substr(0, tab));
    const auto count_text = text::trim(std::string_view(line).substr(tab + 1));
    long long count = 0;
    const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
      throw LoadError(where + ": bad count '" + std::string(count_text) + "'");
    }
    if (count <= 0) throw LoadError(where + ": count must be positive");
    if (word.empty()) throw LoadError(where + ": empty word");
    list.add(word, static_cast<std::uint64_t>(count));
  }
  if (in.bad()) throw LoadError("read error on " + path.string());
  return list;
}

void WordFrequencyList::add(std::string_view word, std::uint64_t count) {
  if (count == 0) throw std::invalid_argument("word counts must be positive");
  auto key = text::to_lower(text::strip_punct(word));
  if (key.empty()) return;
  counts_[std::move(key)] += count;
}

void WordFrequencyList::add_vocabulary(const std::vector<std::string>& texts) {
  for (const auto& t : texts) {
    for (const auto& tok : text::split_whitespace(text::strip_punct(t))) {
      auto key = text::to_lower(tok.text);
      if (!key.empty()) counts_.try_emplace(std::move(key), 1);
    }
  }
}

std::uint64_t WordFrequencyList::count(std::string_view word) const {
  const auto it = counts_.find(std::string(word));
  return it == counts_.end() ? 0 : it->second;
}

}  // namespace etdq
