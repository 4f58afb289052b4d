#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace etdq {

struct AliasEntry {
  std::string canonical;
  std::vector<std::string> aliases;  // file order, duplicates (after normalization) removed
};

enum class MatchKind { Canonical, Alias, NotFound };

struct Match {
  MatchKind kind = MatchKind::NotFound;
  std::string canonical;  // empty for NotFound

  bool operator==(const Match&) const = default;
};

// Canonical entity names with their known aliases. Lookup is exact on the
// key function's output (normalize_surface unless told otherwise).
// Immutable after construction.
class AliasDictionary {
 public:
  using KeyFn = std::function<std::string(std::string_view)>;

  AliasDictionary();
  // Throws LoadError on an empty canonical or when two entries share a key.
  explicit AliasDictionary(std::vector<AliasEntry> entries, KeyFn key_fn = {});

  // TSV: canonical, then zero or more aliases per line.
  static AliasDictionary load(const std::filesystem::path& path, KeyFn key_fn = {});

  Match lookup(std::string_view surface) const;
  // Lookup with an already-computed key.
  Match lookup_key(const std::string& key) const;
  std::string key(std::string_view surface) const;
  // Entry owning the surface's key, or nullptr.
  const AliasEntry* find_entry(std::string_view surface) const;

  const std::vector<AliasEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t key_count() const { return index_.size(); }

 private:
  struct Slot {
    std::size_t entry;
    bool canonical;
  };
  std::vector<AliasEntry> entries_;
  std::unordered_map<std::string, Slot> index_;
  KeyFn key_fn_;
};

// Lowercase word -> positive count.
class WordFrequencyList {
 public:
  WordFrequencyList() = default;

  // "word<TAB>count" lines; duplicates are summed. Throws LoadError on I/O
  // failure, malformed lines, or a non-positive count.
  static WordFrequencyList load(const std::filesystem::path& path);

  // Throws std::invalid_argument for count == 0.
  void add(std::string_view word, std::uint64_t count);
  // Adds lowercase, punctuation-free tokens of each text with count 1 when
  // not already present.
  void add_vocabulary(const std::vector<std::string>& texts);

  std::uint64_t count(std::string_view word) const;
  bool contains(std::string_view word) const { return count(word) > 0; }
  std::size_t size() const { return counts_.size(); }
  const std::unordered_map<std::string, std::uint64_t>& counts() const { return counts_; }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
};

struct YearRange {
  int min_year = 1880;
  int max_year = 2023;

  bool contains(int year) const { return year >= min_year && year <= max_year; }
};

}  // namespace etdq
