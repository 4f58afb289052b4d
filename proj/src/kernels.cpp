#include "etdq/kernels.hpp"

#include "etdq/dictionaries.hpp"
#include "etdq/text.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace etdq::kernels {

int damerau_levenshtein(std::u32string_view a, std::u32string_view b) {
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  if (la == 0) return static_cast<int>(lb);
  if (lb == 0) return static_cast<int>(la);

  const int inf = static_cast<int>(la + lb);
  const std::size_t w = lb + 2;
  std::vector<int> h((la + 2) * w);
  auto at = [&](std::size_t i, std::size_t j) -> int& { return h[i * w + j]; };

  at(0, 0) = inf;
  for (std::size_t i = 0; i <= la; ++i) {
    at(i + 1, 0) = inf;
    at(i + 1, 1) = static_cast<int>(i);
  }
  for (std::size_t j = 0; j <= lb; ++j) {
    at(0, j + 1) = inf;
    at(1, j + 1) = static_cast<int>(j);
  }

  // last row (1-based) in which each character of `a` was seen
  std::vector<std::pair<char32_t, std::size_t>> last_row;
  auto row_of = [&](char32_t c) -> std::size_t {
    for (const auto& [ch, row] : last_row) {
      if (ch == c) return row;
    }
    return 0;
  };

  for (std::size_t i = 1; i <= la; ++i) {
    std::size_t last_col = 0;
    for (std::size_t j = 1; j <= lb; ++j) {
      const std::size_t i1 = row_of(b[j - 1]);
      const std::size_t j1 = last_col;
      int cost = 1;
      if (a[i - 1] == b[j - 1]) {
        cost = 0;
        last_col = j;
      }
      const int transpose = at(i1, j1) + static_cast<int>(i - i1 - 1) + 1 + static_cast<int>(j - j1 - 1);
      at(i + 1, j + 1) = std::min({at(i, j) + cost, at(i + 1, j) + 1, at(i, j + 1) + 1, transpose});
    }
    bool found = false;
    for (auto& [ch, row] : last_row) {
      if (ch == a[i - 1]) {
        row = i;
        found = true;
      }
    }
    if (!found) last_row.emplace_back(a[i - 1], i);
  }
  return at(la + 1, lb + 1);
}

Lexicon::Lexicon(const WordFrequencyList& list) {
  std::vector<std::pair<std::string, std::uint64_t>> sorted(list.counts().begin(), list.counts().end());
  std::sort(sorted.begin(), sorted.end());
  words_.reserve(sorted.size());
  decoded_.reserve(sorted.size());
  sorted_.reserve(sorted.size());
  counts_.reserve(sorted.size());
  std::size_t max_len = 0;
  for (auto& [w, c] : sorted) {
    auto cps = text::to_u32(w);
    auto chars = cps;
    std::sort(chars.begin(), chars.end());
    alphabet_.append(chars);
    max_len = std::max(max_len, cps.size());
    words_.push_back(std::move(w));
    decoded_.push_back(std::move(cps));
    sorted_.push_back(std::move(chars));
    counts_.push_back(c);
  }
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());

  by_length_.resize(words_.size());
  std::iota(by_length_.begin(), by_length_.end(), std::size_t{0});
  std::stable_sort(by_length_.begin(), by_length_.end(), [&](std::size_t x, std::size_t y) {
    return decoded_[x].size() < decoded_[y].size();
  });
  bucket_start_.assign(max_len + 2, 0);
  std::size_t pos = 0;
  for (std::size_t len = 0; len <= max_len + 1; ++len) {
    while (pos < by_length_.size() && decoded_[by_length_[pos]].size() < len) ++pos;
    bucket_start_[len] = pos;
  }
}

std::pair<std::size_t, std::size_t> Lexicon::length_bucket(std::size_t len) const {
  if (bucket_start_.empty() || len + 1 >= bucket_start_.size()) return {by_length_.size(), by_length_.size()};
  return {bucket_start_[len], bucket_start_[len + 1]};
}

namespace {

// Size of the multiset symmetric difference of two sorted code-point strings.
// One edit changes it by at most 2, so it bounds distance from below.
std::size_t bag_difference(const std::u32string& x, const std::u32string& y, std::size_t limit) {
  std::size_t i = 0, j = 0, diff = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) {
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++i;
      ++diff;
    } else {
      ++j;
      ++diff;
    }
    if (diff > limit) return diff;
  }
  return diff + (x.size() - i) + (y.size() - j);
}

struct Candidates {
  std::size_t begin;
  std::size_t end;
};

Candidates candidate_range(const Lexicon& lex, std::size_t token_len, int max_distance) {
  const std::size_t lo = token_len > static_cast<std::size_t>(max_distance) ? token_len - max_distance : 0;
  const std::size_t hi = token_len + static_cast<std::size_t>(max_distance);
  return {lex.length_bucket(lo).first, lex.length_bucket(hi).second};
}

int bounded_distance(const Lexicon& lex, std::size_t idx, std::u32string_view token,
                     const std::u32string& token_sorted, int max_distance) {
  if (bag_difference(lex.sorted_chars(idx), token_sorted, 2 * static_cast<std::size_t>(max_distance)) >
      2 * static_cast<std::size_t>(max_distance)) {
    return max_distance + 1;
  }
  return damerau_levenshtein(token, lex.code_points(idx));
}

}  // namespace

std::vector<Neighbor> neighbors_within(const Lexicon& lex, std::u32string_view token, int max_distance,
                                       Exec exec) {
  std::u32string token_sorted(token);
  std::sort(token_sorted.begin(), token_sorted.end());
  const auto range = candidate_range(lex, token.size(), max_distance);
  const auto& order = lex.by_length();

  std::vector<Neighbor> out;
  if (exec == Exec::Serial) {
    for (std::size_t k = range.begin; k < range.end; ++k) {
      const auto idx = order[k];
      const int d = bounded_distance(lex, idx, token, token_sorted, max_distance);
      if (d <= max_distance) out.push_back({idx, d});
    }
  } else {
    const auto n = static_cast<std::ptrdiff_t>(range.end - range.begin);
#pragma omp parallel
    {
      std::vector<Neighbor> local;
#pragma omp for schedule(static) nowait
      for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto idx = order[range.begin + static_cast<std::size_t>(k)];
        const int d = bounded_distance(lex, idx, token, token_sorted, max_distance);
        if (d <= max_distance) local.push_back({idx, d});
      }
#pragma omp critical(etdq_neighbors_merge)
      out.insert(out.end(), local.begin(), local.end());
    }
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
  return out;
}

bool any_within(const Lexicon& lex, std::u32string_view token, int max_distance, Exec exec) {
  std::u32string token_sorted(token);
  std::sort(token_sorted.begin(), token_sorted.end());
  const auto range = candidate_range(lex, token.size(), max_distance);
  const auto& order = lex.by_length();

  if (exec == Exec::Serial) {
    for (std::size_t k = range.begin; k < range.end; ++k) {
      if (bounded_distance(lex, order[k], token, token_sorted, max_distance) <= max_distance) return true;
    }
    return false;
  }
  bool found = false;
  const auto n = static_cast<std::ptrdiff_t>(range.end - range.begin);
#pragma omp parallel for schedule(static) shared(found)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    bool seen;
#pragma omp atomic read
    seen = found;
    if (seen) continue;
    if (bounded_distance(lex, order[range.begin + static_cast<std::size_t>(k)], token, token_sorted,
                         max_distance) <= max_distance) {
#pragma omp atomic write
      found = true;
    }
  }
  return found;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0, na = 0, nb = 0;
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  for (std::size_t i = n; i < a.size(); ++i) na += a[i] * a[i];
  for (std::size_t i = n; i < b.size(); ++i) nb += b[i] * b[i];
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

BestMatch argmax_cosine(std::span<const double> matrix, std::size_t dim, std::span<const double> query,
                        Exec exec) {
  if (dim == 0 || matrix.empty()) return {};
  const std::size_t rows = matrix.size() / dim;
  std::vector<double> scores(rows, 0.0);
  auto score_row = [&](std::size_t r) { scores[r] = cosine(matrix.subspan(r * dim, dim), query); };

  if (exec == Exec::Serial) {
    for (std::size_t r = 0; r < rows; ++r) score_row(r);
  } else {
    const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r) score_row(static_cast<std::size_t>(r));
  }

  BestMatch best{0, scores.empty() ? 0.0 : scores[0]};
  for (std::size_t r = 1; r < rows; ++r) {
    if (scores[r] > best.score) best = {r, scores[r]};
  }
  return best;
}

}  // namespace etdq::kernels
