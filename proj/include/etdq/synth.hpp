#pragma once

#include "etdq/detection.hpp"
#include "etdq/ecc.hpp"
#include "etdq/evaluation.hpp"
#include "etdq/rng.hpp"
#include "etdq/title.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Seeded generators for the shipped benchmark and the title corpus.
namespace etdq::synth {

std::string person_name(Rng& rng, bool middle_initial);
std::string dissertation_title(Rng& rng);
std::string junk_title(Rng& rng);

struct TitleExample {
  std::string title;
  TitleLabel label;
};

std::vector<TitleExample> title_corpus(std::uint64_t seed, std::size_t valid, std::size_t junk);

// Train/held-out split after a seeded shuffle; `holdout` is a fraction.
std::pair<std::vector<TitleExample>, std::vector<TitleExample>> split_corpus(std::vector<TitleExample> corpus,
                                                                             double holdout, std::uint64_t seed);

// "label<TAB>title" lines, label valid|invalid.
std::string format_title_corpus(const std::vector<TitleExample>& corpus);
std::vector<TitleExample> parse_title_corpus(std::string_view tsv);

struct TitleFit {
  IdfTable idf;  // from the training titles
  TitleModel model;
};

TitleFit fit_titles(const std::vector<TitleExample>& train, const TrainOptions& options = {});
BinaryScore score_titles(const std::vector<TitleExample>& examples, const TitleFit& fit);

// Counts mirror the error distribution of the reference study: per field
// missing values, incorrect values, misspellings, and values needing
// canonicalization (split by where the non-canonical form comes from).
struct BenchmarkSpec {
  std::uint64_t seed = 2023;
  std::size_t records = 500;
  std::size_t universities_used = 114;
  std::array<std::size_t, kFieldCount> missing = {0, 2, 150, 6, 172, 156, 269};
  std::size_t title_incorrect = 1;
  std::size_t advisor_roles = 35;
  std::size_t university_aliases = 43;
  std::size_t year_non_iso = 1;
  std::size_t degree_incorrect = 4;          // oracle supplies an acronym
  std::size_t degree_aliases = 56;           // acronym in the record
  std::size_t degree_oracle_aliases = 22;    // missing, oracle supplies an acronym
  std::size_t department_misspelled = 2;
  std::size_t department_variants = 60;      // variant in the record
  std::size_t department_oracle_variants = 23;  // missing, oracle supplies a variant
  std::size_t authors_not_extractable = 2;   // missing authors the partial oracle lacks

  std::array<std::size_t, kFieldCount> expected_canonical() const;
};

struct OracleRow {
  std::string id;
  ExtractedFields fields;
};

struct Benchmark {
  BenchmarkSpec spec;
  std::vector<EtdRecord> clean;
  std::vector<EtdRecord> records;  // corrupted
  std::vector<GoldLabel> gold;     // every (record, field); error kind on corrupted ones
  std::vector<OracleRow> oracle;        // complete
  std::vector<OracleRow> oracle_partial;  // lacks the unextractable authors

  std::string manifest_json() const;
};

// Uses the resource dictionaries and checks every planted corruption with the
// real detectors/correctors, so the expected counts hold by construction.
// Throws std::runtime_error when the dictionaries cannot supply a variant.
Benchmark build_benchmark(const BenchmarkSpec& spec, const Resources& r);

std::string format_oracle(const std::vector<OracleRow>& rows);
MapOracle to_oracle(const std::vector<OracleRow>& rows);

}  // namespace etdq::synth
