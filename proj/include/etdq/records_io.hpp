#pragma once

#include "etdq/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace etdq::io {

enum class Format { Csv, Jsonl };

// "csv" / "jsonl" (also "json", "ndjson"); throws ConfigError otherwise.
Format parse_format(std::string_view name);
// From the file extension; CSV unless it ends in .jsonl/.ndjson/.json.
Format guess_format(const std::filesystem::path& path);

struct CsvRow {
  std::size_t line = 0;  // 1-based line where the row starts
  std::vector<std::string> cells;
};

// RFC 4180: quoted cells may hold commas, doubled quotes and line breaks.
// CRLF and LF both end rows. Throws ParseError on an unterminated quote.
std::vector<CsvRow> parse_csv(std::string_view data);
std::string csv_cell(std::string_view s);
std::string csv_line(const std::vector<std::string>& cells);

struct Issue {
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<EtdRecord> records;
  std::vector<Issue> issues;  // skipped rows
};

// CSV header needs "id"; absent field columns and empty cells become
// missing values. JSON lines carry {"id": ..., "fields": {...}}. Rows without
// an id, with the wrong cell count, or repeating an id are skipped.
IngestResult parse_records(std::string_view data, Format format);
IngestResult read_records(const std::filesystem::path& path, Format format);

// Writes the seven raw fields. With `structured`, adds the advisor role and
// the split date (CSV columns advisor_role, date_year, date_month, date_day).
std::string format_records(const std::vector<EtdRecord>& records, Format format, bool structured = false);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temp file then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace etdq::io
