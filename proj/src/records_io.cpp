#include "etdq/records_io.hpp"

#include "etdq/errors.hpp"
#include "etdq/text.hpp"

#include <nlohmann/json.hpp>
#include <unistd.h>

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace etdq::io {

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "jsonl" || name == "json" || name == "ndjson") return Format::Jsonl;
  throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or jsonl)");
}

Format guess_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return Format::Jsonl;
  return Format::Csv;
}

std::vector<CsvRow> parse_csv(std::string_view data) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string cell;
  std::size_t line = 1;
  bool quoted = false;
  bool row_started = false;
  std::size_t quote_line = 0;

  auto end_cell = [&] {
    row.cells.push_back(std::move(cell));
    cell.clear();
  };
  auto end_row = [&] {
    end_cell();
    rows.push_back(std::move(row));
    row = CsvRow{};
    row_started = false;
  };

  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (!row_started) {
      row.line = line;
      row_started = true;
    }
    if (quoted) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        quote_line = line;
        break;
      case ',':
        end_cell();
        break;
      case '\r':
        if (i + 1 < data.size() && data[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_row();
        ++line;
        break;
      default:
        cell.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted cell starting on line " + std::to_string(quote_line));
  if (row_started) end_row();
  return rows;
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_cell(cells[i]);
  }
  out.push_back('\n');
  return out;
}

namespace {

IngestResult parse_csv_records(std::string_view data) {
  IngestResult res;
  auto rows = parse_csv(data);
  if (rows.empty()) return res;
  const auto& header = rows.front().cells;
  int id_col = -1;
  std::array<int, kFieldCount> cols;
  cols.fill(-1);
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto name = text::to_lower(text::trim(header[i]));
    if (name == "id") id_col = static_cast<int>(i);
    else if (const auto f = field_from_column(name)) cols[index_of(*f)] = static_cast<int>(i);
  }
  if (id_col < 0) throw ParseError("CSV header has no 'id' column");

  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() == 1 && row.cells[0].empty()) continue;  // blank line
    if (row.cells.size() != header.size()) {
      res.issues.push_back({row.line, "expected " + std::to_string(header.size()) + " cells, found " +
                                          std::to_string(row.cells.size())});
      continue;
    }
    const std::string id(text::trim(row.cells[static_cast<std::size_t>(id_col)]));
    if (id.empty()) {
      res.issues.push_back({row.line, "row has no id"});
      continue;
    }
    if (!seen.insert(id).second) {
      res.issues.push_back({row.line, "duplicate id '" + id + "'"});
      continue;
    }
    EtdRecord rec(id);
    for (const auto f : kAllFields) {
      const int c = cols[index_of(f)];
      if (c >= 0 && !row.cells[static_cast<std::size_t>(c)].empty()) {
        rec.set_raw(f, row.cells[static_cast<std::size_t>(c)]);
      }
    }
    res.records.push_back(std::move(rec));
  }
  return res;
}

IngestResult parse_jsonl_records(std::string_view data) {
  IngestResult res;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    ++line_no;
    auto nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    const auto line = text::trim(data.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.contains("id") || !j["id"].is_string() || text::trim(j["id"].get<std::string>()).empty()) {
        res.issues.push_back({line_no, "object has no id"});
        continue;
      }
      const std::string id(text::trim(j["id"].get<std::string>()));
      if (!seen.insert(id).second) {
        res.issues.push_back({line_no, "duplicate id '" + id + "'"});
        continue;
      }
      EtdRecord rec(id);
      bool ok = true;
      if (j.contains("fields")) {
        for (const auto& [k, v] : j["fields"].items()) {
          const auto f = field_from_column(k);
          if (!f) continue;
          if (v.is_null()) continue;
          if (!v.is_string()) {
            res.issues.push_back({line_no, "field '" + k + "' is not a string"});
            ok = false;
            break;
          }
          if (!v.get<std::string>().empty()) rec.set_raw(*f, v.get<std::string>());
        }
      }
      if (ok) res.records.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      res.issues.push_back({line_no, std::string("malformed JSON: ") + e.what()});
    }
  }
  return res;
}

}  // namespace

IngestResult parse_records(std::string_view data, Format format) {
  return format == Format::Csv ? parse_csv_records(data) : parse_jsonl_records(data);
}

IngestResult read_records(const std::filesystem::path& path, Format format) {
  return parse_records(read_file(path), format);
}

std::string format_records(const std::vector<EtdRecord>& records, Format format, bool structured) {
  std::string out;
  if (format == Format::Csv) {
    std::vector<std::string> header = {"id"};
    for (const auto f : kAllFields) header.emplace_back(field_column(f));
    if (structured) header.insert(header.end(), {"advisor_role", "date_year", "date_month", "date_day"});
    out += csv_line(header);
    for (const auto& r : records) {
      std::vector<std::string> cells = {r.id()};
      for (const auto f : kAllFields) cells.push_back(r.raw(f).value_or(""));
      if (structured) {
        const auto& adv = r.field(FieldKey::Advisor);
        const auto& parts = r.field(FieldKey::Year).parts;
        cells.push_back(adv.role.value_or(""));
        cells.push_back(parts ? std::to_string(parts->year) : "");
        cells.push_back(parts && parts->month ? std::to_string(*parts->month) : "");
        cells.push_back(parts && parts->day ? std::to_string(*parts->day) : "");
      }
      out += csv_line(cells);
    }
    return out;
  }
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id();
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto f : kAllFields) {
      fields[std::string(field_column(f))] = r.raw(f) ? nlohmann::ordered_json(*r.raw(f)) : nlohmann::ordered_json(nullptr);
    }
    j["fields"] = std::move(fields);
    if (structured) {
      const auto& adv = r.field(FieldKey::Advisor);
      const auto& parts = r.field(FieldKey::Year).parts;
      j["advisor_role"] = adv.role ? nlohmann::ordered_json(*adv.role) : nlohmann::ordered_json(nullptr);
      if (parts) {
        nlohmann::ordered_json d;
        d["year"] = parts->year;
        d["month"] = parts->month ? nlohmann::ordered_json(*parts->month) : nlohmann::ordered_json(nullptr);
        d["day"] = parts->day ? nlohmann::ordered_json(*parts->day) : nlohmann::ordered_json(nullptr);
        j["date"] = std::move(d);
      } else {
        j["date"] = nullptr;
      }
    }
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw LoadError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw LoadError("cannot replace " + path.string() + ": " + ec.message());
  }
}

}  // namespace etdq::io
