#include "mvrvfl/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mvrvfl {

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\n") != std::string::npos;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

// Single pass over the raw text so a quoted field can carry embedded
// newlines; a line-based split would chop such a record in half.
CsvTable read_csv_text(const std::string& text, const std::string& origin) {
  CsvTable table;
  std::size_t line_no = 1;    // physical line the current record starts on
  std::size_t next_line = 1;  // physical line the next record will start on
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool seen_quote = false;

  auto end_record = [&]() {
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    if (!fields.empty() || !cur.empty() || seen_quote) {
      fields.push_back(cur);
      if (table.header.empty()) {
        table.header = std::move(fields);
      } else if (fields.size() != table.header.size()) {
        throw std::runtime_error(
            origin + ":" + std::to_string(line_no) + ": expected " +
            std::to_string(table.header.size()) + " fields, got " +
            std::to_string(fields.size()));
      } else {
        table.rows.push_back(std::move(fields));
      }
    }
    fields.clear();
    cur.clear();
    seen_quote = false;
    line_no = next_line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++next_line;
        cur += c;
      }
    } else if (c == '\n') {
      ++next_line;
      end_record();
    } else if (c == '"' && cur.empty()) {
      quoted = true;
      seen_quote = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) {
    throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                             ": unterminated quoted field");
  }
  end_record();
  if (table.header.empty()) {
    throw std::runtime_error(origin + ": missing header row");
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  return read_csv_text(read_text_file(path), path);
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    if (needs_quoting(fields[i])) {
      out += '"';
      for (char c : fields[i]) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    } else {
      out += fields[i];
    }
  }
  return out;
}

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::string text = csv_line(header) + "\n";
  for (const auto& row : rows) text += csv_line(row) + "\n";
  write_text_file(path, text);
}

double parse_number(const std::string& field, const std::string& context) {
  if (field.empty()) {
    throw std::runtime_error(context + ": empty numeric field");
  }
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + field.size()) {
    throw std::runtime_error(context + ": not a number: '" + field + "'");
  }
  if (!std::isfinite(v)) {
    throw std::runtime_error(context + ": non-finite value: '" + field + "'");
  }
  return v;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace mvrvfl
