#pragma once

#include <string>
#include <vector>

namespace mvrvfl {

// Minimal CSV support: UTF-8, comma separator, first row is a header,
// '.' decimal point. Fields may be double-quoted; "" escapes a quote and
// quoted fields may span lines. CRLF records are accepted; blank lines are
// skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // every row matches header size

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv_text(const std::string& text, const std::string& origin);
CsvTable read_csv_file(const std::string& path);

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);
std::string csv_line(const std::vector<std::string>& fields);

// Strict numeric parse: the whole field must consume and the value must be
// finite. `context` names the row/column in the error message.
double parse_number(const std::string& field, const std::string& context);

// %.17g, enough digits for an exact double round trip via strtod.
std::string format_g17(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mvrvfl
