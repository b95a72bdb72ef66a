#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace kcnas {

/// Raw comma-separated table: a header row plus string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180-style reader: quoted fields may contain commas, doubled quotes
/// and newlines; CRLF endings are tolerated. Ragged rows are an error
/// reported with the offending row number.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable read_csv_text(const std::string& text, const std::string& source_name);

/// Writes one row, quoting fields that need it.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace kcnas
