#include "kcnas/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kcnas {

namespace {

std::vector<std::vector<std::string>> parse_records(const std::string& text, const std::string& source) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                field_started = true;  // next field exists even if empty
                break;
            case '\r':
                break;
            case '\n':
                if (!record.empty() || field_started || !field.empty()) end_record();
                break;
            default:
                field.push_back(ch);
                break;
        }
    }
    if (in_quotes)
        throw std::runtime_error(source + ": unterminated quoted field at end of file");
    if (!record.empty() || field_started || !field.empty()) end_record();
    return records;
}

}  // namespace

CsvTable read_csv_text(const std::string& text, const std::string& source_name) {
    auto records = parse_records(text, source_name);
    if (records.empty()) throw std::runtime_error(source_name + ": file has no header row");

    CsvTable table;
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size())
            throw std::runtime_error(source_name + ": row " + std::to_string(r + 1) + " has " +
                                     std::to_string(records[r].size()) + " fields, header has " +
                                     std::to_string(table.header.size()));
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open CSV file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return read_csv_text(buffer.str(), path.string());
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") != std::string::npos) {
            out << '"';
            for (char ch : f) {
                if (ch == '"') out << "\"\"";
                else out << ch;
            }
            out << '"';
        } else {
            out << f;
        }
    }
    out << '\n';
}

}  // namespace kcnas
