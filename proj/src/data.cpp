#include "kcnas/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "kcnas/csv.hpp"
#include "kcnas/rng.hpp"

namespace kcnas {

std::string_view column_kind_name(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::numeric: return "numeric";
        case ColumnKind::categorical: return "categorical";
        case ColumnKind::drop: return "drop";
        case ColumnKind::label: return "label";
    }
    return "unknown";
}

ColumnKind parse_column_kind(std::string_view name) {
    if (name == "numeric") return ColumnKind::numeric;
    if (name == "categorical") return ColumnKind::categorical;
    if (name == "drop") return ColumnKind::drop;
    if (name == "label") return ColumnKind::label;
    throw std::invalid_argument("unknown column kind '" + std::string(name) +
                                "' (expected numeric|categorical|drop|label)");
}

std::vector<ColumnSchema> schema_from_json_text(const std::string& text, const std::string& source_name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(source_name + ": schema is not valid JSON: " + e.what());
    }
    if (!doc.is_array()) throw std::runtime_error(source_name + ": schema must be a JSON array");

    std::vector<ColumnSchema> schema;
    int labels = 0;
    for (const auto& entry : doc) {
        ColumnSchema col;
        col.name = entry.at("name").get<std::string>();
        col.kind = parse_column_kind(entry.at("kind").get<std::string>());
        if (entry.contains("categories")) col.categories = entry["categories"].get<std::vector<std::string>>();
        if (col.kind == ColumnKind::label) ++labels;
        schema.push_back(std::move(col));
    }
    if (labels != 1)
        throw std::runtime_error(source_name + ": schema must mark exactly one column as label, found " +
                                 std::to_string(labels));
    return schema;
}

std::vector<ColumnSchema> load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return schema_from_json_text(buffer.str(), path.string());
}

namespace {

bool is_missing(const std::string& cell) { return cell.empty(); }

double parse_number(const std::string& cell, const std::string& source, std::size_t row,
                    const std::string& column) {
    try {
        std::size_t used = 0;
        double value = std::stod(cell, &used);
        while (used < cell.size() && (cell[used] == ' ' || cell[used] == '\t')) ++used;
        if (used != cell.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error(source + ": row " + std::to_string(row) + ", column '" + column +
                                 "': cannot parse '" + cell + "' as a number");
    }
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

RawTable load_csv(const std::filesystem::path& path, const std::vector<ColumnSchema>& schema) {
    const CsvTable csv = read_csv(path);
    const std::string source = path.string();

    // Bidirectional header/schema match; mismatches are schema bugs the user
    // must see, not silently dropped data.
    std::vector<std::ptrdiff_t> schema_to_csv(schema.size(), -1);
    for (std::size_t s = 0; s < schema.size(); ++s) {
        for (std::size_t h = 0; h < csv.header.size(); ++h)
            if (csv.header[h] == schema[s].name) {
                schema_to_csv[s] = static_cast<std::ptrdiff_t>(h);
                break;
            }
        if (schema_to_csv[s] < 0)
            throw std::runtime_error(source + ": schema column '" + schema[s].name +
                                     "' not found in the CSV header");
    }
    for (std::size_t h = 0; h < csv.header.size(); ++h) {
        bool known = false;
        for (const auto& col : schema)
            if (col.name == csv.header[h]) known = true;
        if (!known)
            throw std::runtime_error(source + ": unknown column '" + csv.header[h] + "' (column " +
                                     std::to_string(h + 1) + ") is not in the schema");
    }

    RawTable table;
    table.source = source;
    table.row_count = csv.rows.size();

    for (std::size_t s = 0; s < schema.size(); ++s) {
        const ColumnSchema& col_schema = schema[s];
        if (col_schema.kind == ColumnKind::drop) continue;
        const auto csv_index = static_cast<std::size_t>(schema_to_csv[s]);

        RawColumn column;
        column.schema = col_schema;

        if (col_schema.kind == ColumnKind::categorical) {
            std::map<std::string, std::size_t> frequency;
            std::vector<bool> missing(table.row_count, false);
            column.category_values.resize(table.row_count);
            for (std::size_t r = 0; r < table.row_count; ++r) {
                const std::string& cell = csv.rows[r][csv_index];
                if (is_missing(cell)) {
                    missing[r] = true;
                } else {
                    column.category_values[r] = cell;
                    ++frequency[cell];
                }
            }
            if (frequency.empty())
                throw std::runtime_error(source + ": column '" + col_schema.name +
                                         "' has no values to impute from");
            // most frequent category; ties resolved by lexicographic order
            std::string mode;
            std::size_t best = 0;
            for (const auto& [value, count] : frequency)
                if (count > best) {
                    best = count;
                    mode = value;
                }
            for (std::size_t r = 0; r < table.row_count; ++r)
                if (missing[r]) column.category_values[r] = mode;
        } else {
            // numeric or label
            std::vector<double> present;
            std::vector<bool> missing(table.row_count, false);
            column.numeric_values.resize(table.row_count, 0.0);
            for (std::size_t r = 0; r < table.row_count; ++r) {
                const std::string& cell = csv.rows[r][csv_index];
                if (is_missing(cell)) {
                    if (col_schema.kind == ColumnKind::label)
                        throw std::runtime_error(source + ": row " + std::to_string(r + 2) +
                                                 ", column '" + col_schema.name +
                                                 "': label value is missing");
                    missing[r] = true;
                } else {
                    column.numeric_values[r] = parse_number(cell, source, r + 2, col_schema.name);
                    present.push_back(column.numeric_values[r]);
                }
            }
            if (col_schema.kind == ColumnKind::numeric) {
                if (present.empty())
                    throw std::runtime_error(source + ": column '" + col_schema.name +
                                             "' has no values to impute from");
                const double fill = median(present);
                for (std::size_t r = 0; r < table.row_count; ++r)
                    if (missing[r]) column.numeric_values[r] = fill;
            }
        }
        table.columns.push_back(std::move(column));
    }
    return table;
}

Dataset preprocess(const RawTable& table, std::uint64_t seed, double split_fraction) {
    if (split_fraction <= 0.0 || split_fraction >= 1.0)
        throw std::invalid_argument("preprocess: split_fraction must be in (0, 1)");
    if (table.row_count == 0) throw std::invalid_argument("preprocess: table has no rows");

    const auto n = static_cast<Eigen::Index>(table.row_count);
    Dataset dataset;
    dataset.source = table.source;

    // label column
    const RawColumn* label_column = nullptr;
    Eigen::Index feature_count = 0;
    for (const auto& column : table.columns) {
        if (column.schema.kind == ColumnKind::label) label_column = &column;
        else ++feature_count;
    }
    if (!label_column) throw std::invalid_argument("preprocess: table has no label column");

    dataset.labels.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const double v = label_column->numeric_values[static_cast<std::size_t>(r)];
        if (v != 0.0 && v != 1.0)
            throw std::runtime_error(table.source + ": row " + std::to_string(r + 2) + ", column '" +
                                     label_column->schema.name + "': label must be 0 or 1, got " +
                                     std::to_string(v));
        dataset.labels[r] = static_cast<int>(v);
    }

    // encode features
    dataset.features.resize(n, feature_count);
    Eigen::Index f = 0;
    for (const auto& column : table.columns) {
        if (column.schema.kind == ColumnKind::label) continue;
        dataset.feature_names.push_back(column.schema.name);
        if (column.schema.kind == ColumnKind::numeric) {
            for (Eigen::Index r = 0; r < n; ++r)
                dataset.features(r, f) = column.numeric_values[static_cast<std::size_t>(r)];
        } else {
            std::vector<std::string> categories = column.schema.categories;
            if (categories.empty()) {
                categories = column.category_values;
                std::sort(categories.begin(), categories.end());
                categories.erase(std::unique(categories.begin(), categories.end()), categories.end());
            }
            std::map<std::string, Eigen::Index> codes;
            for (std::size_t i = 0; i < categories.size(); ++i)
                codes[categories[i]] = static_cast<Eigen::Index>(i);
            for (Eigen::Index r = 0; r < n; ++r) {
                const std::string& value = column.category_values[static_cast<std::size_t>(r)];
                auto it = codes.find(value);
                if (it == codes.end())
                    throw std::runtime_error(table.source + ": row " + std::to_string(r + 2) +
                                             ", column '" + column.schema.name + "': category '" +
                                             value + "' is not in the schema's category list");
                dataset.features(r, f) = static_cast<double>(it->second);
            }
        }
        ++f;
    }

    // deterministic shuffled split
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    Rng rng(derive_seed(seed, 0x73706C6974ULL));  // split stream
    rng.shuffle(order);
    const auto train_count = static_cast<std::size_t>(
        std::floor(split_fraction * static_cast<double>(n)));
    dataset.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_count));
    dataset.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(train_count), order.end());
    std::sort(dataset.train_indices.begin(), dataset.train_indices.end());
    std::sort(dataset.test_indices.begin(), dataset.test_indices.end());

    // standardize with training-split statistics only
    for (Eigen::Index c = 0; c < feature_count; ++c) {
        double mean = 0.0;
        for (Eigen::Index i : dataset.train_indices) mean += dataset.features(i, c);
        const double train_n = std::max<double>(1.0, static_cast<double>(dataset.train_indices.size()));
        mean /= train_n;
        double variance = 0.0;
        for (Eigen::Index i : dataset.train_indices) {
            const double d = dataset.features(i, c) - mean;
            variance += d * d;
        }
        variance /= train_n;
        if (variance < 1e-12) {
            dataset.warnings.push_back("feature '" + dataset.feature_names[static_cast<std::size_t>(c)] +
                                       "' has zero variance on the training split; scaled to all zeros");
            dataset.features.col(c).setZero();
        } else {
            const double stddev = std::sqrt(variance);
            dataset.features.col(c) = (dataset.features.col(c).array() - mean) / stddev;
        }
    }
    return dataset;
}

Dataset load_dataset(const std::filesystem::path& csv_path, const std::filesystem::path& schema_path,
                     std::uint64_t seed, double split_fraction) {
    return preprocess(load_csv(csv_path, load_schema(schema_path)), seed, split_fraction);
}

void write_features_csv(std::ostream& out, const Dataset& dataset) {
    for (const auto& name : dataset.feature_names) out << name << ',';
    out << "label\n";
    char buf[32];
    for (Eigen::Index r = 0; r < dataset.features.rows(); ++r) {
        for (Eigen::Index c = 0; c < dataset.features.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.9g", dataset.features(r, c));
            out << buf << ',';
        }
        out << dataset.labels[r] << '\n';
    }
}

}  // namespace kcnas
