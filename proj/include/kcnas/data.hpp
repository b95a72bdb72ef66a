#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace kcnas {

enum class ColumnKind { numeric, categorical, drop, label };

std::string_view column_kind_name(ColumnKind kind);
ColumnKind parse_column_kind(std::string_view name);

/// How one CSV column is treated. `categories` optionally pins the encoding
/// order for categorical columns; when empty the sorted distinct values
/// observed in the data are used.
struct ColumnSchema {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::vector<std::string> categories;
};

/// Loads a schema from a JSON array of {name, kind, categories?} objects.
/// Exactly one column must have kind "label".
std::vector<ColumnSchema> load_schema(const std::filesystem::path& path);
std::vector<ColumnSchema> schema_from_json_text(const std::string& text, const std::string& source_name);

/// One typed, imputed column. Numeric and label columns fill
/// `numeric_values`; categorical columns fill `category_values`.
struct RawColumn {
    ColumnSchema schema;
    std::vector<double> numeric_values;
    std::vector<std::string> category_values;
};

/// Typed table produced by load_csv: drop columns removed, missing numerics
/// median-imputed, missing categoricals imputed with the most frequent value.
struct RawTable {
    std::size_t row_count = 0;
    std::vector<RawColumn> columns;  // schema order, label included
    std::string source;
};

RawTable load_csv(const std::filesystem::path& path, const std::vector<ColumnSchema>& schema);

/// Preprocessed dataset: encoded, standardized features plus a deterministic
/// shuffled train/test split. Scaling statistics come from the training
/// split only.
struct Dataset {
    Eigen::MatrixXd features;  // rows = samples, cols = encoded features
    Eigen::VectorXi labels;    // 0/1
    std::vector<std::string> feature_names;
    std::vector<Eigen::Index> train_indices;
    std::vector<Eigen::Index> test_indices;
    std::string source;
    std::vector<std::string> warnings;
};

Dataset preprocess(const RawTable& table, std::uint64_t seed, double split_fraction);

/// load_csv + preprocess in one call.
Dataset load_dataset(const std::filesystem::path& csv_path, const std::filesystem::path& schema_path,
                     std::uint64_t seed, double split_fraction);

/// Dumps the preprocessed feature matrix (with a label column) for inspection.
void write_features_csv(std::ostream& out, const Dataset& dataset);

}  // namespace kcnas
