#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "kcnas/data.hpp"

namespace kcnas {

// Deterministic generators for example datasets shaped like the two public
// benchmark CSVs (14 columns each, survival-style and churn-style labels).
// The real files are third-party downloads; these stand-ins share the column
// layout and class balance so the full pipeline can run out of the box.

/// 14-column passenger manifest, ~38% positive labels, missing ages/cabins,
/// quoted names containing commas. Default row count matches the public file.
void write_titanic_like_csv(const std::filesystem::path& path, int rows = 1309, std::uint64_t seed = 7);

/// 14-column customer table, ~20% positive labels, no missing values.
void write_churn_like_csv(const std::filesystem::path& path, int rows = 10000, std::uint64_t seed = 11);

/// Schemas matching the generated files: drop the two identifier-ish columns,
/// keep 11 feature columns plus the label.
std::vector<ColumnSchema> titanic_schema();
std::vector<ColumnSchema> churn_schema();

/// Writes a schema as the JSON format load_schema reads.
void write_schema_json(const std::filesystem::path& path, const std::vector<ColumnSchema>& schema);

}  // namespace kcnas
