#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "kcnas/search_space.hpp"
#include "kcnas/trainer.hpp"
#include "kcnas/traversal.hpp"

namespace kcnas {

/// Everything needed to reproduce one run: manifest + code version implies
/// identical outputs. Exactly one of `dataset_csv` / `surface` is set.
struct RunManifest {
    std::string dataset_csv;
    std::string schema_json;
    std::string surface;  // surface kind name for synthetic runs
    int max_ihls = 64;
    int df_exponent_max = 6;
    bool include_df_one = false;
    int input_dim = 11;  // used for synthetic-surface runs; datasets bring their own width
    double alpha = 0.5;
    std::uint64_t seed = 42;
    std::vector<AlgorithmId> algorithms;
    TrainConfig train;
    std::string out_dir;
};

/// Checks every manifest field before any dataset loading or training begins.
void validate(const RunManifest& manifest);

nlohmann::ordered_json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& doc);

struct AlgorithmRow {
    AlgorithmId algorithm = AlgorithmId::brute_force;
    double completion_seconds = 0.0;
    std::int64_t evaluations = 0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    double k_completeness = 0.0;
    GridPoint best_point;
    std::vector<int> best_hidden_sizes;
};

/// Side-by-side table over the three traversal algorithms plus relative
/// speed ratios computed from the table's own cells.
struct ComparisonReport {
    std::vector<AlgorithmRow> rows;
    double seconds_brute_over_diagonal = 0.0;
    double seconds_brute_over_zigzag = 0.0;
    double seconds_diagonal_over_zigzag = 0.0;
    double evals_brute_over_diagonal = 0.0;
    double evals_brute_over_zigzag = 0.0;
    double evals_diagonal_over_zigzag = 0.0;
};

nlohmann::ordered_json to_json(const ComparisonReport& report);

/// Runs manifest.algorithms.front() and writes the run directory:
/// manifest.json, result.json (deterministic), timing.json (wall clock),
/// visit_log.csv, best_history.csv, grid.csv, and surface.csv for synthetic
/// runs. Returns the in-memory result.
SearchResult run_search(const RunManifest& manifest);

/// Runs all three algorithms on the same space and oracle inputs (each run
/// has a fresh evaluation cache) and writes per-algorithm run directories
/// plus comparison.json / comparison.csv.
ComparisonReport compare_algorithms(const RunManifest& manifest);

}  // namespace kcnas
