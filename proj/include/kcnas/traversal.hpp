#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kcnas/oracle.hpp"
#include "kcnas/search_space.hpp"

namespace kcnas {

enum class AlgorithmId { brute_force, diagonal, zigzag };

std::string_view algorithm_name(AlgorithmId id);
AlgorithmId parse_algorithm(std::string_view name);  // accepts brute|brute_force|diagonal|zigzag

struct SearchOptions {
    enum class Metric { test_accuracy, train_accuracy };
    Metric metric = Metric::test_accuracy;
    /// Zigzag anchor; defaults to the lower-left corner (smallest ihls, smallest df).
    std::optional<GridPoint> start;
    /// Zigzag pass cap; 0 means |ihls_values| + |df_values|.
    int pass_cap = 0;
};

/// Outcome of one traversal run. `visit_log` lists every cell processed in
/// order (zigzag revisits included); `evaluations` counts genuine oracle
/// invocations only, and `records` holds them in evaluation order.
struct SearchResult {
    AlgorithmId algorithm = AlgorithmId::brute_force;
    EvalRecord best;
    std::vector<GridPoint> visit_log;
    std::vector<EvalRecord> records;
    std::int64_t evaluations = 0;
    double elapsed_seconds = 0.0;
    int passes = 0;
    bool converged = true;
};

/// Cells whose (df_index + ihls_index) parity is odd, in row-major order —
/// the alternating-diagonal subset evaluated by the diagonal traversal.
std::vector<GridPoint> diagonal_cells(const SearchSpace& space);

/// Maximal run through `start` in the (+1 ihls, +1 df) direction, ordered
/// from the lower-left end to the upper-right end.
std::vector<GridPoint> primary_diagonal(const SearchSpace& space, const GridPoint& start);

/// Maximal run through `start` in the (+1 ihls, -1 df) direction, ordered
/// from the upper-left end to the lower-right end.
std::vector<GridPoint> secondary_diagonal(const SearchSpace& space, const GridPoint& start);

/// Evaluates every cell once, row-major over (df, ihls) ascending.
SearchResult brute_force_search(const SearchSpace& space, Oracle& oracle, const SearchOptions& options = {});

/// Evaluates exactly diagonal_cells(space).
SearchResult diagonal_search(const SearchSpace& space, Oracle& oracle, const SearchOptions& options = {});

/// Online traversal alternating primary and secondary diagonals anchored at
/// the running optimum. A pass that fails to move the optimum to a newly
/// evaluated cell terminates the search; revisited cells are served from a
/// run-local cache and excluded from the genuine-invocation count.
SearchResult zigzag_search(const SearchSpace& space, Oracle& oracle, const SearchOptions& options = {});

nlohmann::ordered_json to_json(const SearchResult& result);

}  // namespace kcnas
