#include "kcnas/traversal.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <unordered_map>

namespace kcnas {

std::string_view algorithm_name(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::brute_force: return "brute_force";
        case AlgorithmId::diagonal: return "diagonal";
        case AlgorithmId::zigzag: return "zigzag";
    }
    return "unknown";
}

AlgorithmId parse_algorithm(std::string_view name) {
    if (name == "brute" || name == "brute_force") return AlgorithmId::brute_force;
    if (name == "diagonal") return AlgorithmId::diagonal;
    if (name == "zigzag") return AlgorithmId::zigzag;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                                "' (expected brute|diagonal|zigzag)");
}

namespace {

double metric_of(const EvalRecord& record, const SearchOptions& options) {
    return options.metric == SearchOptions::Metric::train_accuracy ? record.train_accuracy
                                                                   : record.test_accuracy;
}

// Run-local memoization: revisited cells cost nothing and do not count as
// genuine invocations.
class RunCache {
public:
    explicit RunCache(Oracle& oracle) : oracle_(oracle) {}

    const EvalRecord& get(const GridPoint& point, SearchResult& result) {
        auto it = records_.find(cell_key(point));
        if (it != records_.end()) return result.records[it->second];
        EvalRecord record = oracle_.evaluate(point);
        records_.emplace(cell_key(point), result.records.size());
        result.records.push_back(std::move(record));
        ++result.evaluations;
        return result.records.back();
    }

    bool seen(const GridPoint& point) const { return records_.contains(cell_key(point)); }

private:
    Oracle& oracle_;
    std::unordered_map<std::uint64_t, std::size_t> records_;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Evaluates a fixed cell list in order; argmax by strict >, first-in-order wins ties.
SearchResult sweep(AlgorithmId id, const std::vector<GridPoint>& cells, Oracle& oracle,
                   const SearchOptions& options) {
    Stopwatch timer;
    SearchResult result;
    result.algorithm = id;
    result.passes = 1;
    RunCache cache(oracle);

    double best_metric = 0.0;
    std::ptrdiff_t best_index = -1;
    for (const GridPoint& point : cells) {
        const EvalRecord& record = cache.get(point, result);
        result.visit_log.push_back(point);
        if (best_index < 0 || metric_of(record, options) > best_metric) {
            best_metric = metric_of(record, options);
            best_index = static_cast<std::ptrdiff_t>(result.records.size()) - 1;
        }
    }
    if (best_index < 0) throw std::invalid_argument("search has no cells to evaluate");
    result.best = result.records[static_cast<std::size_t>(best_index)];
    result.elapsed_seconds = timer.seconds();
    return result;
}

}  // namespace

std::vector<GridPoint> diagonal_cells(const SearchSpace& space) {
    std::vector<GridPoint> cells;
    for (Eigen::Index r = 0; r < space.rows(); ++r)
        for (Eigen::Index c = 0; c < space.cols(); ++c)
            if ((r + c) % 2 == 1) cells.push_back(space.at(c, r));
    return cells;
}

std::vector<GridPoint> primary_diagonal(const SearchSpace& space, const GridPoint& start) {
    const SearchSpace::Index idx = space.index_of(start);
    const Eigen::Index t_min = -std::min(idx.ihls, idx.df);
    const Eigen::Index t_max = std::min(space.cols() - 1 - idx.ihls, space.rows() - 1 - idx.df);
    std::vector<GridPoint> cells;
    for (Eigen::Index t = t_min; t <= t_max; ++t) cells.push_back(space.at(idx.ihls + t, idx.df + t));
    return cells;
}

std::vector<GridPoint> secondary_diagonal(const SearchSpace& space, const GridPoint& start) {
    const SearchSpace::Index idx = space.index_of(start);
    const Eigen::Index t_min = -std::min(idx.ihls, space.rows() - 1 - idx.df);
    const Eigen::Index t_max = std::min(space.cols() - 1 - idx.ihls, idx.df);
    std::vector<GridPoint> cells;
    for (Eigen::Index t = t_min; t <= t_max; ++t) cells.push_back(space.at(idx.ihls + t, idx.df - t));
    return cells;
}

SearchResult brute_force_search(const SearchSpace& space, Oracle& oracle, const SearchOptions& options) {
    std::vector<GridPoint> cells;
    cells.reserve(space.size());
    for (Eigen::Index r = 0; r < space.rows(); ++r)
        for (Eigen::Index c = 0; c < space.cols(); ++c) cells.push_back(space.at(c, r));
    return sweep(AlgorithmId::brute_force, cells, oracle, options);
}

SearchResult diagonal_search(const SearchSpace& space, Oracle& oracle, const SearchOptions& options) {
    std::vector<GridPoint> cells = diagonal_cells(space);
    if (cells.empty())
        throw std::invalid_argument("diagonal_search: grid has no odd-parity cells (1x1 grid)");
    return sweep(AlgorithmId::diagonal, cells, oracle, options);
}

SearchResult zigzag_search(const SearchSpace& space, Oracle& oracle, const SearchOptions& options) {
    Stopwatch timer;
    SearchResult result;
    result.algorithm = AlgorithmId::zigzag;
    RunCache cache(oracle);

    GridPoint start = options.start.value_or(space.at(0, 0));
    space.index_of(start);  // start must be inside the space
    const int pass_cap = options.pass_cap > 0
                             ? options.pass_cap
                             : static_cast<int>(space.cols() + space.rows());

    double max_metric = 0.0;
    GridPoint optimal = start;
    bool primary = true;
    result.converged = false;

    while (result.passes < pass_cap) {
        ++result.passes;
        const std::vector<GridPoint> diagonal =
            primary ? primary_diagonal(space, start) : secondary_diagonal(space, start);
        bool improved = false;
        for (const GridPoint& point : diagonal) {
            const EvalRecord& record = cache.get(point, result);
            result.visit_log.push_back(point);
            if (metric_of(record, options) > max_metric) {
                max_metric = metric_of(record, options);
                optimal = point;
                start = point;
                improved = true;
            }
        }
        // A pass that never relocates the optimum found only previously
        // recorded ground; the search has converged.
        if (!improved) {
            result.converged = true;
            break;
        }
        primary = !primary;
    }

    result.best = cache.get(optimal, result);  // already evaluated in pass 1 or later
    result.elapsed_seconds = timer.seconds();
    return result;
}

nlohmann::ordered_json to_json(const SearchResult& result) {
    nlohmann::ordered_json best{
        {"point", {{"ihls", result.best.point.ihls}, {"df", result.best.point.df}}},
        {"architecture",
         {{"input_dim", result.best.architecture.input_dim},
          {"hidden_sizes", result.best.architecture.hidden_sizes},
          {"output_dim", result.best.architecture.output_dim}}},
        {"train_accuracy", result.best.train_accuracy},
        {"test_accuracy", result.best.test_accuracy},
        {"k_completeness", result.best.k_completeness},
    };
    nlohmann::ordered_json visits = nlohmann::ordered_json::array();
    for (const GridPoint& p : result.visit_log) visits.push_back({p.ihls, p.df});
    return nlohmann::ordered_json{
        {"algorithm", std::string(algorithm_name(result.algorithm))},
        {"best", std::move(best)},
        {"evaluations", result.evaluations},
        {"visit_log", std::move(visits)},
        {"passes", result.passes},
        {"converged", result.converged},
        {"elapsed_seconds", result.elapsed_seconds},
    };
}

}  // namespace kcnas
