#include "kcnas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "kcnas/rng.hpp"
#include "kcnas/scoring.hpp"

namespace kcnas {

EvalRecord CachingOracle::evaluate(const GridPoint& point) {
    const std::uint64_t key = cell_key(point);
    std::shared_future<EvalRecord> future;
    std::promise<EvalRecord> promise;
    bool owner = false;

    {
        std::lock_guard lock(mutex_);
        auto it = cells_.find(key);
        if (it != cells_.end()) {
            ++stats_.cache_hits;
            future = it->second;
        } else {
            future = promise.get_future().share();
            cells_.emplace(key, future);
            ++stats_.invocations;
            owner = true;
        }
    }

    if (owner) {
        try {
            EvalRecord record = inner_.evaluate(point);
            {
                std::lock_guard lock(mutex_);
                stats_.total_duration_seconds += record.duration_seconds;
            }
            promise.set_value(std::move(record));
        } catch (...) {
            promise.set_exception(std::current_exception());
        }
    }
    return future.get();
}

OracleStats CachingOracle::stats() const {
    std::lock_guard lock(mutex_);
    return stats_;
}

void CachingOracle::clear() {
    std::lock_guard lock(mutex_);
    cells_.clear();
    stats_ = OracleStats{};
}

std::string_view surface_kind_name(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::unimodal: return "unimodal";
        case SurfaceKind::multimodal: return "multimodal";
        case SurfaceKind::constant: return "constant";
        case SurfaceKind::checkerboard_adversarial: return "checkerboard-adversarial";
        case SurfaceKind::noisy: return "noisy";
    }
    return "unknown";
}

SurfaceKind parse_surface_kind(std::string_view name) {
    if (name == "unimodal") return SurfaceKind::unimodal;
    if (name == "multimodal") return SurfaceKind::multimodal;
    if (name == "constant") return SurfaceKind::constant;
    if (name == "checkerboard-adversarial" || name == "checkerboard")
        return SurfaceKind::checkerboard_adversarial;
    if (name == "noisy") return SurfaceKind::noisy;
    throw std::invalid_argument("unknown surface kind '" + std::string(name) +
                                "' (expected unimodal|multimodal|constant|checkerboard-adversarial|noisy)");
}

SurfaceOracle::SurfaceOracle(SearchSpace space, Eigen::MatrixXd values, std::string description, double alpha)
    : space_(std::move(space)), values_(std::move(values)), description_(std::move(description)), alpha_(alpha) {
    if (values_.rows() != space_.rows() || values_.cols() != space_.cols())
        throw std::invalid_argument("SurfaceOracle: value grid does not match the search space");
    if (!values_.allFinite())
        throw std::invalid_argument("SurfaceOracle: surface contains non-finite values");
}

EvalRecord SurfaceOracle::evaluate(const GridPoint& point) {
    const SearchSpace::Index idx = space_.index_of(point);
    const double value = values_(idx.df, idx.ihls);

    EvalRecord record;
    record.point = point;
    record.architecture = derive_architecture(point, space_.input_dim());
    record.train_accuracy = value;
    record.test_accuracy = value;
    record.duration_seconds = 0.0;
    record.k_completeness = k_completeness(point.ihls, point.df, {alpha_, space_.input_dim()});
    return record;
}

void SurfaceOracle::write_csv(std::ostream& out) const {
    out << "df";
    for (int ihls : space_.ihls_values()) out << ',' << ihls;
    out << '\n';
    for (Eigen::Index r = 0; r < values_.rows(); ++r) {
        out << space_.df_values()[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < values_.cols(); ++c) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.9g", values_(r, c));
            out << ',' << buf;
        }
        out << '\n';
    }
}

namespace {

void add_bump(Eigen::MatrixXd& grid, double row, double col, double sigma, double amplitude) {
    for (Eigen::Index r = 0; r < grid.rows(); ++r)
        for (Eigen::Index c = 0; c < grid.cols(); ++c) {
            const double dr = static_cast<double>(r) - row;
            const double dc = static_cast<double>(c) - col;
            grid(r, c) += amplitude * std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
        }
}

Eigen::MatrixXd unimodal_grid(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    const double span = static_cast<double>(std::min(rows, cols));
    const double sigma = rng.uniform(0.55, 0.80) * std::max(2.0, span);
    const double base = rng.uniform(0.30, 0.50);
    const double amplitude = rng.uniform(0.22, 0.36);
    const auto peak_r = static_cast<double>(rng.uniform_int(static_cast<std::uint64_t>(rows)));
    const auto peak_c = static_cast<double>(rng.uniform_int(static_cast<std::uint64_t>(cols)));
    Eigen::MatrixXd grid = Eigen::MatrixXd::Constant(rows, cols, base);
    add_bump(grid, peak_r, peak_c, sigma, amplitude);
    return grid;
}

}  // namespace

SurfaceOracle unimodal_surface(const SearchSpace& space, Eigen::Index peak_ihls_index,
                               Eigen::Index peak_df_index, double sigma, double base, double amplitude) {
    if (peak_ihls_index < 0 || peak_ihls_index >= space.cols() || peak_df_index < 0 || peak_df_index >= space.rows())
        throw std::invalid_argument("unimodal_surface: peak index outside grid");
    if (sigma <= 0.0 || amplitude <= 0.0)
        throw std::invalid_argument("unimodal_surface: sigma and amplitude must be positive");
    Eigen::MatrixXd grid = Eigen::MatrixXd::Constant(space.rows(), space.cols(), base);
    add_bump(grid, static_cast<double>(peak_df_index), static_cast<double>(peak_ihls_index), sigma, amplitude);
    return SurfaceOracle(space, std::move(grid), "unimodal(explicit peak)");
}

SurfaceOracle make_surface(SurfaceKind kind, const SearchSpace& space, std::uint64_t seed) {
    if (space.size() == 0) throw std::invalid_argument("make_surface: space is empty");
    const Eigen::Index rows = space.rows();
    const Eigen::Index cols = space.cols();
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(kind) + 1));
    Eigen::MatrixXd grid;

    switch (kind) {
        case SurfaceKind::constant:
            grid = Eigen::MatrixXd::Constant(rows, cols, 0.5);
            break;
        case SurfaceKind::unimodal:
            grid = unimodal_grid(rows, cols, rng);
            break;
        case SurfaceKind::multimodal: {
            const int bumps = 2 + static_cast<int>(rng.uniform_int(3));
            grid = Eigen::MatrixXd::Constant(rows, cols, rng.uniform(0.20, 0.35));
            const double span = std::max(2.0, static_cast<double>(std::min(rows, cols)));
            for (int b = 0; b < bumps; ++b) {
                const auto r = static_cast<double>(rng.uniform_int(static_cast<std::uint64_t>(rows)));
                const auto c = static_cast<double>(rng.uniform_int(static_cast<std::uint64_t>(cols)));
                add_bump(grid, r, c, rng.uniform(0.15, 0.40) * span, rng.uniform(0.15, 0.30));
            }
            grid = grid.cwiseMin(0.97);
            break;
        }
        case SurfaceKind::checkerboard_adversarial: {
            grid = unimodal_grid(rows, cols, rng);
            // Global maximum placed on an even-parity cell, which the
            // diagonal traversal's (row + col) odd rule never visits.
            std::vector<std::pair<Eigen::Index, Eigen::Index>> even_cells;
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c)
                    if ((r + c) % 2 == 0) even_cells.emplace_back(r, c);
            const auto pick = even_cells[static_cast<std::size_t>(rng.uniform_int(even_cells.size()))];
            grid = grid.cwiseMin(0.88);
            grid(pick.first, pick.second) = 0.88 + rng.uniform(0.04, 0.09);
            break;
        }
        case SurfaceKind::noisy: {
            grid = unimodal_grid(rows, cols, rng);
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c)
                    grid(r, c) = std::clamp(grid(r, c) + rng.uniform(-0.02, 0.02), 0.01, 0.98);
            break;
        }
    }

    std::string description = std::string(surface_kind_name(kind)) + "(seed=" + std::to_string(seed) + ")";
    return SurfaceOracle(space, std::move(grid), std::move(description));
}

}  // namespace kcnas
