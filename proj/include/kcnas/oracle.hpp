#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <future>
#include <iosfwd>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kcnas/search_space.hpp"

namespace kcnas {

/// The verdict on one candidate: accuracies, per-epoch histories (empty for
/// synthetic oracles), training duration and the completeness score.
struct EvalRecord {
    GridPoint point;
    Architecture architecture;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    std::vector<double> loss_history;
    std::vector<double> accuracy_history;
    double duration_seconds = 0.0;
    double k_completeness = 0.0;

    friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

/// Counters for verifying complexity claims as evaluation counts.
/// `invocations` counts only genuine (non-cached) evaluations.
struct OracleStats {
    std::int64_t invocations = 0;
    std::int64_t cache_hits = 0;
    double total_duration_seconds = 0.0;
};

/// Candidate-evaluation contract shared by every traversal algorithm.
/// Evaluating a point outside the oracle's space is a contract violation and
/// throws; results for a fixed point and seed are deterministic.
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual EvalRecord evaluate(const GridPoint& point) = 0;
    virtual const SearchSpace& space() const = 0;
    /// Whether concurrent evaluate() calls are permitted.
    virtual bool concurrent_safe() const { return false; }
};

/// Memoizing wrapper: repeated evaluations of the same point return the
/// stored record without re-invoking the inner oracle. Safe under concurrent
/// use; the inner oracle is invoked at most once per point even when several
/// threads race on it.
class CachingOracle final : public Oracle {
public:
    explicit CachingOracle(Oracle& inner) : inner_(inner) {}

    EvalRecord evaluate(const GridPoint& point) override;
    const SearchSpace& space() const override { return inner_.space(); }
    bool concurrent_safe() const override { return true; }

    OracleStats stats() const;
    void clear();

private:
    Oracle& inner_;
    mutable std::mutex mutex_;
    std::unordered_map<std::uint64_t, std::shared_future<EvalRecord>> cells_;
    OracleStats stats_;
};

enum class SurfaceKind { unimodal, multimodal, constant, checkerboard_adversarial, noisy };

std::string_view surface_kind_name(SurfaceKind kind);
SurfaceKind parse_surface_kind(std::string_view name);  // throws on unknown kind

/// Synthetic accuracy surface standing in for a trained-model pipeline.
/// Values are indexed (df_index, ihls_index); every value is finite and in (0, 1).
class SurfaceOracle final : public Oracle {
public:
    SurfaceOracle(SearchSpace space, Eigen::MatrixXd values, std::string description, double alpha = 0.5);

    EvalRecord evaluate(const GridPoint& point) override;
    const SearchSpace& space() const override { return space_; }
    bool concurrent_safe() const override { return true; }

    /// rows = df values, cols = ihls values
    const Eigen::MatrixXd& values() const { return values_; }
    const std::string& description() const { return description_; }

    /// CSV export for plotting: header row of ihls values, one row per df value.
    void write_csv(std::ostream& out) const;

private:
    SearchSpace space_;
    Eigen::MatrixXd values_;
    std::string description_;
    double alpha_;
};

/// Deterministic surface for (kind, space, seed).
SurfaceOracle make_surface(SurfaceKind kind, const SearchSpace& space, std::uint64_t seed);

/// Single Gaussian bump with an explicit peak cell; the peak cell is the
/// unique argmax by construction.
SurfaceOracle unimodal_surface(const SearchSpace& space, Eigen::Index peak_ihls_index,
                               Eigen::Index peak_df_index, double sigma, double base, double amplitude);

}  // namespace kcnas
