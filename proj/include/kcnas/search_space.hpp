#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcnas {

/// One candidate location in the 2D search grid: initial hidden layer size
/// (x axis) and division factor (y axis). Both are grid *values*, not indices.
struct GridPoint {
    int ihls = 1;
    int df = 1;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

inline std::string to_string(const GridPoint& p) {
    return "(ihls=" + std::to_string(p.ihls) + ", df=" + std::to_string(p.df) + ")";
}

/// Packs a grid point into a single map key.
inline std::uint64_t cell_key(const GridPoint& p) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.ihls)) << 32) |
           static_cast<std::uint32_t>(p.df);
}

/// Concrete layer-size vector derived from a grid point. The output layer
/// (always one node for binary classification) is carried separately and is
/// never part of the division chain.
struct Architecture {
    int input_dim = 0;
    std::vector<int> hidden_sizes;
    int output_dim = 1;
    GridPoint origin;

    friend bool operator==(const Architecture&, const Architecture&) = default;
};

/// The rectangular candidate grid. Rows are division factors, columns are
/// initial hidden layer sizes; both axis value lists are strictly increasing.
class SearchSpace {
public:
    SearchSpace(std::vector<int> ihls_values, std::vector<int> df_values, int input_dim)
        : ihls_values_(std::move(ihls_values)), df_values_(std::move(df_values)), input_dim_(input_dim) {
        require_axis(ihls_values_, "ihls_values");
        require_axis(df_values_, "df_values");
        if (input_dim_ < 1) throw std::invalid_argument("SearchSpace: input_dim must be >= 1");
    }

    const std::vector<int>& ihls_values() const { return ihls_values_; }
    const std::vector<int>& df_values() const { return df_values_; }
    int input_dim() const { return input_dim_; }
    int output_dim() const { return 1; }

    /// Grid rows = division factors.
    Eigen::Index rows() const { return static_cast<Eigen::Index>(df_values_.size()); }
    /// Grid columns = initial hidden layer sizes.
    Eigen::Index cols() const { return static_cast<Eigen::Index>(ihls_values_.size()); }
    std::size_t size() const { return ihls_values_.size() * df_values_.size(); }

    struct Index {
        Eigen::Index ihls = 0;
        Eigen::Index df = 0;
        friend bool operator==(const Index&, const Index&) = default;
    };

    GridPoint at(Eigen::Index ihls_index, Eigen::Index df_index) const {
        if (ihls_index < 0 || ihls_index >= cols() || df_index < 0 || df_index >= rows())
            throw std::out_of_range("SearchSpace::at: index outside grid");
        return {ihls_values_[static_cast<std::size_t>(ihls_index)],
                df_values_[static_cast<std::size_t>(df_index)]};
    }

    bool contains(const GridPoint& p) const {
        return find_value(ihls_values_, p.ihls) >= 0 && find_value(df_values_, p.df) >= 0;
    }

    /// Maps a grid point back to its axis indices; out-of-grid points are a
    /// contract violation, never clamped.
    Index index_of(const GridPoint& p) const {
        Eigen::Index ci = find_value(ihls_values_, p.ihls);
        Eigen::Index ri = find_value(df_values_, p.df);
        if (ci < 0 || ri < 0)
            throw std::invalid_argument("grid point " + to_string(p) + " is not in the search space");
        return {ci, ri};
    }

private:
    static void require_axis(const std::vector<int>& axis, const char* name) {
        if (axis.empty()) throw std::invalid_argument(std::string("SearchSpace: ") + name + " must be non-empty");
        for (std::size_t i = 0; i < axis.size(); ++i) {
            if (axis[i] < 1)
                throw std::invalid_argument(std::string("SearchSpace: ") + name + " entries must be >= 1");
            if (i > 0 && axis[i] <= axis[i - 1])
                throw std::invalid_argument(std::string("SearchSpace: ") + name + " must be strictly increasing");
        }
    }

    static Eigen::Index find_value(const std::vector<int>& axis, int value) {
        for (std::size_t i = 0; i < axis.size(); ++i)
            if (axis[i] == value) return static_cast<Eigen::Index>(i);
        return -1;
    }

    std::vector<int> ihls_values_;
    std::vector<int> df_values_;
    int input_dim_;
};

/// Derives the hidden-layer chain for a grid point: start at ihls and divide
/// by df, appending each quotient while it is >= 1. df == 1 means a single
/// hidden layer (dividing by one never shrinks the chain).
inline Architecture derive_architecture(const GridPoint& point, int input_dim) {
    if (point.ihls < 1) throw std::invalid_argument("derive_architecture: ihls must be >= 1");
    if (point.df < 1) throw std::invalid_argument("derive_architecture: df must be >= 1");
    if (input_dim < 1) throw std::invalid_argument("derive_architecture: input_dim must be >= 1");

    Architecture arch;
    arch.input_dim = input_dim;
    arch.output_dim = 1;
    arch.origin = point;
    arch.hidden_sizes.push_back(point.ihls);
    if (point.df >= 2) {
        for (int next = point.ihls / point.df; next >= 1; next /= point.df)
            arch.hidden_sizes.push_back(next);
    }
    return arch;
}

/// Builds the default grid: ihls = 1..max_ihls, df = powers of two from 2 up
/// to 2^df_exponent_max, optionally prefixed with 1.
inline SearchSpace build_space(int max_ihls, int df_exponent_max, bool include_df_one, int input_dim) {
    if (max_ihls < 1) throw std::invalid_argument("build_space: max_ihls must be >= 1");
    if (df_exponent_max < 0) throw std::invalid_argument("build_space: df_exponent_max must be >= 0");

    std::vector<int> ihls(static_cast<std::size_t>(max_ihls));
    for (int i = 0; i < max_ihls; ++i) ihls[static_cast<std::size_t>(i)] = i + 1;

    std::vector<int> dfs;
    if (include_df_one) dfs.push_back(1);
    for (int e = 1, v = 2; e <= df_exponent_max; ++e, v *= 2) dfs.push_back(v);
    if (dfs.empty())
        throw std::invalid_argument("build_space: df axis is empty (df_exponent_max == 0 without include_df_one)");

    return SearchSpace(std::move(ihls), std::move(dfs), input_dim);
}

}  // namespace kcnas
