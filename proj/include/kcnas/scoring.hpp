#pragma once

#include <cmath>
#include <stdexcept>

namespace kcnas {

/// Mixing weight and input width for the completeness score.
struct ScoreParams {
    double alpha = 0.5;  // jumping factor and 1/DF weighted equally
    int input_dim = 1;
};

/// Ratio of the first hidden layer to the input layer; > 1 means the first
/// hidden representation is wider than the input (overcomplete direction).
inline double jumping_factor(int ihls, int input_dim) {
    if (ihls < 1) throw std::invalid_argument("jumping_factor: ihls must be >= 1");
    if (input_dim < 1) throw std::invalid_argument("jumping_factor: input_dim must be >= 1");
    return static_cast<double>(ihls) / static_cast<double>(input_dim);
}

/// k-completeness = alpha * jumping_factor + (1 - alpha) / df.
/// High scores mark wide, slowly shrinking (overcomplete) candidates.
inline double k_completeness(int ihls, int df, const ScoreParams& params) {
    if (df < 1) throw std::invalid_argument("k_completeness: df must be >= 1");
    if (params.alpha < 0.0 || params.alpha > 1.0)
        throw std::invalid_argument("k_completeness: alpha must be in [0, 1]");
    return params.alpha * jumping_factor(ihls, params.input_dim) +
           (1.0 - params.alpha) / static_cast<double>(df);
}

/// Rounds to the given number of decimals; reports use 4 to match table style.
inline double round_to(double x, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::round(x * scale) / scale;
}

}  // namespace kcnas
