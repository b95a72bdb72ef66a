#pragma once

#include <cstdint>

#include "kcnas/data.hpp"
#include "kcnas/mlp.hpp"
#include "kcnas/oracle.hpp"
#include "kcnas/search_space.hpp"

namespace kcnas {

struct TrainConfig {
    int epochs = 100;
    int batch_size = 32;
    double learning_rate = 1e-3;
    std::uint64_t seed = 42;
    double split_fraction = 0.8;  // consumed by preprocess when building the Dataset
    Activation hidden_activation = Activation::relu;
    OptimizerKind optimizer = OptimizerKind::adam;
};

/// Builds the MLP described by `architecture`, trains it on the dataset's
/// training split with binary cross-entropy, and scores both splits at a 0.5
/// threshold. Deterministic for a fixed config (seed covers init and
/// shuffling; the split lives in the Dataset).
EvalRecord train_and_evaluate(const Architecture& architecture, const Dataset& dataset,
                              const TrainConfig& config, double alpha = 0.5);

/// Fraction of correct 0.5-threshold predictions over the given rows.
double model_accuracy(const Mlp<double>& model, const Dataset& dataset,
                      const std::vector<Eigen::Index>& indices);

/// Trained-pipeline oracle: derives the architecture for a grid point and
/// trains it. Each point gets its own RNG stream derived from (seed, point),
/// so concurrent evaluations cannot change results.
class MlpOracle final : public Oracle {
public:
    MlpOracle(SearchSpace space, const Dataset& dataset, TrainConfig config, double alpha = 0.5);

    EvalRecord evaluate(const GridPoint& point) override;
    const SearchSpace& space() const override { return space_; }
    bool concurrent_safe() const override { return true; }

private:
    SearchSpace space_;
    const Dataset& dataset_;
    TrainConfig config_;
    double alpha_;
};

}  // namespace kcnas
