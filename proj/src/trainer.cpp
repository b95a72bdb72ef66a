#include "kcnas/trainer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "kcnas/scoring.hpp"

namespace kcnas {

namespace {

using Mat = Mlp<double>::Mat;

// Gathers dataset rows into a column-per-sample batch.
void gather(const Dataset& dataset, const std::vector<Eigen::Index>& rows, std::size_t first,
            std::size_t count, Mat& batch, Mat& labels) {
    batch.resize(dataset.features.cols(), static_cast<Eigen::Index>(count));
    labels.resize(1, static_cast<Eigen::Index>(count));
    for (std::size_t j = 0; j < count; ++j) {
        const Eigen::Index row = rows[first + j];
        batch.col(static_cast<Eigen::Index>(j)) = dataset.features.row(row).transpose();
        labels(0, static_cast<Eigen::Index>(j)) = static_cast<double>(dataset.labels[row]);
    }
}

}  // namespace

double model_accuracy(const Mlp<double>& model, const Dataset& dataset,
                      const std::vector<Eigen::Index>& indices) {
    if (indices.empty()) return 0.0;
    constexpr std::size_t chunk = 1024;
    std::size_t correct = 0;
    Mat batch, labels;
    for (std::size_t first = 0; first < indices.size(); first += chunk) {
        const std::size_t count = std::min(chunk, indices.size() - first);
        gather(dataset, indices, first, count, batch, labels);
        const ForwardPass<double> pass = forward(model, batch);
        const Mat& probs = pass.probabilities();
        for (Eigen::Index j = 0; j < probs.cols(); ++j)
            if ((probs(0, j) > 0.5 ? 1.0 : 0.0) == labels(0, j)) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(indices.size());
}

EvalRecord train_and_evaluate(const Architecture& architecture, const Dataset& dataset,
                              const TrainConfig& config, double alpha) {
    if (config.epochs < 1) throw std::invalid_argument("train_and_evaluate: epochs must be >= 1");
    if (config.batch_size < 1) throw std::invalid_argument("train_and_evaluate: batch_size must be >= 1");
    if (config.learning_rate <= 0.0)
        throw std::invalid_argument("train_and_evaluate: learning_rate must be positive");
    if (architecture.input_dim != dataset.features.cols())
        throw std::invalid_argument("train_and_evaluate: architecture expects " +
                                    std::to_string(architecture.input_dim) + " features, dataset has " +
                                    std::to_string(dataset.features.cols()));
    if (dataset.train_indices.empty()) throw std::invalid_argument("train_and_evaluate: train split is empty");
    if (dataset.test_indices.empty()) throw std::invalid_argument("train_and_evaluate: test split is empty");

    const auto start_time = std::chrono::steady_clock::now();

    Mlp<double> model = init_model<double>(architecture, derive_seed(config.seed, 0x696E6974ULL),
                                           config.hidden_activation);
    AdamOptimizer<double> adam(model, config.learning_rate);
    Rng shuffle_rng(derive_seed(config.seed, 0x7368756666ULL));

    EvalRecord record;
    record.point = architecture.origin;
    record.architecture = architecture;
    record.loss_history.reserve(static_cast<std::size_t>(config.epochs));
    record.accuracy_history.reserve(static_cast<std::size_t>(config.epochs));

    std::vector<Eigen::Index> order = dataset.train_indices;
    const auto n_train = static_cast<double>(order.size());
    const auto batch_size = static_cast<std::size_t>(config.batch_size);
    Mat batch, labels;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double loss_sum = 0.0;
        double correct = 0.0;
        for (std::size_t first = 0; first < order.size(); first += batch_size) {
            const std::size_t count = std::min(batch_size, order.size() - first);
            gather(dataset, order, first, count, batch, labels);
            TrainStep<double> step = loss_and_gradients(model, batch, labels);
            if (!std::isfinite(step.loss))
                throw std::runtime_error("train_and_evaluate: non-finite training loss at epoch " +
                                         std::to_string(epoch + 1) + " (architecture " +
                                         to_string(architecture.origin) + ")");
            loss_sum += step.loss * static_cast<double>(count);
            for (Eigen::Index j = 0; j < step.probabilities.cols(); ++j)
                if ((step.probabilities(0, j) > 0.5 ? 1.0 : 0.0) == labels(0, j)) correct += 1.0;
            if (config.optimizer == OptimizerKind::adam) adam.step(model, step.gradients);
            else sgd_step(model, step.gradients, config.learning_rate);
        }
        record.loss_history.push_back(loss_sum / n_train);
        record.accuracy_history.push_back(correct / n_train);
    }

    record.train_accuracy = model_accuracy(model, dataset, dataset.train_indices);
    record.test_accuracy = model_accuracy(model, dataset, dataset.test_indices);
    record.k_completeness = k_completeness(architecture.origin.ihls, architecture.origin.df,
                                           {alpha, architecture.input_dim});
    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return record;
}

MlpOracle::MlpOracle(SearchSpace space, const Dataset& dataset, TrainConfig config, double alpha)
    : space_(std::move(space)), dataset_(dataset), config_(config), alpha_(alpha) {
    if (space_.input_dim() != dataset_.features.cols())
        throw std::invalid_argument("MlpOracle: space input_dim " + std::to_string(space_.input_dim()) +
                                    " does not match dataset feature count " +
                                    std::to_string(dataset_.features.cols()));
}

EvalRecord MlpOracle::evaluate(const GridPoint& point) {
    space_.index_of(point);  // out-of-grid points are contract violations
    const Architecture architecture = derive_architecture(point, space_.input_dim());
    TrainConfig config = config_;
    config.seed = derive_seed(config_.seed, static_cast<std::uint64_t>(point.ihls),
                              static_cast<std::uint64_t>(point.df));
    return train_and_evaluate(architecture, dataset_, config, alpha_);
}

}  // namespace kcnas
