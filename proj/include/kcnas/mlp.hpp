#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "kcnas/rng.hpp"
#include "kcnas/search_space.hpp"

namespace kcnas {

enum class Activation { relu, sigmoid, tanh };
enum class OptimizerKind { sgd, adam };

inline std::string_view activation_name(Activation a) {
    switch (a) {
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
        case Activation::tanh: return "tanh";
    }
    return "unknown";
}

inline Activation parse_activation(std::string_view name) {
    if (name == "relu") return Activation::relu;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "tanh") return Activation::tanh;
    throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

inline std::string_view optimizer_name(OptimizerKind o) {
    return o == OptimizerKind::sgd ? "sgd" : "adam";
}

inline OptimizerKind parse_optimizer(std::string_view name) {
    if (name == "sgd") return OptimizerKind::sgd;
    if (name == "adam") return OptimizerKind::adam;
    throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

/// Dense feedforward net for binary classification. Weight matrix i maps
/// layer i to layer i+1 and has shape (layer_sizes[i+1] x layer_sizes[i]);
/// the output layer is a single logistic unit.
template <class Scalar>
struct Mlp {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    std::vector<int> layer_sizes;  // input, hidden..., output
    std::vector<Mat> weights;
    std::vector<Vec> biases;
    Activation hidden_activation = Activation::relu;

    Eigen::Index layer_count() const { return static_cast<Eigen::Index>(weights.size()); }
    int input_dim() const { return layer_sizes.front(); }
};

/// Seeded init: weights uniform in (-1/sqrt(fan_in), 1/sqrt(fan_in)), biases zero.
template <class Scalar>
Mlp<Scalar> init_model(const Architecture& arch, std::uint64_t seed,
                       Activation hidden_activation = Activation::relu) {
    using Mat = typename Mlp<Scalar>::Mat;
    using Vec = typename Mlp<Scalar>::Vec;
    Mlp<Scalar> model;
    model.hidden_activation = hidden_activation;
    model.layer_sizes.push_back(arch.input_dim);
    for (int h : arch.hidden_sizes) {
        if (h < 1) throw std::invalid_argument("init_model: hidden sizes must be >= 1");
        model.layer_sizes.push_back(h);
    }
    model.layer_sizes.push_back(arch.output_dim);

    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
        const int fan_in = model.layer_sizes[l];
        const int fan_out = model.layer_sizes[l + 1];
        const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        Mat w(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c) w(r, c) = static_cast<Scalar>(rng.uniform(-scale, scale));
        model.weights.push_back(std::move(w));
        model.biases.push_back(Vec::Zero(fan_out));
    }
    return model;
}

template <class Scalar>
struct ForwardPass {
    using Mat = typename Mlp<Scalar>::Mat;
    std::vector<Mat> preactivations;  // z per layer
    std::vector<Mat> activations;     // activations[0] is the input batch
    /// Output probabilities, clamped into the open interval (0, 1).
    const Mat& probabilities() const { return activations.back(); }
};

namespace detail {

template <class Scalar, class Mat>
Mat apply_activation(Activation act, const Mat& z) {
    switch (act) {
        case Activation::relu: return z.cwiseMax(Scalar(0));
        case Activation::sigmoid:
            return z.unaryExpr([](Scalar v) { return Scalar(1) / (Scalar(1) + std::exp(-v)); });
        case Activation::tanh: return z.array().tanh().matrix();
    }
    return z;
}

// Derivative expressed through the activation value (and preactivation for relu).
template <class Scalar, class Mat>
Mat activation_derivative(Activation act, const Mat& z, const Mat& a) {
    switch (act) {
        case Activation::relu:
            return z.unaryExpr([](Scalar v) { return v > Scalar(0) ? Scalar(1) : Scalar(0); });
        case Activation::sigmoid: return (a.array() * (Scalar(1) - a.array())).matrix();
        case Activation::tanh: return (Scalar(1) - a.array().square()).matrix();
    }
    return Mat::Ones(z.rows(), z.cols());
}

}  // namespace detail

/// Forward pass over a batch laid out one sample per column (input_dim x m).
template <class Scalar>
ForwardPass<Scalar> forward(const Mlp<Scalar>& model, const typename Mlp<Scalar>::Mat& batch) {
    if (batch.rows() != model.input_dim())
        throw std::invalid_argument("forward: batch has " + std::to_string(batch.rows()) +
                                    " feature rows, model expects " + std::to_string(model.input_dim()));
    ForwardPass<Scalar> pass;
    pass.activations.push_back(batch);
    for (Eigen::Index l = 0; l < model.layer_count(); ++l) {
        typename Mlp<Scalar>::Mat z =
            (model.weights[static_cast<std::size_t>(l)] * pass.activations.back()).colwise() +
            model.biases[static_cast<std::size_t>(l)];
        const bool output_layer = (l == model.layer_count() - 1);
        typename Mlp<Scalar>::Mat a =
            output_layer ? detail::apply_activation<Scalar>(Activation::sigmoid, z)
                         : detail::apply_activation<Scalar>(model.hidden_activation, z);
        if (output_layer) {
            // keep reported probabilities strictly inside (0, 1)
            const Scalar eps = Scalar(1e-12);
            a = a.cwiseMax(eps).cwiseMin(Scalar(1) - eps);
        }
        pass.preactivations.push_back(std::move(z));
        pass.activations.push_back(std::move(a));
    }
    return pass;
}

/// Mean binary cross-entropy computed from output logits (numerically stable
/// for large |z|). Labels are 0/1 laid out as a 1 x m row.
template <class Scalar>
Scalar bce_from_logits(const typename Mlp<Scalar>::Mat& logits, const typename Mlp<Scalar>::Mat& labels) {
    Scalar total = 0;
    for (Eigen::Index i = 0; i < logits.cols(); ++i) {
        const Scalar z = logits(0, i);
        const Scalar y = labels(0, i);
        total += std::max(z, Scalar(0)) - z * y + std::log1p(std::exp(-std::abs(z)));
    }
    return total / static_cast<Scalar>(logits.cols());
}

template <class Scalar>
struct Gradients {
    std::vector<typename Mlp<Scalar>::Mat> weights;
    std::vector<typename Mlp<Scalar>::Vec> biases;
};

template <class Scalar>
struct TrainStep {
    Scalar loss = 0;
    Gradients<Scalar> gradients;
    typename Mlp<Scalar>::Mat probabilities;  // 1 x m
};

/// Loss plus analytic gradients via backpropagation.
template <class Scalar>
TrainStep<Scalar> loss_and_gradients(const Mlp<Scalar>& model, const typename Mlp<Scalar>::Mat& batch,
                                     const typename Mlp<Scalar>::Mat& labels) {
    using Mat = typename Mlp<Scalar>::Mat;
    if (labels.rows() != 1 || labels.cols() != batch.cols())
        throw std::invalid_argument("loss_and_gradients: labels must be 1 x batch_size");

    const ForwardPass<Scalar> pass = forward(model, batch);
    const Mat& logits = pass.preactivations.back();
    const auto m = static_cast<Scalar>(batch.cols());

    TrainStep<Scalar> step;
    step.loss = bce_from_logits<Scalar>(logits, labels);
    step.probabilities = pass.activations.back();
    step.gradients.weights.resize(static_cast<std::size_t>(model.layer_count()));
    step.gradients.biases.resize(static_cast<std::size_t>(model.layer_count()));

    // dL/dz for the logistic output under mean BCE.
    Mat delta = (logits.unaryExpr([](Scalar v) { return Scalar(1) / (Scalar(1) + std::exp(-v)); }) -
                 labels) /
                m;
    for (Eigen::Index l = model.layer_count() - 1; l >= 0; --l) {
        const auto li = static_cast<std::size_t>(l);
        step.gradients.weights[li].noalias() = delta * pass.activations[li].transpose();
        step.gradients.biases[li] = delta.rowwise().sum();
        if (l > 0) {
            Mat upstream = model.weights[li].transpose() * delta;
            delta = upstream.cwiseProduct(detail::activation_derivative<Scalar>(
                model.hidden_activation, pass.preactivations[li - 1], pass.activations[li]));
        }
    }
    return step;
}

template <class Scalar>
void sgd_step(Mlp<Scalar>& model, const Gradients<Scalar>& grads, Scalar learning_rate) {
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        model.weights[l] -= learning_rate * grads.weights[l];
        model.biases[l] -= learning_rate * grads.biases[l];
    }
}

template <class Scalar>
class AdamOptimizer {
public:
    AdamOptimizer(const Mlp<Scalar>& model, Scalar learning_rate, Scalar beta1 = Scalar(0.9),
                  Scalar beta2 = Scalar(0.999), Scalar epsilon = Scalar(1e-8))
        : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon) {
        using Mat = typename Mlp<Scalar>::Mat;
        using Vec = typename Mlp<Scalar>::Vec;
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            mw_.push_back(Mat::Zero(model.weights[l].rows(), model.weights[l].cols()));
            vw_.push_back(Mat::Zero(model.weights[l].rows(), model.weights[l].cols()));
            mb_.push_back(Vec::Zero(model.biases[l].size()));
            vb_.push_back(Vec::Zero(model.biases[l].size()));
        }
    }

    void step(Mlp<Scalar>& model, const Gradients<Scalar>& grads) {
        ++t_;
        const Scalar correction1 = Scalar(1) - std::pow(beta1_, static_cast<Scalar>(t_));
        const Scalar correction2 = Scalar(1) - std::pow(beta2_, static_cast<Scalar>(t_));
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            mw_[l] = beta1_ * mw_[l] + (Scalar(1) - beta1_) * grads.weights[l];
            vw_[l] = beta2_ * vw_[l] + (Scalar(1) - beta2_) * grads.weights[l].cwiseAbs2();
            mb_[l] = beta1_ * mb_[l] + (Scalar(1) - beta1_) * grads.biases[l];
            vb_[l] = beta2_ * vb_[l] + (Scalar(1) - beta2_) * grads.biases[l].cwiseAbs2();
            model.weights[l].array() -= lr_ * (mw_[l].array() / correction1) /
                                        ((vw_[l].array() / correction2).sqrt() + eps_);
            model.biases[l].array() -= lr_ * (mb_[l].array() / correction1) /
                                       ((vb_[l].array() / correction2).sqrt() + eps_);
        }
    }

private:
    Scalar lr_, beta1_, beta2_, eps_;
    long t_ = 0;
    std::vector<typename Mlp<Scalar>::Mat> mw_, vw_;
    std::vector<typename Mlp<Scalar>::Vec> mb_, vb_;
};

}  // namespace kcnas
