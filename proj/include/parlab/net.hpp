#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <variant>

#include "parlab/rng.hpp"
#include "parlab/task.hpp"

namespace parlab {

// Gate convention: the derivative is 1 on the open interval (0,6) and 0 at
// both kinks, everywhere sigma' appears.
struct Relu6 {
    double value;
    double gate;
};
inline Relu6 relu6(double z) {
    if (z <= 0.0) return {0.0, 0.0};
    if (z >= 6.0) return {6.0, 0.0};
    return {z, 1.0};
}

// Subgradient wrt yhat; 0 at the margin boundary 1 - y*yhat = 0.
struct Hinge {
    double loss;
    double subgrad;
};
inline Hinge hinge(int y, double yhat) {
    const double m = 1.0 - static_cast<double>(y) * yhat;
    if (m > 0.0) return {m, static_cast<double>(-y)};
    return {0.0, 0.0};
}

// How population quantities are evaluated.
struct Exact {
    int cap = kEnumCap;
};
struct MonteCarlo {
    std::int64_t samples;
    std::uint64_t seed;
};
using EvalMode = std::variant<Exact, MonteCarlo>;

// g(x) = sum_i u_i * relu6(<w_i, x> + b_i), width 2q.
struct TwoLayerNet {
    int q = 0;
    int n = 0;
    Eigen::MatrixXd W;  // 2q x n
    Eigen::VectorXd b;  // 2q
    Eigen::VectorXd u;  // 2q
    int width() const { return 2 * q; }
};

// Neuron i < q: w_i iid uniform over {-1,0,1}^n (substream rng.split(i)),
// b_i = 1/(8k), u_i ~ U[-n/k, n/k]; neuron q+i is the exact negation, so the
// initial network is identically zero.
TwoLayerNet init_symmetric(int q, int n, int k, const Rng& rng);

double forward(const TwoLayerNet& net, std::span<const double> x);

struct GradientBundle {
    Eigen::MatrixXd dW;
    Eigen::VectorXd db;
    Eigen::VectorXd du;
    double loss_value = 0.0;  // population hinge loss at the evaluation point
};

// R(g) = ||u||^2 + sum_i ||w_i||^2; biases are not regularized.
struct RegularizerGrad {
    double value;
    Eigen::MatrixXd dW;
    Eigen::VectorXd du;
};
RegularizerGrad regularizer(const TwoLayerNet& net);

// Gradient of E_{D_A}[hinge(y, g(x))] over (W, b, u); the regularizer term is
// the trainer's responsibility. Exact mode enumerates the mixture support;
// Monte-Carlo draws `samples` examples from per-index substreams.
GradientBundle population_gradient(const TwoLayerNet& net, const ParityTask& task,
                                   const EvalMode& mode);

// Population hinge loss and sign accuracy (prediction 0 counts as an error)
// in one evaluation pass.
struct LossAccuracy {
    double loss;
    double accuracy;
};
LossAccuracy population_loss_accuracy(const TwoLayerNet& net, const ParityTask& task,
                                      const EvalMode& mode);

// Snapshot layout: JSON object with dims and row-major arrays.
std::string to_json(const TwoLayerNet& net);
TwoLayerNet net_from_json(const std::string& text);
void save_net(const TwoLayerNet& net, const std::string& path);
TwoLayerNet load_net(const std::string& path);

}  // namespace parlab
