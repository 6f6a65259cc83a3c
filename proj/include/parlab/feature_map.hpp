#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>

#include "parlab/net.hpp"
#include "parlab/rng.hpp"

namespace parlab {

enum class FeatureKind { ReluRandom, GaussianRff, NtkGates, ExplicitTable };

FeatureKind feature_kind_from_string(const std::string& s);
std::string to_string(FeatureKind kind);

// A fixed embedding Psi : R^d -> R^N. `clamp` restricts outputs to [-1,1] and
// is set only on audit paths; training uses raw features.
class FeatureMap {
  public:
    // relu-random: rows ~ N(0, 1/d), feature = max(<w,x>, 0).
    // gaussian-rff: rows ~ N(0, 1/bandwidth^2), phase ~ U[0,2pi),
    //               feature = sqrt(2/N) cos(<w,x> + phase).
    static FeatureMap relu_random(int input_dim, int count, const Rng& rng);
    static FeatureMap gaussian_rff(int input_dim, int count, double bandwidth, const Rng& rng);
    // Linearization features of a frozen snapshot: per neuron
    // [u_i gate_i(x) x, u_i gate_i(x), sigma(z_i(x))], N = 2q(n+2).
    static FeatureMap ntk_gates(std::shared_ptr<const TwoLayerNet> snapshot);
    // values(i, m) = Psi_i(x_m) for bitmask m over an n-cube; test backend.
    static FeatureMap explicit_table(int input_dim, Eigen::MatrixXd values);

    FeatureKind kind() const { return kind_; }
    int input_dim() const { return input_dim_; }
    int count() const { return count_; }
    bool clamp() const { return clamp_; }
    void set_clamp(bool on) { clamp_ = on; }

    void embed(std::span<const double> x, std::span<double> out) const;
    Eigen::VectorXd embed(std::span<const double> x) const;

    // Table fast path (explicit-table only).
    double table_value(int feature, std::uint64_t bits) const;

    const Eigen::MatrixXd& weights() const { return weights_; }
    const Eigen::VectorXd& phases() const { return phases_; }

  private:
    FeatureKind kind_ = FeatureKind::ReluRandom;
    int input_dim_ = 0;
    int count_ = 0;
    bool clamp_ = false;
    Eigen::MatrixXd weights_;  // N x d (relu-random / gaussian-rff)
    Eigen::VectorXd phases_;   // N (gaussian-rff)
    double rff_scale_ = 1.0;
    std::shared_ptr<const TwoLayerNet> snapshot_;
    Eigen::MatrixXd table_;  // N x 2^n (explicit-table)
};

struct FeatureMapParams {
    double bandwidth = 1.0;  // gaussian-rff only
};

FeatureMap make_feature_map(FeatureKind kind, int input_dim, int count,
                            const FeatureMapParams& params, const Rng& rng);

// Median pairwise distance over the rows of a probe sample (bandwidth heuristic).
double median_pairwise_distance(const Eigen::MatrixXd& rows);

}  // namespace parlab
