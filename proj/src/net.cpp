#include "parlab/net.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "parlab/errors.hpp"

namespace parlab {

using json = nlohmann::json;
using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

TwoLayerNet init_symmetric(int q, int n, int k, const Rng& rng) {
    if (q < 1 || n < 1) throw InvalidInput("q and n must be >= 1");
    if (k < 3 || k % 2 == 0) throw InvalidInput("k must be an odd integer >= 3");
    TwoLayerNet net;
    net.q = q;
    net.n = n;
    net.W.resize(2 * q, n);
    net.b.resize(2 * q);
    net.u.resize(2 * q);
    const double bias = 1.0 / (8.0 * k);
    const double range = static_cast<double>(n) / k;
    for (int i = 0; i < q; ++i) {
        Rng stream = rng.split(static_cast<std::uint64_t>(i));
        for (int j = 0; j < n; ++j) net.W(i, j) = static_cast<double>(stream.trit());
        net.b(i) = bias;
        net.u(i) = stream.uniform(-range, range);
        net.W.row(q + i) = -net.W.row(i);
        net.b(q + i) = -net.b(i);
        net.u(q + i) = -net.u(i);
    }
    return net;
}

double forward(const TwoLayerNet& net, std::span<const double> x) {
    if (static_cast<int>(x.size()) != net.n) throw InvalidInput("instance length != n");
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), net.n);
    double out = 0.0;
    for (int i = 0; i < net.width(); ++i)
        out += net.u(i) * relu6(net.W.row(i).dot(xv) + net.b(i)).value;
    return out;
}

RegularizerGrad regularizer(const TwoLayerNet& net) {
    RegularizerGrad g;
    g.value = net.u.squaredNorm() + net.W.squaredNorm();
    g.dW = 2.0 * net.W;
    g.du = 2.0 * net.u;
    return g;
}

namespace {

constexpr int kBlock = 256;

// Streams example blocks: rows of X become instances, with atom weights and
// labels. One code path for exact support enumeration and Monte-Carlo draws.
struct ExampleSource {
    const ParityTask& task;
    const EvalMode& mode;
    std::int64_t total;

    void fill(std::int64_t lo, std::int64_t hi, RowMajor& X, Eigen::VectorXd& wgt,
              Eigen::VectorXi& y) const {
        const int rows = static_cast<int>(hi - lo);
        if (std::holds_alternative<Exact>(mode)) {
            for (int r = 0; r < rows; ++r) {
                const AtomView view = atom_at(task, Component::FullMixture, lo + r);
                task.materialize(view.bits, std::span<double>(X.row(r).data(), task.n()));
                wgt(r) = view.weight;
                y(r) = view.y;
            }
        } else {
            const auto& mc = std::get<MonteCarlo>(mode);
            const Rng root(mc.seed);
            const double w = 1.0 / static_cast<double>(total);
            for (int r = 0; r < rows; ++r) {
                Rng stream = root.split(static_cast<std::uint64_t>(lo + r));
                const std::uint64_t bits = sample_bits(task, stream);
                task.materialize(bits, std::span<double>(X.row(r).data(), task.n()));
                wgt(r) = w;
                y(r) = task.label_bits(bits);
            }
        }
    }
};

ExampleSource make_source(const ParityTask& task, const EvalMode& mode) {
    if (const auto* exact = std::get_if<Exact>(&mode)) {
        if (task.n() > exact->cap) throw CapacityError(task.n(), exact->cap);
        return {task, mode, atom_count(task, Component::FullMixture)};
    }
    const auto& mc = std::get<MonteCarlo>(mode);
    if (mc.samples < 1) throw InvalidInput("monte-carlo sample count must be >= 1");
    return {task, mode, mc.samples};
}

}  // namespace

GradientBundle population_gradient(const TwoLayerNet& net, const ParityTask& task,
                                   const EvalMode& mode) {
    if (net.n != task.n()) throw InvalidInput("network and task dimension mismatch");
    const ExampleSource source = make_source(task, mode);
    const int width = net.width();

    GradientBundle bundle;
    bundle.dW = Eigen::MatrixXd::Zero(width, net.n);
    bundle.db = Eigen::VectorXd::Zero(width);
    bundle.du = Eigen::VectorXd::Zero(width);

    RowMajor X(kBlock, net.n);
    RowMajor S(kBlock, width);
    Eigen::VectorXd wgt(kBlock), lpw(kBlock), g(kBlock);
    Eigen::VectorXi y(kBlock);

    // Per block: Z = X W^T + 1 b^T is turned into activations in place (the
    // gate is recoverable from the activation: s in (0,6) iff z in (0,6)),
    // then reused as the per-neuron backprop factor. Blocks merge in index
    // order, so results do not depend on scheduling.
    for (std::int64_t lo = 0; lo < source.total; lo += kBlock) {
        const std::int64_t hi = std::min<std::int64_t>(lo + kBlock, source.total);
        const int rows = static_cast<int>(hi - lo);
        source.fill(lo, hi, X, wgt, y);
        auto Xb = X.topRows(rows);
        auto Sb = S.topRows(rows);

        Sb.noalias() = Xb * net.W.transpose();
        Sb.rowwise() += net.b.transpose();
        Sb = Sb.cwiseMax(0.0).cwiseMin(6.0);
        g.head(rows).noalias() = Sb * net.u;

        for (int r = 0; r < rows; ++r) {
            const Hinge h = hinge(y(r), g(r));
            bundle.loss_value += wgt(r) * h.loss;
            lpw(r) = wgt(r) * h.subgrad;
        }

        bundle.du.noalias() += Sb.transpose() * lpw.head(rows);

        for (int r = 0; r < rows; ++r) {
            const double lr = lpw(r);
            double* row = S.row(r).data();
            for (int i = 0; i < width; ++i) {
                const double s = row[i];
                row[i] = (s > 0.0 && s < 6.0) ? lr * net.u(i) : 0.0;
            }
        }

        bundle.db.noalias() += Sb.colwise().sum().transpose();
        bundle.dW.noalias() += Sb.transpose() * Xb;
    }
    return bundle;
}

LossAccuracy population_loss_accuracy(const TwoLayerNet& net, const ParityTask& task,
                                      const EvalMode& mode) {
    if (net.n != task.n()) throw InvalidInput("network and task dimension mismatch");
    const ExampleSource source = make_source(task, mode);

    RowMajor X(kBlock, net.n);
    RowMajor S(kBlock, net.width());
    Eigen::VectorXd wgt(kBlock), g(kBlock);
    Eigen::VectorXi y(kBlock);

    LossAccuracy out{0.0, 0.0};
    for (std::int64_t lo = 0; lo < source.total; lo += kBlock) {
        const std::int64_t hi = std::min<std::int64_t>(lo + kBlock, source.total);
        const int rows = static_cast<int>(hi - lo);
        source.fill(lo, hi, X, wgt, y);
        auto Xb = X.topRows(rows);
        auto Sb = S.topRows(rows);

        Sb.noalias() = Xb * net.W.transpose();
        Sb.rowwise() += net.b.transpose();
        Sb = Sb.cwiseMax(0.0).cwiseMin(6.0);
        g.head(rows).noalias() = Sb * net.u;

        for (int r = 0; r < rows; ++r) {
            out.loss += wgt(r) * hinge(y(r), g(r)).loss;
            if (static_cast<double>(y(r)) * g(r) > 0.0) out.accuracy += wgt(r);
        }
    }
    return out;
}

std::string to_json(const TwoLayerNet& net) {
    json j;
    j["q"] = net.q;
    j["n"] = net.n;
    std::vector<double> w(static_cast<std::size_t>(net.width()) * net.n);
    for (int i = 0; i < net.width(); ++i)
        for (int c = 0; c < net.n; ++c) w[static_cast<std::size_t>(i) * net.n + c] = net.W(i, c);
    j["W"] = w;
    j["b"] = std::vector<double>(net.b.data(), net.b.data() + net.width());
    j["u"] = std::vector<double>(net.u.data(), net.u.data() + net.width());
    return j.dump();
}

TwoLayerNet net_from_json(const std::string& text) {
    const json j = json::parse(text);
    TwoLayerNet net;
    net.q = j.at("q").get<int>();
    net.n = j.at("n").get<int>();
    const auto w = j.at("W").get<std::vector<double>>();
    const auto b = j.at("b").get<std::vector<double>>();
    const auto u = j.at("u").get<std::vector<double>>();
    const int width = 2 * net.q;
    if (static_cast<int>(b.size()) != width || static_cast<int>(u.size()) != width ||
        static_cast<int>(w.size()) != width * net.n)
        throw InvalidInput("snapshot arrays do not match dims header");
    net.W.resize(width, net.n);
    for (int i = 0; i < width; ++i)
        for (int c = 0; c < net.n; ++c) net.W(i, c) = w[static_cast<std::size_t>(i) * net.n + c];
    net.b = Eigen::Map<const Eigen::VectorXd>(b.data(), width);
    net.u = Eigen::Map<const Eigen::VectorXd>(u.data(), width);
    return net;
}

void save_net(const TwoLayerNet& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open " + path + " for writing");
    out << to_json(net);
}

TwoLayerNet load_net(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return net_from_json(text);
}

}  // namespace parlab
