#include "parlab/task.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "parlab/errors.hpp"
#include "parlab/parallel.hpp"

namespace parlab {

ParityTask::ParityTask(int n, std::vector<int> subset)
    : n_(n), k_(static_cast<int>(subset.size())), subset_(std::move(subset)) {
    if (n_ < 1 || n_ > 63) throw InvalidInput("dimension n must be in [1, 63]");
    if (k_ < 3 || k_ % 2 == 0) throw InvalidInput("|A| must be an odd integer >= 3");
    std::sort(subset_.begin(), subset_.end());
    mask_ = 0;
    for (int j : subset_) {
        if (j < 0 || j >= n_) throw InvalidInput("subset index out of range");
        if ((mask_ >> j) & 1U) throw InvalidInput("subset indices must be distinct");
        mask_ |= 1ULL << j;
    }
    coord_ = 1.0 / std::sqrt(static_cast<double>(n_));
}

int ParityTask::label(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) throw InvalidInput("instance length != n");
    int negatives = 0;
    for (int j = 0; j < n_; ++j) {
        if (x[j] == 0.0) throw InvalidInput("instance has a zero coordinate");
        if (in_subset(j) && std::signbit(x[j])) ++negatives;
    }
    return (negatives % 2 == 0) ? +1 : -1;
}

int ParityTask::label_bits(std::uint64_t bits) const {
    return (std::popcount(bits & mask_) % 2 == 0) ? +1 : -1;
}

void ParityTask::materialize(std::uint64_t bits, std::span<double> out) const {
    for (int j = 0; j < n_; ++j) out[j] = ((bits >> j) & 1U) ? -coord_ : coord_;
}

std::uint64_t sample_bits(const ParityTask& task, Rng& rng) {
    const int n = task.n();
    std::uint64_t bits = 0;
    if (rng.coin()) {
        // D^(1): uniform on all bits.
        for (int j = 0; j < n; ++j)
            if (rng.coin()) bits |= 1ULL << j;
    } else {
        // D^(2): A-bits all equal, the rest uniform.
        if (rng.coin()) bits |= task.subset_mask();
        for (int j = 0; j < n; ++j)
            if (!task.in_subset(j) && rng.coin()) bits |= 1ULL << j;
    }
    return bits;
}

LabeledExample sample(const ParityTask& task, Rng& rng) {
    const std::uint64_t bits = sample_bits(task, rng);
    LabeledExample ex;
    ex.x.resize(static_cast<std::size_t>(task.n()));
    task.materialize(bits, ex.x);
    ex.y = task.label_bits(bits);
    return ex;
}

std::int64_t atom_count(const ParityTask& task, Component component) {
    const std::int64_t uniform = std::int64_t{1} << task.n();
    const std::int64_t correlated = std::int64_t{2} << (task.n() - task.k());
    switch (component) {
        case Component::UniformOnly: return uniform;
        case Component::CorrelatedOnly: return correlated;
        case Component::FullMixture: return uniform + correlated;
    }
    return 0;
}

namespace {

// Spread `free_bits` over the positions outside A.
std::uint64_t scatter_free(const ParityTask& task, std::uint64_t free_bits) {
    std::uint64_t bits = 0;
    int pos = 0;
    for (int j = 0; j < task.n(); ++j) {
        if (task.in_subset(j)) continue;
        if ((free_bits >> pos) & 1U) bits |= 1ULL << j;
        ++pos;
    }
    return bits;
}

}  // namespace

AtomView atom_at(const ParityTask& task, Component component, std::int64_t index) {
    const int n = task.n();
    const int k = task.k();
    const std::int64_t uniform_total = std::int64_t{1} << n;
    const std::int64_t correlated_half = std::int64_t{1} << (n - k);

    const bool mixture = component == Component::FullMixture;
    const double uniform_weight = mixture ? std::ldexp(0.5, -n) : std::ldexp(1.0, -n);
    const double correlated_weight =
        mixture ? std::ldexp(0.25, -(n - k)) : std::ldexp(0.5, -(n - k));

    if (component != Component::CorrelatedOnly && index < uniform_total) {
        const auto bits = static_cast<std::uint64_t>(index);
        return {bits, uniform_weight, task.label_bits(bits)};
    }
    std::int64_t rest = index;
    if (component == Component::FullMixture) rest -= uniform_total;
    const bool all_minus = rest >= correlated_half;
    if (all_minus) rest -= correlated_half;
    std::uint64_t bits = scatter_free(task, static_cast<std::uint64_t>(rest));
    if (all_minus) bits |= task.subset_mask();
    return {bits, correlated_weight, task.label_bits(bits)};
}

std::vector<SupportAtom> enumerate_support(const ParityTask& task, Component component, int cap) {
    if (task.n() > cap) throw CapacityError(task.n(), cap);
    const std::int64_t total = atom_count(task, component);
    std::vector<SupportAtom> atoms(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < total; ++i) {
        const AtomView view = atom_at(task, component, i);
        SupportAtom& atom = atoms[static_cast<std::size_t>(i)];
        atom.x.resize(static_cast<std::size_t>(task.n()));
        task.materialize(view.bits, atom.x);
        atom.weight = view.weight;
        atom.y = view.y;
    }
    return atoms;
}

double exact_expectation(const ParityTask& task, Component component,
                         const std::function<double(std::span<const double>, int)>& f, int cap) {
    if (task.n() > cap) throw CapacityError(task.n(), cap);
    const std::int64_t total = atom_count(task, component);
    return parallel_sum(total, [&](std::int64_t lo, std::int64_t hi) {
        std::vector<double> x(static_cast<std::size_t>(task.n()));
        double partial = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            const AtomView view = atom_at(task, component, i);
            task.materialize(view.bits, x);
            partial += view.weight * f(x, view.y);
        }
        return partial;
    });
}

double mc_expectation(const ParityTask& task,
                      const std::function<double(std::span<const double>, int)>& f,
                      std::int64_t samples, const Rng& rng) {
    if (samples < 1) throw InvalidInput("sample count must be >= 1");
    const double sum = parallel_sum(samples, [&](std::int64_t lo, std::int64_t hi) {
        std::vector<double> x(static_cast<std::size_t>(task.n()));
        double partial = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            Rng stream = rng.split(static_cast<std::uint64_t>(i));
            const std::uint64_t bits = sample_bits(task, stream);
            task.materialize(bits, x);
            partial += f(x, task.label_bits(bits));
        }
        return partial;
    });
    return sum / static_cast<double>(samples);
}

}  // namespace parlab
