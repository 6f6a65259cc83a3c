#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "parlab/rng.hpp"

namespace parlab {

// Default cap on exact enumeration: 2^22 uniform atoms is still desk scale.
inline constexpr int kEnumCap = 22;

// Which part of the mixture D_A an exact computation runs over.
enum class Component { FullMixture, UniformOnly, CorrelatedOnly };

// A k-sparse parity target f_A(x) = sign(prod_{j in A} x_j) over {±1/√n}^n,
// together with the mixture distribution D_A = ½ D_A^(1) + ½ D_A^(2):
// D^(1) uniform on all bits, D^(2) uniform off A with the A-bits fully
// correlated (all +1/√n or all −1/√n, equiprobable).
class ParityTask {
  public:
    ParityTask(int n, std::vector<int> subset);

    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<int>& subset() const { return subset_; }
    double coord() const { return coord_; }  // 1/√n, the exact stored magnitude
    bool in_subset(int j) const { return (mask_ >> j) & 1U; }
    std::uint64_t subset_mask() const { return mask_; }

    // +1 iff the number of negative coordinates indexed by A is even.
    // Uses sign bits only; the product n^(-k/2) is never formed.
    int label(std::span<const double> x) const;
    int label_bits(std::uint64_t bits) const;  // bit j set means x_j = −1/√n

    // x_j = −1/√n where bit j of `bits` is set, +1/√n otherwise.
    void materialize(std::uint64_t bits, std::span<double> out) const;

  private:
    int n_;
    int k_;
    std::vector<int> subset_;
    std::uint64_t mask_;
    double coord_;
};

struct LabeledExample {
    std::vector<double> x;
    int y;
};

struct SupportAtom {
    std::vector<double> x;
    double weight;
    int y;
};

LabeledExample sample(const ParityTask& task, Rng& rng);

// Draw only the sign pattern (bit j set = negative coordinate); same
// distribution and draw order as sample().
std::uint64_t sample_bits(const ParityTask& task, Rng& rng);

// Number of atoms the exact enumeration of a component visits.
std::int64_t atom_count(const ParityTask& task, Component component);

// Atom `index` of the deterministic enumeration order: uniform atoms by
// ascending bitmask, then (full mixture / correlated-only) the two A-patterns
// (all-plus, then all-minus) each by ascending free-bit mask.
struct AtomView {
    std::uint64_t bits;
    double weight;
    int y;
};
AtomView atom_at(const ParityTask& task, Component component, std::int64_t index);

// Materialized support; weights sum to 1 over the chosen component.
std::vector<SupportAtom> enumerate_support(const ParityTask& task, Component component,
                                           int cap = kEnumCap);

// E[f(x)] over the chosen component by exact enumeration (deterministic
// chunked reduction; see parallel.hpp).
double exact_expectation(const ParityTask& task, Component component,
                         const std::function<double(std::span<const double>, int)>& f,
                         int cap = kEnumCap);

// Monte-Carlo estimate of E[f(x)] under the full mixture; sample i uses
// rng.split(i), so the estimate is independent of evaluation order.
double mc_expectation(const ParityTask& task,
                      const std::function<double(std::span<const double>, int)>& f,
                      std::int64_t samples, const Rng& rng);

}  // namespace parlab
