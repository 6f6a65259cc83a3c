#pragma once

#include <cstdint>
#include <vector>

namespace parlab {

// Fixed-size chunking so reductions have a thread-count-independent merge
// order: partials are accumulated per chunk and summed sequentially by chunk
// index. Runs are bit-identical for a given build regardless of scheduling.
inline constexpr std::int64_t kChunk = 4096;

template <typename Fn>
void parallel_chunks(std::int64_t total, Fn&& body) {
    const std::int64_t chunks = (total + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = c * kChunk;
        const std::int64_t hi = lo + kChunk < total ? lo + kChunk : total;
        body(lo, hi, c);
    }
}

// Deterministic parallel sum: body(lo, hi) -> partial for that chunk.
template <typename Fn>
double parallel_sum(std::int64_t total, Fn&& body) {
    const std::int64_t chunks = (total + kChunk - 1) / kChunk;
    std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = c * kChunk;
        const std::int64_t hi = lo + kChunk < total ? lo + kChunk : total;
        partial[static_cast<std::size_t>(c)] = body(lo, hi);
    }
    double sum = 0.0;
    for (double p : partial) sum += p;
    return sum;
}

}  // namespace parlab
