#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace parlab {

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact enumeration requested beyond the configured dimension cap.
struct CapacityError : std::runtime_error {
    CapacityError(int n, int cap)
        : std::runtime_error("exact enumeration needs n <= " + std::to_string(cap) +
                             ", got n = " + std::to_string(n)),
          n(n), cap(cap) {}
    int n;
    int cap;
};

struct InvalidSchedule : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// IDX parsing failure; offset is the byte position the problem was detected at.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset(offset) {}
    std::size_t offset;
};

// Separator construction could not fill every staircase bucket; lists the empty r's.
struct SeparatorInfeasible : std::runtime_error {
    explicit SeparatorInfeasible(std::vector<int> empty)
        : std::runtime_error(describe(empty)), empty_buckets(std::move(empty)) {}
    std::vector<int> empty_buckets;

  private:
    static std::string describe(const std::vector<int>& empty) {
        std::string s = "no neuron matched staircase bucket(s) r =";
        for (int r : empty) s += " " + std::to_string(r);
        return s;
    }
};

}  // namespace parlab
