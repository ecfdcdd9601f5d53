#pragma once

#include "polar/code.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace polar {

struct ReferenceResult {
    std::vector<uint8_t> u_hat;
    std::vector<std::array<double, 2>> root_pairs;  // sum-normalized, phase-indexed
};

// Textbook successive cancellation for the deletion-free channel, written as a
// plain recursion (no shared arrays, no memoization) so it is structurally
// independent of ScDeletionDecoder. y must have length N.
ReferenceResult reference_sc_decode(const std::vector<double>& y, const CodeConfig& config,
                                    double sigma2);

struct BruteForceResult {
    std::vector<uint8_t> u_hat;
    std::vector<std::array<double, 2>> root_pairs;
    uint64_t patterns = 0;
};

// Exhaustive deletion-pattern oracle: reconstructs the length-N observation of
// every pattern (deleted symbols become uninformative (1,1) leaves), runs the
// textbook recursion on all patterns in lockstep with a shared power-of-two
// rescale, and decides each bit from the pattern-averaged root pair; decisions
// feed every pattern's partial sums. Refuses when C(N, d) > 10^6.
BruteForceResult brute_force_decode(const std::vector<double>& y, const CodeConfig& config,
                                    uint32_t d, double sigma2);

}  // namespace polar
