#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace polar {

struct ChannelParams {
    uint32_t d = 0;      // number of deletions
    double sigma2 = 1.0; // noise variance per real dimension
    uint64_t seed = 0;
};

uint64_t splitmix64(uint64_t x);

// One independent, reproducible stream per (seed, trial); parallel runs of the
// same trial set produce the same draws regardless of scheduling.
uint64_t derive_stream_seed(uint64_t seed, uint64_t trial);
std::mt19937_64 make_trial_rng(uint64_t seed, uint64_t trial);

// BPSK: bit 0 -> +1.0, bit 1 -> -1.0.
std::vector<double> modulate(const std::vector<uint8_t>& bits);

// Uniform size-d subset of [1, N] via partial Fisher-Yates; sorted ascending.
std::vector<uint32_t> sample_deletion_pattern(uint32_t N, uint32_t d, std::mt19937_64& rng);

std::vector<double> apply_deletions(const std::vector<double>& symbols,
                                    const std::vector<uint32_t>& pattern);

struct TransmitResult {
    std::vector<double> y;          // length N - d
    std::vector<uint32_t> pattern;  // diagnostics only; the decoder never sees it
};

TransmitResult transmit(const std::vector<uint8_t>& x, const ChannelParams& params,
                        std::mt19937_64& rng);

}  // namespace polar
