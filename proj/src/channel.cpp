#include "polar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polar {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

uint64_t derive_stream_seed(uint64_t seed, uint64_t trial) {
    return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x51ED2701A0B3C4D5ull));
}

std::mt19937_64 make_trial_rng(uint64_t seed, uint64_t trial) {
    return std::mt19937_64(derive_stream_seed(seed, trial));
}

std::vector<double> modulate(const std::vector<uint8_t>& bits) {
    std::vector<double> s(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? -1.0 : 1.0;
    return s;
}

std::vector<uint32_t> sample_deletion_pattern(uint32_t N, uint32_t d, std::mt19937_64& rng) {
    if (d > N)
        throw std::invalid_argument("sample_deletion_pattern: d=" + std::to_string(d) +
                                    " exceeds N=" + std::to_string(N));
    std::vector<uint32_t> idx(N);
    std::iota(idx.begin(), idx.end(), 1u);
    for (uint32_t i = 0; i < d; ++i) {
        std::uniform_int_distribution<uint32_t> pick(i, N - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    std::vector<uint32_t> pattern(idx.begin(), idx.begin() + d);
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

std::vector<double> apply_deletions(const std::vector<double>& symbols,
                                    const std::vector<uint32_t>& pattern) {
    const uint32_t N = static_cast<uint32_t>(symbols.size());
    uint32_t prev = 0;
    for (uint32_t p : pattern) {
        if (p < 1 || p > N) throw std::invalid_argument("apply_deletions: index out of [1, N]");
        if (p <= prev) throw std::invalid_argument("apply_deletions: pattern not strictly increasing");
        prev = p;
    }
    std::vector<double> out;
    out.reserve(N - pattern.size());
    size_t k = 0;
    for (uint32_t i = 0; i < N; ++i) {
        if (k < pattern.size() && pattern[k] == i + 1) {
            ++k;
            continue;
        }
        out.push_back(symbols[i]);
    }
    return out;
}

TransmitResult transmit(const std::vector<uint8_t>& x, const ChannelParams& params,
                        std::mt19937_64& rng) {
    if (!(params.sigma2 > 0.0)) throw std::invalid_argument("transmit: sigma2 must be > 0");
    if (params.d > x.size()) throw std::invalid_argument("transmit: d exceeds block length");
    TransmitResult r;
    r.pattern = sample_deletion_pattern(static_cast<uint32_t>(x.size()), params.d, rng);
    r.y = apply_deletions(modulate(x), r.pattern);
    std::normal_distribution<double> noise(0.0, std::sqrt(params.sigma2));
    for (double& v : r.y) v += noise(rng);
    return r;
}

}  // namespace polar
