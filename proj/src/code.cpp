#include "polar/code.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polar {

namespace {

bool is_pow2(uint32_t v) { return v >= 2 && (v & (v - 1)) == 0; }

uint32_t log2u(uint32_t v) {
    uint32_t n = 0;
    while ((1u << n) < v) ++n;
    return n;
}

}  // namespace

uint32_t bit_reverse(uint32_t v, uint32_t bits) {
    uint32_t r = 0;
    for (uint32_t i = 0; i < bits; ++i) r |= ((v >> i) & 1u) << (bits - 1 - i);
    return r;
}

void encode_inplace(std::vector<uint8_t>& u) {
    const size_t len = u.size();
    if (!is_pow2(static_cast<uint32_t>(len)))
        throw std::invalid_argument("encode: length must be a power of two >= 2");
    for (size_t blk = len; blk >= 2; blk >>= 1) {
        const size_t half = blk >> 1;
        for (size_t s = 0; s < len; s += blk)
            for (size_t i = 0; i < half; ++i) u[s + i] ^= u[s + half + i];
    }
}

std::vector<uint8_t> encode(const std::vector<uint8_t>& u, const CodeConfig& config) {
    if (u.size() != config.N)
        throw std::invalid_argument("encode: input length " + std::to_string(u.size()) +
                                    " does not match N=" + std::to_string(config.N));
    std::vector<uint8_t> x = u;
    encode_inplace(x);
    return x;
}

std::vector<uint32_t> construct_frozen_set(uint32_t N, uint32_t K, double design_param) {
    if (!is_pow2(N)) throw std::invalid_argument("construct_frozen_set: N must be a power of two >= 2");
    if (K < 1 || K > N) throw std::invalid_argument("construct_frozen_set: K must be in [1, N]");
    if (!(design_param > 0.0 && design_param < 1.0))
        throw std::invalid_argument("construct_frozen_set: design_param must be in (0, 1)");

    std::vector<double> z{design_param};
    while (z.size() < N) {
        std::vector<double> next(z.size() * 2);
        for (size_t i = 0; i < z.size(); ++i) {
            next[2 * i] = 2.0 * z[i] - z[i] * z[i];
            next[2 * i + 1] = z[i] * z[i];
        }
        z.swap(next);
    }

    std::vector<uint32_t> idx(N);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&z](uint32_t a, uint32_t b) {
        if (z[a] != z[b]) return z[a] > z[b];
        return a < b;  // tie: smaller index frozen first
    });

    std::vector<uint32_t> frozen(idx.begin(), idx.begin() + (N - K));
    for (auto& v : frozen) v += 1;
    std::sort(frozen.begin(), frozen.end());
    return frozen;
}

CodeConfig make_code_config(uint32_t N, uint32_t K, double design_param) {
    CodeConfig c = make_code_config(N, K, construct_frozen_set(N, K, design_param), {});
    c.design_param = design_param;
    return c;
}

CodeConfig make_code_config(uint32_t N, uint32_t K, std::vector<uint32_t> frozen_set,
                            std::vector<uint8_t> frozen_values) {
    if (!is_pow2(N)) throw std::invalid_argument("make_code_config: N must be a power of two >= 2");
    if (K < 1 || K > N) throw std::invalid_argument("make_code_config: K must be in [1, N]");
    if (frozen_set.size() != N - K)
        throw std::invalid_argument("make_code_config: frozen_set size must equal N - K");
    std::sort(frozen_set.begin(), frozen_set.end());
    CodeConfig c;
    c.N = N;
    c.n = log2u(N);
    c.K = K;
    c.frozen_mask.assign(N, 0);
    for (size_t i = 0; i < frozen_set.size(); ++i) {
        uint32_t v = frozen_set[i];
        if (v < 1 || v > N) throw std::invalid_argument("make_code_config: frozen index out of [1, N]");
        if (i > 0 && frozen_set[i - 1] == v)
            throw std::invalid_argument("make_code_config: duplicate frozen index");
        c.frozen_mask[v - 1] = 1;
    }
    if (frozen_values.empty()) frozen_values.assign(N, 0);
    if (frozen_values.size() != N)
        throw std::invalid_argument("make_code_config: frozen_values must be empty or size N");
    c.frozen_set = std::move(frozen_set);
    c.frozen_values = std::move(frozen_values);
    return c;
}

}  // namespace polar
