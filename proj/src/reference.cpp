#include "polar/reference.hpp"

#include "polar/decoder.hpp"
#include "polar/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polar {

namespace {

using Pair = std::array<double, 2>;

struct LockstepSc {
    uint32_t n = 0;
    uint32_t N = 0;
    std::vector<std::vector<Pair>> leaves;  // [pattern][beta]
    std::vector<uint8_t> v;                 // decided bits in phase order

    // Re-encoded decision bit of node (lambda, phi, beta), reconstructed
    // top-down from the root decisions.
    uint8_t bbit(uint32_t lambda, uint32_t phi, uint32_t beta) const {
        if (lambda == n) return v[phi];
        if ((beta & 1u) == 0)
            return bbit(lambda + 1, 2 * phi, beta >> 1) ^ bbit(lambda + 1, 2 * phi + 1, beta >> 1);
        return bbit(lambda + 1, 2 * phi + 1, beta >> 1);
    }

    std::vector<Pair> eval(uint32_t lambda, uint32_t phi, uint32_t beta) const {
        const size_t pats = leaves.size();
        std::vector<Pair> out(pats);
        if (lambda == 0) {
            for (size_t p = 0; p < pats; ++p) out[p] = leaves[p][beta];
            return out;
        }
        const auto L = eval(lambda - 1, phi >> 1, 2 * beta);
        const auto R = eval(lambda - 1, phi >> 1, 2 * beta + 1);
        if ((phi & 1u) == 0) {
            for (size_t p = 0; p < pats; ++p)
                out[p] = {L[p][0] * R[p][0] + L[p][1] * R[p][1],
                          L[p][0] * R[p][1] + L[p][1] * R[p][0]};
        } else {
            const uint8_t a = bbit(lambda, phi - 1, beta);
            for (size_t p = 0; p < pats; ++p)
                out[p] = {L[p][a] * R[p][0], L[p][a ^ 1] * R[p][1]};
        }
        // One rescale shared by every pattern and both hypotheses: patterns are
        // summed against each other at the root, so their relative scale is part
        // of the answer.
        double m = 0.0;
        for (const Pair& q : out) m = std::max(m, std::max(q[0], q[1]));
        if (m > 0.0) {
            const int e = std::ilogb(m);
            if (e != 0) {
                const double f = std::ldexp(1.0, -e);
                for (Pair& q : out) {
                    q[0] *= f;
                    q[1] *= f;
                }
            }
        }
        return out;
    }

    void run(const CodeConfig& config, std::vector<uint8_t>& u_hat,
             std::vector<Pair>& root_pairs) {
        v.assign(N, 0);
        u_hat.assign(N, 0);
        root_pairs.assign(N, {0.0, 0.0});
        for (uint32_t phi = 0; phi < N; ++phi) {
            const auto pairs = eval(n, phi, 0);
            double s0 = 0.0, s1 = 0.0;
            for (const Pair& q : pairs) {
                s0 += q[0];
                s1 += q[1];
            }
            const double sum = s0 + s1;
            root_pairs[phi] = {s0 / sum, s1 / sum};
            const uint32_t ui = bit_reverse(phi, n);
            uint8_t bit;
            if (config.frozen_mask[ui])
                bit = config.frozen_values[ui];
            else
                bit = (s1 - s0 > ScDeletionDecoder::kTieRelTol * sum) ? 1 : 0;
            v[phi] = bit;
            u_hat[ui] = bit;
        }
    }
};

Pair gaussian_pair(double y, double sigma2) {
    const double inv = 1.0 / (2.0 * sigma2);
    return {std::exp(-(y - 1.0) * (y - 1.0) * inv), std::exp(-(y + 1.0) * (y + 1.0) * inv)};
}

}  // namespace

ReferenceResult reference_sc_decode(const std::vector<double>& y, const CodeConfig& config,
                                    double sigma2) {
    if (y.size() != config.N)
        throw std::invalid_argument("reference_sc_decode: y must have length N");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("reference_sc_decode: sigma2 must be > 0");
    LockstepSc sc;
    sc.n = config.n;
    sc.N = config.N;
    sc.leaves.resize(1);
    sc.leaves[0].resize(config.N);
    for (uint32_t i = 0; i < config.N; ++i) sc.leaves[0][i] = gaussian_pair(y[i], sigma2);
    ReferenceResult r;
    sc.run(config, r.u_hat, r.root_pairs);
    return r;
}

BruteForceResult brute_force_decode(const std::vector<double>& y, const CodeConfig& config,
                                    uint32_t d, double sigma2) {
    const uint32_t N = config.N;
    if (d > N) throw std::invalid_argument("brute_force_decode: d exceeds N");
    if (y.size() != N - d)
        throw std::invalid_argument("brute_force_decode: y must have length N - d");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("brute_force_decode: sigma2 must be > 0");
    const Integer npat = binom(N, d);
    if (npat > 1000000)
        throw std::invalid_argument("brute_force_decode: C(N, d) exceeds the enumeration guard");

    LockstepSc sc;
    sc.n = config.n;
    sc.N = N;

    std::vector<Pair> symbol_pairs(y.size());
    for (size_t i = 0; i < y.size(); ++i) symbol_pairs[i] = gaussian_pair(y[i], sigma2);

    // Sorted d-subsets of [0, N) in lexicographic order.
    std::vector<uint32_t> c(d);
    for (uint32_t i = 0; i < d; ++i) c[i] = i;
    while (true) {
        std::vector<Pair> leaf(N);
        size_t survivor = 0, k = 0;
        for (uint32_t i = 0; i < N; ++i) {
            if (k < d && c[k] == i) {
                leaf[i] = {1.0, 1.0};
                ++k;
            } else {
                leaf[i] = symbol_pairs[survivor++];
            }
        }
        sc.leaves.push_back(std::move(leaf));
        if (d == 0) break;
        int32_t i = static_cast<int32_t>(d) - 1;
        while (i >= 0 && c[i] == N - d + i) --i;
        if (i < 0) break;
        ++c[i];
        for (uint32_t j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
    }

    BruteForceResult r;
    r.patterns = sc.leaves.size();
    sc.run(config, r.u_hat, r.root_pairs);
    return r;
}

}  // namespace polar
