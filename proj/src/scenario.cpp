#include "polar/scenario.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace polar {

SegmentSplit segment_split(const NodeCoord& node, uint32_t N) {
    const uint32_t seg = 1u << node.lambda;
    if (node.beta * static_cast<uint64_t>(seg) + seg > N)
        throw std::invalid_argument("segment_split: node out of range for N");
    SegmentSplit s;
    s.N1 = node.beta * seg;
    s.N2 = seg;
    s.N3 = N - (node.beta + 1) * seg;
    return s;
}

std::vector<Scenario> enumerate_scenarios(const SegmentSplit& split, uint32_t d) {
    std::vector<Scenario> out;
    for (uint32_t d3 = 0; d3 <= d && d3 <= split.N3; ++d3) {
        const uint32_t rest = d - d3;
        for (uint32_t d1 = 0; d1 <= rest && d1 <= split.N1; ++d1) {
            const uint32_t d2 = rest - d1;
            if (d2 > split.N2) continue;
            out.push_back({d1, d2, d3});
        }
    }
    return out;
}

Rational joint_weight(const SegmentSplit& split, const Scenario& s, uint32_t N, uint32_t d) {
    if (s.d1 + s.d2 + s.d3 != d) return Rational(0);
    if (s.d1 > split.N1 || s.d2 > split.N2 || s.d3 > split.N3) return Rational(0);
    Rational r(binom(split.N1, s.d1) * binom(split.N2, s.d2) * binom(split.N3, s.d3),
               binom(N, d));
    r.canonicalize();
    return r;
}

Rational node_prune_error(const std::vector<Rational>& pruned_weights) {
    Rational sum(0);
    for (const auto& w : pruned_weights) sum += w;
    return sum;
}

Rational hypergeom_pdf(uint32_t k, uint32_t p, uint32_t m, uint32_t n) {
    if (k > p || p > n || m > n || k > m || p - k > n - m) return Rational(0);
    Rational r(binom(m, k) * binom(n - m, p - k), binom(n, p));
    r.canonicalize();
    return r;
}

namespace {

uint32_t clamp_to_support(uint64_t k, uint32_t p, uint32_t m, uint32_t n) {
    const uint32_t lo = (p + m > n) ? p + m - n : 0;  // p - (n - m) when positive
    const uint32_t hi = std::min(m, p);
    if (k < lo) return lo;
    if (k > hi) return hi;
    return static_cast<uint32_t>(k);
}

}  // namespace

uint32_t hypergeom_mode(uint32_t p, uint32_t m, uint32_t n) {
    if (p > n || m > n) throw std::invalid_argument("hypergeom_mode: need p <= n and m <= n");
    const uint64_t num = static_cast<uint64_t>(m + 1) * (p + 1);
    const uint64_t den = n + 2;
    uint64_t k = num / den;
    if (num % den == 0 && k > 0) k -= 1;  // two adjacent maxima tie: take the smaller
    return clamp_to_support(k, p, m, n);
}

uint32_t hypergeom_mode_ceil(uint32_t p, uint32_t m, uint32_t n) {
    if (p > n || m > n) throw std::invalid_argument("hypergeom_mode_ceil: need p <= n and m <= n");
    if (n == 0) return 0;
    const uint64_t num = static_cast<uint64_t>(m) * p;
    const uint64_t k = (num + n - 1) / n;
    return clamp_to_support(k, p, m, n);
}

SubgroupPeak subgroup_peak(const SegmentSplit& split, uint32_t N, uint32_t d, uint32_t d3,
                           bool ceil_formula) {
    if (d3 > d || d3 > split.N3 || d - d3 > split.N1 + split.N2)
        throw std::invalid_argument("subgroup_peak: infeasible d3=" + std::to_string(d3));
    const uint32_t p = d - d3;
    const uint32_t d1m = ceil_formula ? hypergeom_mode_ceil(p, split.N1, split.N1 + split.N2)
                                      : hypergeom_mode(p, split.N1, split.N1 + split.N2);
    SubgroupPeak r;
    r.d1m = d1m;
    r.d2m = p - d1m;
    r.gamma = joint_weight(split, {r.d1m, r.d2m, d3}, N, d);
    return r;
}

}  // namespace polar
