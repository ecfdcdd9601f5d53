#pragma once

#include "polar/rational.hpp"

#include <cstdint>
#include <vector>

namespace polar {

// Factor-graph position: layer lambda in [0, n], phase phi in [0, 2^lambda),
// branch beta in [0, 2^(n-lambda)). Layer n is the decision side, layer 0 the
// channel side; the node covers 2^lambda contiguous coded symbols.
struct NodeCoord {
    uint32_t lambda = 0;
    uint32_t phi = 0;
    uint32_t beta = 0;
};

// Coded-symbol prefix before the node's segment, the segment, and the suffix.
struct SegmentSplit {
    uint32_t N1 = 0;
    uint32_t N2 = 0;
    uint32_t N3 = 0;
};

// Allocation of the d deletions across the three segments.
struct Scenario {
    uint32_t d1 = 0;
    uint32_t d2 = 0;
    uint32_t d3 = 0;
    bool operator==(const Scenario&) const = default;
};

SegmentSplit segment_split(const NodeCoord& node, uint32_t N);

// All feasible allocations (d1 <= N1, d2 <= N2, d3 <= N3, sum d), ordered by
// ascending d3 then ascending d1. Zero-weight (infeasible) combinations are
// excluded up front: they cost no work and carry no probability.
std::vector<Scenario> enumerate_scenarios(const SegmentSplit& split, uint32_t d);

// Occurrence probability of a scenario:
// C(N1,d1) * C(N2,d2) * C(N3,d3) / C(N,d). Zero when infeasible.
Rational joint_weight(const SegmentSplit& split, const Scenario& s, uint32_t N, uint32_t d);

// Probability mass ignored at a node when the given scenarios are pruned.
Rational node_prune_error(const std::vector<Rational>& pruned_weights);

// C(m,k) * C(n-m,p-k) / C(n,p); zero when combinatorially infeasible.
Rational hypergeom_pdf(uint32_t k, uint32_t p, uint32_t m, uint32_t n);

// Exact mode floor((m+1)(p+1)/(n+2)), clamped to the feasible support; on a
// tie between two adjacent maxima returns the smaller.
uint32_t hypergeom_mode(uint32_t p, uint32_t m, uint32_t n);

// Compatibility variant: ceil(m*p/n), clamped to the feasible support. Kept
// selectable because it disagrees with the exact mode on some inputs.
uint32_t hypergeom_mode_ceil(uint32_t p, uint32_t m, uint32_t n);

struct SubgroupPeak {
    Rational gamma;
    uint32_t d1m = 0;
    uint32_t d2m = 0;
};

// Peak joint weight within the fixed-d3 subgroup: d1m is the hypergeometric
// mode of the first-segment allocation, d2m the remainder.
SubgroupPeak subgroup_peak(const SegmentSplit& split, uint32_t N, uint32_t d, uint32_t d3,
                           bool ceil_formula = false);

}  // namespace polar
