#include "polar/pruning.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polar {

const char* policy_name(PolicyKind k) {
    switch (k) {
        case PolicyKind::NONE: return "none";
        case PolicyKind::SSSC: return "sssc";
        case PolicyKind::PSPC: return "pspc";
        case PolicyKind::SPSPC: return "spspc";
    }
    return "?";
}

void validate_policy(const PrunePolicy& policy) {
    if (policy.tau1 < 0.0) throw std::invalid_argument("policy: tau1 must be >= 0");
    if (!(policy.pe_bound >= 0.0 && policy.pe_bound < 1.0))
        throw std::invalid_argument("policy: pe_bound must be in [0, 1)");
}

PspcThreshold pspc_threshold(const std::vector<Rational>& weights, const Rational& pe_bound) {
    if (weights.empty()) throw std::invalid_argument("pspc_threshold: empty weight list");
    std::vector<uint32_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&weights](uint32_t a, uint32_t b) { return weights[a] < weights[b]; });

    const size_t cap = weights.size() - 1;  // at least one scenario must survive
    Rational acc(0);
    size_t k = 0;
    while (k < cap && acc + weights[order[k]] <= pe_bound) {
        acc += weights[order[k]];
        ++k;
    }

    PspcThreshold r;
    r.tau2 = (k > 0) ? weights[order[k - 1]] : Rational(0);
    r.pruned.assign(order.begin(), order.begin() + k);
    std::sort(r.pruned.begin(), r.pruned.end());
    return r;
}

PeakSet build_peak_set(const SegmentSplit& split, uint32_t N, uint32_t d,
                       bool ceil_formula, uint64_t* weight_evals) {
    PeakSet ps;
    for (uint32_t d3 = 0; d3 <= d && d3 <= split.N3; ++d3) {
        if (d - d3 > split.N1 + split.N2) continue;  // no feasible (d1, d2) in this subgroup
        ps.gamma.push_back(subgroup_peak(split, N, d, d3, ceil_formula).gamma);
        if (weight_evals) ++*weight_evals;
    }
    if (ps.gamma.empty()) throw std::invalid_argument("build_peak_set: no feasible subgroup");
    ps.delta = ps.gamma;
    std::sort(ps.delta.begin(), ps.delta.end());
    ps.eta.resize(ps.delta.size());
    Rational acc(0);
    for (size_t i = 0; i < ps.delta.size(); ++i) {
        acc += ps.delta[i];
        ps.eta[i] = acc;
    }
    ps.theta = enumerate_scenarios(split, d).size();
    return ps;
}

Rational spspc_threshold(const SegmentSplit& split, uint32_t N, uint32_t d,
                         const Rational& pe_bound, bool ceil_formula,
                         uint64_t* weight_evals) {
    PeakSet ps = build_peak_set(split, N, d, ceil_formula, weight_evals);
    const Rational budget = pe_bound * ps.eta.back();
    uint32_t k = 0;
    while (k < ps.eta.size() && ps.eta[k] <= budget) ++k;
    if (k == 0) return budget;  // every peak exceeds the budget
    return ps.delta[k - 1];
}

const ThresholdEntry& ThresholdTable::at(uint32_t lambda, uint32_t beta) const {
    if (entries_.empty()) throw std::invalid_argument("ThresholdTable::at: table not built");
    if (lambda < 1 || lambda > n_ - 1) throw std::invalid_argument("ThresholdTable::at: lambda out of [1, n-1]");
    if (beta >= (1u << (n_ - lambda))) throw std::invalid_argument("ThresholdTable::at: beta out of range");
    return entries_[layer_offset_[lambda] + beta];
}

ThresholdTable build_threshold_table(uint32_t N, uint32_t d, const PrunePolicy& policy) {
    if (policy.kind != PolicyKind::PSPC && policy.kind != PolicyKind::SPSPC)
        throw std::invalid_argument("build_threshold_table: policy must be pspc or spspc");
    validate_policy(policy);
    if (N < 4 || (N & (N - 1)) != 0)
        throw std::invalid_argument("build_threshold_table: N must be a power of two >= 4");
    if (d > N) throw std::invalid_argument("build_threshold_table: d exceeds N");

    uint32_t n = 0;
    while ((1u << n) < N) ++n;

    ThresholdTable t;
    t.N_ = N;
    t.n_ = n;
    t.d_ = d;
    t.kind_ = policy.kind;
    t.layer_offset_.assign(n, 0);
    const Rational bound = rational_of(policy.pe_bound);

    for (uint32_t lambda = 1; lambda <= n - 1; ++lambda) {
        t.layer_offset_[lambda] = static_cast<uint32_t>(t.entries_.size());
        const uint32_t betas = 1u << (n - lambda);
        for (uint32_t beta = 0; beta < betas; ++beta) {
            const SegmentSplit split = segment_split({lambda, 0, beta}, N);
            ThresholdEntry e;
            e.lambda = lambda;
            e.beta = beta;
            uint64_t evals = 0;
            if (policy.kind == PolicyKind::PSPC) {
                const auto scen = enumerate_scenarios(split, d);
                std::vector<Rational> w(scen.size());
                for (size_t i = 0; i < scen.size(); ++i) {
                    w[i] = joint_weight(split, scen[i], N, d);
                    ++evals;
                }
                PspcThreshold pt = pspc_threshold(w, bound);
                e.tau = pt.tau2;
                e.pruned_mask.assign(scen.size(), 0);
                if (policy.literal_leq) {
                    for (size_t i = 0; i < scen.size(); ++i)
                        if (w[i] <= e.tau) e.pruned_mask[i] = 1;
                } else {
                    for (uint32_t i : pt.pruned) e.pruned_mask[i] = 1;
                }
            } else {
                e.tau = spspc_threshold(split, N, d, bound, policy.ceil_peak_formula, &evals);
            }
            e.weight_evals = static_cast<uint32_t>(evals);
            t.total_weight_evals_ += evals;
            t.max_entry_weight_evals_ = std::max(t.max_entry_weight_evals_, e.weight_evals);
            t.entries_.push_back(std::move(e));
        }
    }
    return t;
}

bool scenario_survives(const Rational& J, uint32_t enum_idx, const PrunePolicy& policy,
                       const ThresholdEntry* entry) {
    switch (policy.kind) {
        case PolicyKind::NONE:
            return true;
        case PolicyKind::SSSC:
            return J > rational_of(policy.tau1);
        case PolicyKind::SPSPC:
            if (!entry) throw std::invalid_argument("scenario_survives: spspc needs a table entry");
            return J > entry->tau;
        case PolicyKind::PSPC:
            if (!entry) throw std::invalid_argument("scenario_survives: pspc needs a table entry");
            if (policy.literal_leq) return J > entry->tau;
            if (enum_idx >= entry->pruned_mask.size())
                throw std::invalid_argument("scenario_survives: enum_idx out of range");
            return entry->pruned_mask[enum_idx] == 0;
    }
    return true;
}

std::vector<NodeClassPe> profile_prune_error(uint32_t N, uint32_t d, const PrunePolicy& policy) {
    validate_policy(policy);
    if (N < 4 || (N & (N - 1)) != 0)
        throw std::invalid_argument("profile_prune_error: N must be a power of two >= 4");
    if (d > N) throw std::invalid_argument("profile_prune_error: d exceeds N");
    uint32_t n = 0;
    while ((1u << n) < N) ++n;

    ThresholdTable table;
    const bool tabled = policy.kind == PolicyKind::PSPC || policy.kind == PolicyKind::SPSPC;
    if (tabled) table = build_threshold_table(N, d, policy);

    std::vector<NodeClassPe> out;
    out.reserve(N - 2);
    for (uint32_t lambda = 1; lambda <= n - 1; ++lambda) {
        const uint32_t betas = 1u << (n - lambda);
        for (uint32_t beta = 0; beta < betas; ++beta) {
            const SegmentSplit split = segment_split({lambda, 0, beta}, N);
            const auto scen = enumerate_scenarios(split, d);
            const ThresholdEntry* entry = tabled ? &table.at(lambda, beta) : nullptr;
            Rational pe(0);
            for (size_t i = 0; i < scen.size(); ++i) {
                const Rational J = joint_weight(split, scen[i], N, d);
                if (!scenario_survives(J, static_cast<uint32_t>(i), policy, entry)) pe += J;
            }
            out.push_back({lambda, beta, pe});
        }
    }
    return out;
}

}  // namespace polar
