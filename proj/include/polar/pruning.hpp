#pragma once

#include "polar/rational.hpp"
#include "polar/scenario.hpp"

#include <cstdint>
#include <vector>

namespace polar {

enum class PolicyKind { NONE, SSSC, PSPC, SPSPC };

const char* policy_name(PolicyKind k);

struct PrunePolicy {
    PolicyKind kind = PolicyKind::NONE;
    double tau1 = 0.0;      // SSSC: uniform weight threshold
    double pe_bound = 0.0;  // PSPC/SPSPC: per-node pruning-error limit
    // Compatibility switches (CLI: --paper-peak-formula, --literal-leq-pruning).
    bool ceil_peak_formula = false;  // subgroup peak located by ceil(m*p/n)
    bool literal_leq = false;        // PSPC prunes every weight <= tau2, not the k-prefix
};

void validate_policy(const PrunePolicy& policy);

struct PspcThreshold {
    Rational tau2;
    std::vector<uint32_t> pruned;  // indices into the enumeration-order weight list
};

// Greedy per-node rule: sort weights ascending (stable, enumeration order
// breaks ties), take the longest prefix whose sum stays <= pe_bound, capped so
// at least one scenario survives. tau2 is the largest pruned weight (0 if none).
PspcThreshold pspc_threshold(const std::vector<Rational>& weights, const Rational& pe_bound);

// One hypergeometric peak per feasible d3-subgroup (gamma), peaks sorted
// ascending (delta), prefix sums (eta). Kept public for inspection and tests.
struct PeakSet {
    std::vector<Rational> gamma;  // per feasible subgroup, ascending d3
    std::vector<Rational> delta;  // gamma sorted ascending
    std::vector<Rational> eta;    // prefix sums of delta
    uint32_t k = 0;               // selected cut index (0 = special case)
    uint64_t theta = 0;           // total feasible scenario count of the node
};

PeakSet build_peak_set(const SegmentSplit& split, uint32_t N, uint32_t d,
                       bool ceil_formula, uint64_t* weight_evals);

// Threshold from the peak approximation: tau2 = delta_k with
// k = max{t : eta_t <= pe_bound * eta_F}; if every peak exceeds the budget,
// tau2 = pe_bound * eta_F. At most one weight evaluation per feasible subgroup.
Rational spspc_threshold(const SegmentSplit& split, uint32_t N, uint32_t d,
                         const Rational& pe_bound, bool ceil_formula,
                         uint64_t* weight_evals);

struct ThresholdEntry {
    uint32_t lambda = 0;
    uint32_t beta = 0;
    Rational tau;                      // tau2 of the class
    std::vector<uint8_t> pruned_mask;  // PSPC k-prefix rule, enumeration order
    uint32_t weight_evals = 0;         // joint-weight evaluations spent on this entry
};

// One entry per (lambda, beta), lambda in [1, n-1]: layers 0 and n are never
// pruned, and every phi of a class shares the entry. Size is exactly N - 2.
class ThresholdTable {
public:
    ThresholdTable() = default;

    uint32_t N() const { return N_; }
    uint32_t d() const { return d_; }
    PolicyKind kind() const { return kind_; }
    size_t size() const { return entries_.size(); }
    const std::vector<ThresholdEntry>& entries() const { return entries_; }
    const ThresholdEntry& at(uint32_t lambda, uint32_t beta) const;
    uint64_t total_weight_evals() const { return total_weight_evals_; }
    uint32_t max_entry_weight_evals() const { return max_entry_weight_evals_; }

private:
    friend ThresholdTable build_threshold_table(uint32_t, uint32_t, const PrunePolicy&);
    uint32_t N_ = 0, n_ = 0, d_ = 0;
    PolicyKind kind_ = PolicyKind::NONE;
    std::vector<ThresholdEntry> entries_;     // lambda-major ascending, beta ascending
    std::vector<uint32_t> layer_offset_;      // entry index of (lambda, 0)
    uint64_t total_weight_evals_ = 0;
    uint32_t max_entry_weight_evals_ = 0;
};

// Offline, once per (N, d, policy); policy must be PSPC or SPSPC.
ThresholdTable build_threshold_table(uint32_t N, uint32_t d, const PrunePolicy& policy);

// Survival test for one scenario of one node. `entry` is the node's class
// entry (may be null for NONE/SSSC); `enum_idx` identifies the scenario in
// enumeration order (PSPC prunes by identity, not by weight comparison).
bool scenario_survives(const Rational& J, uint32_t enum_idx, const PrunePolicy& policy,
                       const ThresholdEntry* entry);

struct NodeClassPe {
    uint32_t lambda = 0;
    uint32_t beta = 0;
    Rational pe;
};

// Realized pruning error per (lambda, beta) class, lambda-major then beta
// ascending, lambda in [1, n-1]. NONE yields all zeros.
std::vector<NodeClassPe> profile_prune_error(uint32_t N, uint32_t d, const PrunePolicy& policy);

}  // namespace polar
