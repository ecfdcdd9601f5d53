#pragma once

#include "polar/code.hpp"
#include "polar/pruning.hpp"
#include "polar/scenario.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace polar {

struct Counters {
    uint64_t scenarios_evaluated = 0;  // (node, scenario) likelihood computations
    uint64_t nodes_visited = 0;
    uint64_t scenarios_pruned = 0;     // feasible scenarios skipped at visited nodes
    uint64_t weight_evals = 0;         // joint-weight evaluations (threshold build)
};

// A visited node whose every scenario was pruned upstream (or whose surviving
// likelihoods all underflowed to zero) cannot support a decision.
class DecodeDegenerate : public std::runtime_error {
public:
    DecodeDegenerate(NodeCoord node, Counters counters);
    NodeCoord node;
    Counters counters;
};

struct DecodeResult {
    std::vector<uint8_t> u_hat;                     // length N, frozen positions forced
    std::vector<double> per_bit_metric;             // W0/W1 at decision time, u-indexed
    std::vector<std::array<double, 2>> root_pairs;  // sum-normalized, phase-indexed
    Counters counters;
};

// Likelihood pair of a single-symbol node under scenario (d1, d2): a deleted
// symbol observes nothing, (1, 1); otherwise the Gaussian likelihood of
// received symbol split.N1 - d1 (0-based) under each hypothesis.
std::array<double, 2> leaf_likelihood(const std::vector<double>& y, const SegmentSplit& split,
                                      uint32_t d1, uint32_t d2, double sigma2);

// Per-node likelihood snapshot for inspection; every entry shares scale_exp.
struct ScenarioLikelihoods {
    std::vector<Scenario> scenarios;
    std::vector<std::array<double, 2>> values;
    int scale_exp = 0;
};

namespace detail {

struct PlanTerm {
    double w;            // split weight C(h,t)C(h,d2-t)/C(N2,d2)
    uint32_t left_slot;  // absolute slot in layer lambda-1
    uint32_t right_slot;
};

struct PlanScenario {
    Scenario s;
    int32_t y_index = -1;  // leaves: received-symbol index, -1 = deleted symbol
    uint32_t term_begin = 0, term_end = 0;
};

struct PlanClass {
    std::vector<Scenario> feasible;        // enumeration order
    std::vector<uint8_t> survive;          // parallel to feasible
    std::vector<PlanScenario> slots;       // surviving scenarios only
    std::vector<int32_t> slot_of;          // (d+1)^2 lookup d1*(d+1)+d2 -> slot, -1 = none
    uint32_t slot_offset = 0;              // first slot of this class in its layer
};

}  // namespace detail

// Static per-(lambda, beta) structure shared by all decoder instances for one
// (N, d, policy, table): surviving scenario lists, combine terms with pruned
// children already dropped, leaf symbol indices.
class DecoderPlan {
public:
    uint32_t N() const { return N_; }
    uint32_t n() const { return n_; }
    uint32_t d() const { return d_; }
    const PrunePolicy& policy() const { return policy_; }
    // Surviving scenarios summed over every node visit of a full decode.
    uint64_t static_scenario_count() const { return static_count_; }
    uint64_t static_feasible_count() const { return static_feasible_; }
    bool has_starved_class() const { return starved_count_ > 0; }

private:
    friend DecoderPlan make_decoder_plan(uint32_t, uint32_t, const PrunePolicy&,
                                         const ThresholdTable*);
    friend class ScDeletionDecoder;
    uint32_t N_ = 0, n_ = 0, d_ = 0;
    PrunePolicy policy_;
    std::vector<std::vector<detail::PlanClass>> classes_;  // [lambda][beta]
    std::vector<detail::PlanTerm> terms_;
    std::vector<uint32_t> layer_slots_;  // total slots per layer
    uint64_t static_count_ = 0;
    uint64_t static_feasible_ = 0;
    uint32_t starved_count_ = 0;
};

// table may be null for NONE/SSSC and must match (N, d, policy.kind) otherwise.
DecoderPlan make_decoder_plan(uint32_t N, uint32_t d, const PrunePolicy& policy,
                              const ThresholdTable* table);

// Input-independent count of scenario evaluations of a full decode; equals the
// runtime scenarios_evaluated counter of any completed decode on this plan.
uint64_t count_scenarios(const DecoderPlan& plan);
uint64_t count_scenarios(uint32_t N, uint32_t d, const PrunePolicy& policy,
                         const ThresholdTable* table);

class ScDeletionDecoder {
public:
    // Decisions within this relative band resolve to bit 0; exact ties are a
    // positive-probability event over a deletion channel and must resolve the
    // same way in every implementation being compared.
    static constexpr double kTieRelTol = 1e-12;

    ScDeletionDecoder(const DecoderPlan& plan, const CodeConfig& config, double sigma2);

    DecodeResult decode(const std::vector<double>& y);

    // Test instrumentation: multiplies every likelihood entry of a node by the
    // returned factor right after the node is computed.
    void set_scale_hook(std::function<double(NodeCoord)> hook) { scale_hook_ = std::move(hook); }

    // Last computed values of a class (valid after decode for diagnostics).
    ScenarioLikelihoods node_likelihoods(uint32_t lambda, uint32_t beta) const;

private:
    void load_leaves(const std::vector<double>& y);
    void calc_layer(uint32_t lambda, uint32_t phi);
    void update_partial_sums(uint32_t lambda, uint32_t phi);
    void finish_node(uint32_t lambda, uint32_t phi, uint32_t beta, uint32_t slot_begin,
                     uint32_t slot_count);

    const DecoderPlan& plan_;
    const CodeConfig& config_;
    double sigma2_;
    std::function<double(NodeCoord)> scale_hook_;
    std::vector<std::vector<std::array<double, 2>>> P_;  // [lambda][slot]
    std::vector<std::vector<uint8_t>> C_;                // [lambda][beta*2 + parity]
    std::vector<std::vector<int>> scale_exp_;            // [lambda][beta]
    Counters counters_;
};

}  // namespace polar
