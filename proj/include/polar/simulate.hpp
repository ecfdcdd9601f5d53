#pragma once

#include "polar/code.hpp"
#include "polar/decoder.hpp"

#include <cstdint>
#include <vector>

namespace polar {

struct TrialRecord {
    uint64_t trial_index = 0;
    uint64_t trial_seed = 0;  // derived per-trial stream seed
    uint8_t frame_error = 0;
    uint32_t bit_errors = 0;  // over information positions
    uint64_t scenarios_evaluated = 0;
    uint64_t elapsed_us = 0;  // wall clock; excluded from determinism comparisons
    uint8_t degenerate = 0;
};

struct SimSummary {
    uint64_t trials = 0;
    uint64_t frame_errors = 0;
    uint64_t bit_errors = 0;
    uint64_t degenerate_trials = 0;
    double fer = 0.0;
    double ber = 0.0;
    double avg_scenarios = 0.0;
    uint64_t total_elapsed_us = 0;
};

struct SimOptions {
    double sigma2 = 1.0;
    uint64_t trials = 0;
    uint64_t seed = 1;
    uint32_t workers = 1;
};

struct SimResult {
    std::vector<TrialRecord> rows;  // always in trial order
    SimSummary summary;
};

// Independent codewords: random information bits -> encode -> d-deletion +
// AWGN channel -> decode; per-trial RNG streams derived from (seed, trial), so
// the worker count never changes any output. Degenerate decodes count as frame
// errors with all information bits lost and do not abort the run.
SimResult simulate(const CodeConfig& config, const DecoderPlan& plan, const SimOptions& opt);

}  // namespace polar
