#pragma once

#include "polar/pruning.hpp"
#include "polar/simulate.hpp"

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace polar {

// CSV emitters. Rows are written in deterministic order; rationals are split
// into decimal numerator/denominator strings plus a float rendering.

void write_simulate_csv(std::ostream& os, const std::vector<TrialRecord>& rows,
                        const SimSummary& summary);

void write_profile_csv(std::ostream& os, const std::vector<NodeClassPe>& rows);

void write_threshold_csv(std::ostream& os, const ThresholdTable& table);

struct CountRow {
    std::string policy;
    uint64_t count = 0;
    uint64_t reduction = 0;   // versus the unpruned count
    double reduction_pct = 0.0;
};

void write_count_csv(std::ostream& os, const std::vector<CountRow>& rows);

// Opens path for writing; throws std::runtime_error on failure.
void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& emit);

}  // namespace polar
