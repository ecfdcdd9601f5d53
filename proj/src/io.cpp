#include "polar/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace polar {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_simulate_csv(std::ostream& os, const std::vector<TrialRecord>& rows,
                        const SimSummary& summary) {
    os << "trial_seed,frame_error,bit_errors,scenarios_evaluated,elapsed_us\n";
    for (const TrialRecord& r : rows)
        os << r.trial_seed << ',' << unsigned(r.frame_error) << ',' << r.bit_errors << ','
           << r.scenarios_evaluated << ',' << r.elapsed_us << '\n';
    if (!rows.empty())
        os << "summary," << summary.frame_errors << ',' << summary.bit_errors << ','
           << fmt(summary.avg_scenarios) << ',' << summary.total_elapsed_us << '\n';
}

void write_profile_csv(std::ostream& os, const std::vector<NodeClassPe>& rows) {
    os << "lambda,beta,pe_numerator,pe_denominator,pe_float\n";
    for (const NodeClassPe& r : rows)
        os << r.lambda << ',' << r.beta << ',' << numerator_str(r.pe) << ','
           << denominator_str(r.pe) << ',' << fmt(to_double(r.pe)) << '\n';
}

void write_threshold_csv(std::ostream& os, const ThresholdTable& table) {
    os << "lambda,beta,tau_numerator,tau_denominator,tau_float\n";
    for (const ThresholdEntry& e : table.entries())
        os << e.lambda << ',' << e.beta << ',' << numerator_str(e.tau) << ','
           << denominator_str(e.tau) << ',' << fmt(to_double(e.tau)) << '\n';
}

void write_count_csv(std::ostream& os, const std::vector<CountRow>& rows) {
    os << "policy,count,reduction,reduction_pct\n";
    for (const CountRow& r : rows)
        os << r.policy << ',' << r.count << ',' << r.reduction << ',' << fmt(r.reduction_pct)
           << '\n';
}

void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& emit) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    emit(f);
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace polar
