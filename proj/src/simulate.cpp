#include "polar/simulate.hpp"

#include "polar/channel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace polar {

namespace {

void run_trial(uint64_t t, const CodeConfig& config, const DecoderPlan& plan,
               const SimOptions& opt, ScDeletionDecoder& decoder, TrialRecord& row) {
    const auto t0 = std::chrono::steady_clock::now();
    row.trial_index = t;
    row.trial_seed = derive_stream_seed(opt.seed, t);
    std::mt19937_64 rng(row.trial_seed);

    std::vector<uint8_t> u(config.N);
    for (uint32_t i = 0; i < config.N; ++i)
        u[i] = config.frozen_mask[i] ? config.frozen_values[i]
                                     : static_cast<uint8_t>(rng() & 1u);
    std::vector<uint8_t> x = encode(u, config);

    ChannelParams ch;
    ch.d = plan.d();
    ch.sigma2 = opt.sigma2;
    const TransmitResult tx = transmit(x, ch, rng);

    try {
        const DecodeResult res = decoder.decode(tx.y);
        uint32_t errs = 0;
        for (uint32_t i = 0; i < config.N; ++i)
            if (!config.frozen_mask[i] && res.u_hat[i] != u[i]) ++errs;
        row.bit_errors = errs;
        row.frame_error = errs > 0 ? 1 : 0;
        row.scenarios_evaluated = res.counters.scenarios_evaluated;
    } catch (const DecodeDegenerate& e) {
        row.degenerate = 1;
        row.frame_error = 1;
        row.bit_errors = config.K;
        row.scenarios_evaluated = e.counters.scenarios_evaluated;
    }
    row.elapsed_us = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                               std::chrono::steady_clock::now() - t0)
                                               .count());
}

}  // namespace

SimResult simulate(const CodeConfig& config, const DecoderPlan& plan, const SimOptions& opt) {
    if (opt.workers < 1) throw std::invalid_argument("simulate: workers must be >= 1");
    SimResult out;
    out.rows.resize(opt.trials);

    const uint32_t workers =
        static_cast<uint32_t>(std::min<uint64_t>(opt.workers, std::max<uint64_t>(opt.trials, 1)));
    if (workers <= 1) {
        ScDeletionDecoder decoder(plan, config, opt.sigma2);
        for (uint64_t t = 0; t < opt.trials; ++t)
            run_trial(t, config, plan, opt, decoder, out.rows[t]);
    } else {
        std::atomic<uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (uint32_t w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                ScDeletionDecoder decoder(plan, config, opt.sigma2);
                for (uint64_t t = next.fetch_add(1); t < opt.trials; t = next.fetch_add(1))
                    run_trial(t, config, plan, opt, decoder, out.rows[t]);
            });
        }
        for (auto& th : pool) th.join();
    }

    SimSummary& s = out.summary;
    s.trials = opt.trials;
    for (const TrialRecord& r : out.rows) {
        s.frame_errors += r.frame_error;
        s.bit_errors += r.bit_errors;
        s.degenerate_trials += r.degenerate;
        s.avg_scenarios += static_cast<double>(r.scenarios_evaluated);
        s.total_elapsed_us += r.elapsed_us;
    }
    if (opt.trials > 0) {
        s.fer = static_cast<double>(s.frame_errors) / static_cast<double>(opt.trials);
        s.ber = static_cast<double>(s.bit_errors) /
                (static_cast<double>(opt.trials) * static_cast<double>(config.K));
        s.avg_scenarios /= static_cast<double>(opt.trials);
    }
    return out;
}

}  // namespace polar
