#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polar/channel.hpp"
#include "polar/decoder.hpp"
#include "polar/reference.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

using namespace polar;

namespace {

PrunePolicy policy_of(PolicyKind kind, double tau1 = 0.0, double pe = 0.0, bool literal = false) {
    PrunePolicy p;
    p.kind = kind;
    p.tau1 = tau1;
    p.pe_bound = pe;
    p.literal_leq = literal;
    return p;
}

DecoderPlan plan_for(uint32_t N, uint32_t d, const PrunePolicy& policy) {
    if (policy.kind == PolicyKind::PSPC || policy.kind == PolicyKind::SPSPC) {
        const ThresholdTable t = build_threshold_table(N, d, policy);
        return make_decoder_plan(N, d, policy, &t);
    }
    return make_decoder_plan(N, d, policy, nullptr);
}

struct Trial {
    std::vector<uint8_t> u;
    std::vector<double> y;
};

Trial make_trial(const CodeConfig& cfg, uint32_t d, double sigma2, uint64_t seed, uint64_t t) {
    auto rng = make_trial_rng(seed, t);
    Trial tr;
    tr.u.resize(cfg.N);
    for (uint32_t i = 0; i < cfg.N; ++i)
        tr.u[i] = cfg.frozen_mask[i] ? cfg.frozen_values[i] : static_cast<uint8_t>(rng() & 1u);
    ChannelParams p;
    p.d = d;
    p.sigma2 = sigma2;
    tr.y = transmit(encode(tr.u, cfg), p, rng).y;
    return tr;
}

bool pairs_close(const std::vector<std::array<double, 2>>& a,
                 const std::vector<std::array<double, 2>>& b, double rel) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < 2; ++j) {
            const double diff = std::abs(a[i][j] - b[i][j]);
            const double scale = std::max(std::max(a[i][j], b[i][j]), 1e-300);
            if (diff > rel * scale) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("leaf_likelihood conventions") {
    const std::vector<double> y{1.0, 0.0, -0.4};
    CHECK(leaf_likelihood(y, {0, 1, 7}, 0, 1, 0.5) == std::array<double, 2>{1.0, 1.0});
    CHECK(leaf_likelihood({}, {0, 1, 0}, 0, 1, 0.5) == std::array<double, 2>{1.0, 1.0});

    // Received +1 at sigma2=0.5: likelihood ratio exp(4).
    const auto p = leaf_likelihood(y, {0, 1, 7}, 0, 0, 0.5);
    CHECK(p[0] / p[1] == doctest::Approx(std::exp(4.0)).epsilon(1e-12));

    // Received 0: both hypotheses equally likely.
    const auto z = leaf_likelihood(y, {1, 1, 6}, 0, 0, 0.5);
    CHECK(z[0] == z[1]);

    // One deletion before the leaf shifts the received index down.
    const auto s = leaf_likelihood(y, {2, 1, 5}, 1, 0, 0.5);
    CHECK(s == leaf_likelihood(y, {1, 1, 6}, 0, 0, 0.5));

    CHECK_THROWS_AS(leaf_likelihood(y, {0, 2, 6}, 0, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(leaf_likelihood(y, {0, 1, 7}, 0, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(leaf_likelihood(y, {5, 1, 2}, 0, 0, 0.5), std::logic_error);
}

TEST_CASE("count_scenarios closed forms") {
    // d=0: one scenario per node visit, N(1 + log2 N) total.
    CHECK(count_scenarios(4, 0, policy_of(PolicyKind::NONE), nullptr) == 12);
    CHECK(count_scenarios(16, 0, policy_of(PolicyKind::NONE), nullptr) == 80);
    CHECK(count_scenarios(64, 0, policy_of(PolicyKind::NONE), nullptr) == 448);

    // N=4, d=1, hand enumeration: leaves contribute 2+3+3+2 = 10 (one visit
    // each), layer 1 contributes 2 scenarios in each of 2 classes over 2
    // phases = 8, the root 1 scenario over 4 phases = 4.
    CHECK(count_scenarios(4, 1, policy_of(PolicyKind::NONE), nullptr) == 22);

    // Pruning never fires at d=0 regardless of policy.
    CHECK(count_scenarios(64, 0, policy_of(PolicyKind::SSSC, 1e-6), nullptr) == 448);
    const PrunePolicy pspc = policy_of(PolicyKind::PSPC, 0.0, 1e-2);
    const ThresholdTable t = build_threshold_table(64, 0, pspc);
    CHECK(count_scenarios(64, 0, pspc, &t) == 448);
}

TEST_CASE("counters match the static count and the feasible total") {
    const uint32_t N = 32, d = 3;
    const CodeConfig cfg = make_code_config(N, 16, 0.5);
    for (PolicyKind kind :
         {PolicyKind::NONE, PolicyKind::SSSC, PolicyKind::PSPC, PolicyKind::SPSPC}) {
        const PrunePolicy policy = policy_of(kind, 1e-6, 1e-4);
        const DecoderPlan plan = plan_for(N, d, policy);
        ScDeletionDecoder dec(plan, cfg, 0.5);
        for (uint64_t t = 0; t < 10; ++t) {
            const Trial tr = make_trial(cfg, d, 0.5, 99, t);
            const DecodeResult res = dec.decode(tr.y);
            CHECK(res.counters.scenarios_evaluated == plan.static_scenario_count());
            CHECK(res.counters.scenarios_evaluated + res.counters.scenarios_pruned ==
                  plan.static_feasible_count());
            CHECK(res.counters.nodes_visited == N * (1 + plan.n()));
        }
    }
}

TEST_CASE("noiseless decode inverts the encoder") {
    for (uint32_t K : {16u, 8u}) {
        const CodeConfig cfg = make_code_config(16, K, 0.5);
        const DecoderPlan plan = plan_for(16, 0, policy_of(PolicyKind::NONE));
        ScDeletionDecoder dec(plan, cfg, 1e-4);
        for (uint64_t t = 0; t < 50; ++t) {
            auto rng = make_trial_rng(7, t);
            std::vector<uint8_t> u(16);
            for (uint32_t i = 0; i < 16; ++i)
                u[i] = cfg.frozen_mask[i] ? 0 : static_cast<uint8_t>(rng() & 1u);
            const DecodeResult res = dec.decode(modulate(encode(u, cfg)));
            CHECK(res.u_hat == u);
        }
    }
}

TEST_CASE("d=0 decode is bit-identical to the textbook reference") {
    const CodeConfig cfg = make_code_config(64, 32, 0.5);
    const DecoderPlan plan = plan_for(64, 0, policy_of(PolicyKind::NONE));
    ScDeletionDecoder dec(plan, cfg, 0.5);
    for (uint64_t t = 0; t < 200; ++t) {
        const Trial tr = make_trial(cfg, 0, 0.5, 41, t);
        const DecodeResult a = dec.decode(tr.y);
        const ReferenceResult b = reference_sc_decode(tr.y, cfg, 0.5);
        CHECK(a.u_hat == b.u_hat);
        CHECK(pairs_close(a.root_pairs, b.root_pairs, 1e-9));
    }
}

TEST_CASE("decode agrees with the brute-force pattern oracle") {
    for (auto [N, d] : std::vector<std::pair<uint32_t, uint32_t>>{{4, 1}, {4, 2}, {8, 1}, {8, 2}}) {
        const CodeConfig cfg = make_code_config(N, N / 2, 0.5);
        const DecoderPlan plan = plan_for(N, d, policy_of(PolicyKind::NONE));
        ScDeletionDecoder dec(plan, cfg, 0.5);
        for (uint64_t t = 0; t < 10; ++t) {
            const Trial tr = make_trial(cfg, d, 0.5, 1000 + N * 10 + d, t);
            const DecodeResult a = dec.decode(tr.y);
            const BruteForceResult b = brute_force_decode(tr.y, cfg, d, 0.5);
            CHECK(a.u_hat == b.u_hat);
            CHECK(pairs_close(a.root_pairs, b.root_pairs, 1e-9));
        }
    }
}

TEST_CASE("root node carries the single scenario (0,d,0)") {
    const uint32_t N = 16, d = 3;
    const CodeConfig cfg = make_code_config(N, 8, 0.5);
    const DecoderPlan plan = plan_for(N, d, policy_of(PolicyKind::NONE));
    ScDeletionDecoder dec(plan, cfg, 0.5);
    const Trial tr = make_trial(cfg, d, 0.5, 3, 0);
    dec.decode(tr.y);
    const ScenarioLikelihoods root = dec.node_likelihoods(4, 0);
    REQUIRE(root.scenarios.size() == 1);
    CHECK(root.scenarios[0] == Scenario{0, d, 0});
}

TEST_CASE("per-bit metric is consistent with decisions") {
    const uint32_t N = 32, d = 2;
    const CodeConfig cfg = make_code_config(N, 16, 0.5);
    const DecoderPlan plan = plan_for(N, d, policy_of(PolicyKind::NONE));
    ScDeletionDecoder dec(plan, cfg, 0.5);
    for (uint64_t t = 0; t < 20; ++t) {
        const Trial tr = make_trial(cfg, d, 0.5, 55, t);
        const DecodeResult res = dec.decode(tr.y);
        for (uint32_t i = 0; i < N; ++i) {
            if (cfg.frozen_mask[i]) {
                CHECK(res.u_hat[i] == cfg.frozen_values[i]);
                continue;
            }
            if (res.u_hat[i] == 1)
                CHECK(res.per_bit_metric[i] < 1.0);
            else
                CHECK(res.per_bit_metric[i] > 1.0 - 1e-9);
        }
    }
}

TEST_CASE("nonzero frozen values are forced end to end") {
    std::vector<uint8_t> fv(8, 0);
    fv[0] = 1;
    fv[1] = 1;
    const CodeConfig cfg = make_code_config(8, 4, {1, 2, 3, 5}, fv);

    // d=0 at near-zero noise: exact recovery, frozen ones included.
    const DecoderPlan clean = plan_for(8, 0, policy_of(PolicyKind::NONE));
    ScDeletionDecoder dec0(clean, cfg, 0.01);
    for (uint64_t t = 0; t < 50; ++t) {
        const Trial tr = make_trial(cfg, 0, 0.01, 76, t);
        CHECK(dec0.decode(tr.y).u_hat == tr.u);
    }

    // d=1: deletion position ambiguity can merge codewords, so the claim is
    // agreement with the pattern oracle, plus the forced frozen bits.
    const DecoderPlan plan = plan_for(8, 1, policy_of(PolicyKind::NONE));
    ScDeletionDecoder dec(plan, cfg, 0.01);
    for (uint64_t t = 0; t < 50; ++t) {
        const Trial tr = make_trial(cfg, 1, 0.01, 77, t);
        const DecodeResult res = dec.decode(tr.y);
        CHECK(res.u_hat[0] == 1);
        CHECK(res.u_hat[1] == 1);
        CHECK(res.u_hat == brute_force_decode(tr.y, cfg, 1, 0.01).u_hat);
    }
}

TEST_CASE("counters are input-independent") {
    const uint32_t N = 16, d = 2;
    const CodeConfig cfg = make_code_config(N, 8, 0.5);
    const DecoderPlan plan = plan_for(N, d, policy_of(PolicyKind::SSSC, 1e-3));
    ScDeletionDecoder dec(plan, cfg, 0.5);
    const DecodeResult a = dec.decode(make_trial(cfg, d, 0.5, 5, 0).y);
    const DecodeResult b = dec.decode(make_trial(cfg, d, 0.5, 5, 1).y);
    CHECK(a.counters.scenarios_evaluated == b.counters.scenarios_evaluated);
    CHECK(a.counters.scenarios_pruned == b.counters.scenarios_pruned);
    CHECK(a.counters.nodes_visited == b.counters.nodes_visited);
}

TEST_CASE("pruning reduces work, strictly at scale") {
    const uint32_t N = 512, d = 5;
    const CodeConfig cfg = make_code_config(N, 256, 0.5);
    const DecoderPlan none = plan_for(N, d, policy_of(PolicyKind::NONE));
    const DecoderPlan sssc = plan_for(N, d, policy_of(PolicyKind::SSSC, 1e-6));
    const DecoderPlan pspc = plan_for(N, d, policy_of(PolicyKind::PSPC, 0.0, 1e-6));
    const DecoderPlan spspc = plan_for(N, d, policy_of(PolicyKind::SPSPC, 0.0, 1e-6));

    // Cross-checked against an independent enumeration of all node classes.
    CHECK(none.static_scenario_count() == 73202);

    const Trial tr = make_trial(cfg, d, 0.5, 2718, 0);
    ScDeletionDecoder dn(none, cfg, 0.5), ds(sssc, cfg, 0.5);
    const uint64_t en = dn.decode(tr.y).counters.scenarios_evaluated;
    const uint64_t es = ds.decode(tr.y).counters.scenarios_evaluated;
    CHECK(en == none.static_scenario_count());
    CHECK(es == sssc.static_scenario_count());
    CHECK(es < en);
    CHECK(pspc.static_scenario_count() <= en);
    CHECK(spspc.static_scenario_count() <= en);
}

TEST_CASE("per-node rescaling leaves decisions unchanged") {
    const uint32_t N = 16, d = 2;
    const CodeConfig cfg = make_code_config(N, 8, 0.5);
    const DecoderPlan plan = plan_for(N, d, policy_of(PolicyKind::NONE));
    ScDeletionDecoder base(plan, cfg, 0.5);
    ScDeletionDecoder pow2(plan, cfg, 0.5);
    ScDeletionDecoder odd(plan, cfg, 0.5);
    pow2.set_scale_hook([](NodeCoord nc) {
        return ((nc.lambda + nc.phi + nc.beta) % 2) ? std::ldexp(1.0, 40) : std::ldexp(1.0, -40);
    });
    odd.set_scale_hook([](NodeCoord nc) { return ((nc.phi + nc.beta) % 3) ? 3.0 : 0.37; });
    for (uint64_t t = 0; t < 20; ++t) {
        const Trial tr = make_trial(cfg, d, 0.5, 4242, t);
        const DecodeResult a = base.decode(tr.y);
        const DecodeResult b = pow2.decode(tr.y);
        const DecodeResult c = odd.decode(tr.y);
        CHECK(a.u_hat == b.u_hat);
        CHECK(a.root_pairs == b.root_pairs);  // power-of-two scaling is exact
        CHECK(a.u_hat == c.u_hat);
        CHECK(pairs_close(a.root_pairs, c.root_pairs, 1e-9));
    }
}

TEST_CASE("fully pruned nodes raise a degenerate-decode error") {
    const uint32_t N = 8, d = 1;
    const CodeConfig cfg = make_code_config(N, 4, 0.5);
    const DecoderPlan starved = plan_for(N, d, policy_of(PolicyKind::SSSC, 10.0));
    CHECK(starved.has_starved_class());
    ScDeletionDecoder dec(starved, cfg, 0.5);
    const Trial tr = make_trial(cfg, d, 0.5, 8, 0);
    bool threw = false;
    try {
        dec.decode(tr.y);
    } catch (const DecodeDegenerate& e) {
        threw = true;
        CHECK(e.node.lambda >= 1);
        CHECK(e.node.lambda <= 2);
        CHECK(std::string(e.what()).find("lambda=") != std::string::npos);
    }
    CHECK(threw);

    // The literal <= rule starves a tied node that the k-prefix rule keeps.
    const DecoderPlan literal = plan_for(4, 1, policy_of(PolicyKind::PSPC, 0.0, 0.6, true));
    CHECK(literal.has_starved_class());
    const DecoderPlan kprefix = plan_for(4, 1, policy_of(PolicyKind::PSPC, 0.0, 0.6, false));
    CHECK_FALSE(kprefix.has_starved_class());
}

TEST_CASE("interface guards") {
    const CodeConfig cfg = make_code_config(8, 4, 0.5);
    const DecoderPlan plan = plan_for(8, 1, policy_of(PolicyKind::NONE));
    ScDeletionDecoder dec(plan, cfg, 0.5);
    CHECK_THROWS_AS(dec.decode(std::vector<double>(8, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(dec.decode(std::vector<double>(6, 0.0)), std::invalid_argument);

    CHECK_THROWS_AS(ScDeletionDecoder(plan, cfg, 0.0), std::invalid_argument);
    const CodeConfig other = make_code_config(16, 8, 0.5);
    CHECK_THROWS_AS(ScDeletionDecoder(plan, other, 0.5), std::invalid_argument);

    const PrunePolicy pspc = policy_of(PolicyKind::PSPC, 0.0, 1e-4);
    CHECK_THROWS_AS(make_decoder_plan(8, 1, pspc, nullptr), std::invalid_argument);
    const ThresholdTable wrong = build_threshold_table(8, 2, pspc);
    CHECK_THROWS_AS(make_decoder_plan(8, 1, pspc, &wrong), std::invalid_argument);
    CHECK_THROWS_AS(make_decoder_plan(6, 1, policy_of(PolicyKind::NONE), nullptr),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_decoder_plan(8, 9, policy_of(PolicyKind::NONE), nullptr),
                    std::invalid_argument);
}

TEST_CASE("d=N leaves no observation and decodes to ties") {
    const CodeConfig cfg = make_code_config(4, 4, 0.5);
    const DecoderPlan plan = plan_for(4, 4, policy_of(PolicyKind::NONE));
    ScDeletionDecoder dec(plan, cfg, 0.5);
    const DecodeResult res = dec.decode({});
    CHECK(res.u_hat == std::vector<uint8_t>(4, 0));  // all exact ties resolve to 0
    for (const auto& p : res.root_pairs) {
        CHECK(p[0] == doctest::Approx(0.5));
        CHECK(p[1] == doctest::Approx(0.5));
    }
}
