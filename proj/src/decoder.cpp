#include "polar/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace polar {

namespace {

std::string node_str(const NodeCoord& node) {
    std::ostringstream os;
    os << "(lambda=" << node.lambda << ", phi=" << node.phi << ", beta=" << node.beta << ")";
    return os.str();
}

}  // namespace

DecodeDegenerate::DecodeDegenerate(NodeCoord node_, Counters counters_)
    : std::runtime_error("decode degenerate at node " + node_str(node_) +
                         ": no surviving scenario mass"),
      node(node_),
      counters(counters_) {}

std::array<double, 2> leaf_likelihood(const std::vector<double>& y, const SegmentSplit& split,
                                      uint32_t d1, uint32_t d2, double sigma2) {
    if (split.N2 != 1) throw std::invalid_argument("leaf_likelihood: node must cover one symbol");
    if (d2 > 1) throw std::invalid_argument("leaf_likelihood: d2 must be 0 or 1 at a leaf");
    if (d2 == 1) return {1.0, 1.0};
    if (d1 > split.N1 || split.N1 - d1 >= y.size())
        throw std::logic_error("leaf_likelihood: received index out of range (bookkeeping bug)");
    const double v = y[split.N1 - d1];
    const double inv = 1.0 / (2.0 * sigma2);
    return {std::exp(-(v - 1.0) * (v - 1.0) * inv), std::exp(-(v + 1.0) * (v + 1.0) * inv)};
}

DecoderPlan make_decoder_plan(uint32_t N, uint32_t d, const PrunePolicy& policy,
                              const ThresholdTable* table) {
    if (N < 2 || (N & (N - 1)) != 0)
        throw std::invalid_argument("make_decoder_plan: N must be a power of two >= 2");
    if (d > N) throw std::invalid_argument("make_decoder_plan: d exceeds N");
    validate_policy(policy);
    const bool tabled = policy.kind == PolicyKind::PSPC || policy.kind == PolicyKind::SPSPC;
    if (tabled) {
        if (!table) throw std::invalid_argument("make_decoder_plan: policy requires a threshold table");
        if (table->N() != N || table->d() != d || table->kind() != policy.kind)
            throw std::invalid_argument("make_decoder_plan: table does not match (N, d, policy)");
    }

    DecoderPlan plan;
    plan.N_ = N;
    plan.d_ = d;
    plan.policy_ = policy;
    uint32_t n = 0;
    while ((1u << n) < N) ++n;
    plan.n_ = n;
    plan.classes_.resize(n + 1);
    plan.layer_slots_.assign(n + 1, 0);
    const uint32_t dd = d + 1;

    for (uint32_t lambda = 0; lambda <= n; ++lambda) {
        const uint32_t betas = 1u << (n - lambda);
        plan.classes_[lambda].resize(betas);
        uint32_t offset = 0;
        for (uint32_t beta = 0; beta < betas; ++beta) {
            detail::PlanClass& cls = plan.classes_[lambda][beta];
            const SegmentSplit split = segment_split({lambda, 0, beta}, N);
            cls.feasible = enumerate_scenarios(split, d);
            cls.survive.assign(cls.feasible.size(), 1);
            const bool prunable = lambda >= 1 && lambda <= n - 1 && policy.kind != PolicyKind::NONE;
            if (prunable) {
                const ThresholdEntry* entry = tabled ? &table->at(lambda, beta) : nullptr;
                for (size_t i = 0; i < cls.feasible.size(); ++i) {
                    const Rational J = joint_weight(split, cls.feasible[i], N, d);
                    cls.survive[i] =
                        scenario_survives(J, static_cast<uint32_t>(i), policy, entry) ? 1 : 0;
                }
            }
            cls.slot_offset = offset;
            cls.slot_of.assign(static_cast<size_t>(dd) * dd, -1);
            for (size_t i = 0; i < cls.feasible.size(); ++i) {
                if (!cls.survive[i]) continue;
                const Scenario& s = cls.feasible[i];
                detail::PlanScenario ps;
                ps.s = s;
                if (lambda == 0) {
                    ps.y_index = (s.d2 == 1) ? -1 : static_cast<int32_t>(beta - s.d1);
                } else {
                    const uint32_t h = split.N2 / 2;
                    const detail::PlanClass& left = plan.classes_[lambda - 1][2 * beta];
                    const detail::PlanClass& right = plan.classes_[lambda - 1][2 * beta + 1];
                    ps.term_begin = static_cast<uint32_t>(plan.terms_.size());
                    const uint32_t t_lo = s.d2 > h ? s.d2 - h : 0;
                    const uint32_t t_hi = std::min(h, s.d2);
                    for (uint32_t t = t_lo; t <= t_hi; ++t) {
                        const int32_t ls = left.slot_of[s.d1 * dd + t];
                        const int32_t rs = right.slot_of[(s.d1 + t) * dd + (s.d2 - t)];
                        if (ls < 0 || rs < 0) continue;  // pruned child: exact zero
                        Rational w(binom(h, t) * binom(h, s.d2 - t), binom(split.N2, s.d2));
                        w.canonicalize();
                        plan.terms_.push_back({to_double(w), left.slot_offset + ls,
                                               right.slot_offset + rs});
                    }
                    ps.term_end = static_cast<uint32_t>(plan.terms_.size());
                }
                cls.slot_of[s.d1 * dd + s.d2] = static_cast<int32_t>(cls.slots.size());
                cls.slots.push_back(ps);
            }
            offset += static_cast<uint32_t>(cls.slots.size());
            plan.static_count_ += (1ull << lambda) * cls.slots.size();
            plan.static_feasible_ += (1ull << lambda) * cls.feasible.size();
            if (cls.slots.empty()) ++plan.starved_count_;
        }
        plan.layer_slots_[lambda] = offset;
    }
    return plan;
}

uint64_t count_scenarios(const DecoderPlan& plan) { return plan.static_scenario_count(); }

uint64_t count_scenarios(uint32_t N, uint32_t d, const PrunePolicy& policy,
                         const ThresholdTable* table) {
    return make_decoder_plan(N, d, policy, table).static_scenario_count();
}

ScDeletionDecoder::ScDeletionDecoder(const DecoderPlan& plan, const CodeConfig& config,
                                     double sigma2)
    : plan_(plan), config_(config), sigma2_(sigma2) {
    if (config.N != plan.N())
        throw std::invalid_argument("ScDeletionDecoder: config and plan disagree on N");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("ScDeletionDecoder: sigma2 must be > 0");
    const uint32_t n = plan.n();
    P_.resize(n + 1);
    C_.resize(n + 1);
    scale_exp_.resize(n + 1);
    for (uint32_t lambda = 0; lambda <= n; ++lambda) {
        P_[lambda].assign(plan.layer_slots_[lambda], {0.0, 0.0});
        C_[lambda].assign(2ull << (n - lambda), 0);
        scale_exp_[lambda].assign(1u << (n - lambda), 0);
    }
}

void ScDeletionDecoder::finish_node(uint32_t lambda, uint32_t phi, uint32_t beta,
                                    uint32_t slot_begin, uint32_t slot_count) {
    const detail::PlanClass& cls = plan_.classes_[lambda][beta];
    ++counters_.nodes_visited;
    counters_.scenarios_evaluated += slot_count;
    counters_.scenarios_pruned += cls.feasible.size() - slot_count;
    if (slot_count == 0) throw DecodeDegenerate({lambda, phi, beta}, counters_);

    auto* vals = &P_[lambda][slot_begin];
    if (scale_hook_) {
        const double f = scale_hook_({lambda, phi, beta});
        for (uint32_t j = 0; j < slot_count; ++j) {
            vals[j][0] *= f;
            vals[j][1] *= f;
        }
    }
    double m = 0.0;
    for (uint32_t j = 0; j < slot_count; ++j) m = std::max(m, std::max(vals[j][0], vals[j][1]));
    if (m == 0.0) throw DecodeDegenerate({lambda, phi, beta}, counters_);
    const int e = std::ilogb(m);
    if (e != 0) {
        const double f = std::ldexp(1.0, -e);
        for (uint32_t j = 0; j < slot_count; ++j) {
            vals[j][0] *= f;
            vals[j][1] *= f;
        }
    }
    int child_exp = 0;
    if (lambda > 0)
        child_exp = scale_exp_[lambda - 1][2 * beta] + scale_exp_[lambda - 1][2 * beta + 1];
    scale_exp_[lambda][beta] = child_exp + e;
}

void ScDeletionDecoder::load_leaves(const std::vector<double>& y) {
    const uint32_t N = plan_.N();
    const double inv = 1.0 / (2.0 * sigma2_);
    for (uint32_t beta = 0; beta < N; ++beta) {
        const detail::PlanClass& cls = plan_.classes_[0][beta];
        for (size_t j = 0; j < cls.slots.size(); ++j) {
            const int32_t yi = cls.slots[j].y_index;
            auto& pair = P_[0][cls.slot_offset + j];
            if (yi < 0) {
                pair = {1.0, 1.0};
            } else {
                if (static_cast<size_t>(yi) >= y.size())
                    throw std::logic_error("decode: leaf symbol index out of range (bookkeeping bug)");
                const double v = y[yi];
                pair = {std::exp(-(v - 1.0) * (v - 1.0) * inv),
                        std::exp(-(v + 1.0) * (v + 1.0) * inv)};
            }
        }
        finish_node(0, 0, beta, cls.slot_offset, static_cast<uint32_t>(cls.slots.size()));
    }
}

void ScDeletionDecoder::calc_layer(uint32_t lambda, uint32_t phi) {
    if (lambda == 0) return;  // leaves are loaded once per decode
    if ((phi & 1u) == 0) calc_layer(lambda - 1, phi >> 1);
    const uint32_t parity = phi & 1u;
    const uint32_t betas = 1u << (plan_.n() - lambda);
    const auto& lower = P_[lambda - 1];
    for (uint32_t beta = 0; beta < betas; ++beta) {
        const detail::PlanClass& cls = plan_.classes_[lambda][beta];
        const uint8_t up = C_[lambda][beta * 2];
        for (size_t j = 0; j < cls.slots.size(); ++j) {
            const detail::PlanScenario& ps = cls.slots[j];
            double w0 = 0.0, w1 = 0.0;
            if (parity == 0) {
                for (uint32_t ti = ps.term_begin; ti < ps.term_end; ++ti) {
                    const detail::PlanTerm& t = plan_.terms_[ti];
                    const auto& L = lower[t.left_slot];
                    const auto& R = lower[t.right_slot];
                    w0 += t.w * (L[0] * R[0] + L[1] * R[1]);
                    w1 += t.w * (L[0] * R[1] + L[1] * R[0]);
                }
            } else {
                for (uint32_t ti = ps.term_begin; ti < ps.term_end; ++ti) {
                    const detail::PlanTerm& t = plan_.terms_[ti];
                    const auto& L = lower[t.left_slot];
                    const auto& R = lower[t.right_slot];
                    w0 += t.w * L[up] * R[0];
                    w1 += t.w * L[up ^ 1] * R[1];
                }
            }
            P_[lambda][cls.slot_offset + j] = {w0, w1};
        }
        finish_node(lambda, phi, beta, cls.slot_offset, static_cast<uint32_t>(cls.slots.size()));
    }
}

void ScDeletionDecoder::update_partial_sums(uint32_t lambda, uint32_t phi) {
    const uint32_t psi = phi >> 1;
    const uint32_t parity = psi & 1u;
    const uint32_t betas = 1u << (plan_.n() - lambda);
    for (uint32_t beta = 0; beta < betas; ++beta) {
        C_[lambda - 1][(2 * beta) * 2 + parity] = C_[lambda][beta * 2] ^ C_[lambda][beta * 2 + 1];
        C_[lambda - 1][(2 * beta + 1) * 2 + parity] = C_[lambda][beta * 2 + 1];
    }
    if (parity == 1 && lambda >= 2) update_partial_sums(lambda - 1, psi);
}

DecodeResult ScDeletionDecoder::decode(const std::vector<double>& y) {
    const uint32_t N = plan_.N();
    const uint32_t n = plan_.n();
    if (y.size() != N - plan_.d())
        throw std::invalid_argument("decode: received length " + std::to_string(y.size()) +
                                    " does not match N - d = " + std::to_string(N - plan_.d()));
    counters_ = Counters{};
    DecodeResult res;
    res.u_hat.assign(N, 0);
    res.per_bit_metric.assign(N, 0.0);
    res.root_pairs.assign(N, {0.0, 0.0});

    load_leaves(y);
    const uint32_t root_slot = plan_.classes_[n][0].slot_offset;
    for (uint32_t phi = 0; phi < N; ++phi) {
        calc_layer(n, phi);
        const double w0 = P_[n][root_slot][0];
        const double w1 = P_[n][root_slot][1];
        const double sum = w0 + w1;
        res.root_pairs[phi] = {w0 / sum, w1 / sum};
        const uint32_t ui = bit_reverse(phi, n);
        uint8_t bit;
        if (config_.frozen_mask[ui]) {
            bit = config_.frozen_values[ui];
        } else {
            bit = (w1 - w0 > kTieRelTol * sum) ? 1 : 0;
        }
        res.per_bit_metric[ui] = w0 / w1;
        res.u_hat[ui] = bit;
        C_[n][phi & 1u] = bit;
        if (phi & 1u) update_partial_sums(n, phi);
    }
    res.counters = counters_;
    return res;
}

ScenarioLikelihoods ScDeletionDecoder::node_likelihoods(uint32_t lambda, uint32_t beta) const {
    if (lambda >= P_.size() || beta >= plan_.classes_[lambda].size())
        throw std::invalid_argument("node_likelihoods: node out of range");
    const detail::PlanClass& cls = plan_.classes_[lambda][beta];
    ScenarioLikelihoods out;
    out.scale_exp = scale_exp_[lambda][beta];
    for (size_t j = 0; j < cls.slots.size(); ++j) {
        out.scenarios.push_back(cls.slots[j].s);
        out.values.push_back(P_[lambda][cls.slot_offset + j]);
    }
    return out;
}

}  // namespace polar
