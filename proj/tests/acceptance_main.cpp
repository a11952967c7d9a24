// Acceptance suite: end-to-end checks of the toolkit at its contract
// tolerances.  Each criterion prints exactly one PASS/FAIL line together with
// its runtime; the process exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "plc/bp_encoder.hpp"
#include "plc/codec.hpp"
#include "plc/harness.hpp"
#include "plc/mathutil.hpp"
#include "plc/oracle.hpp"
#include "plc/reference.hpp"
#include "plc/rng.hpp"
#include "support/test_oracles.hpp"

using namespace plc;

namespace {

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<bool(std::string&)> body;
};

bool check(bool condition, std::string& why, const std::string& message) {
    if (!condition && why.empty()) why = message;
    return condition;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- 1: closed-form channel integrals vs quadrature -------------------------
bool criterion_integrals(std::string& why) {
    const auto& grid = plc::testing::shared_quadrature();
    const double betas[] = {0.5, 2.0, 5.0, 10.0};
    const double ks[] = {0.25, 0.67, 1.28};
    const double deltas[] = {-3.0, -1.5, 0.0, 1.5, 3.0};
    const double as[] = {-1.0, 0.0, 1.0};
    const double qs[] = {0.0, 0.5, 0.9, 0.999};

    std::size_t tuples = 0;
    bool ok = true;
    for (int y : {-1, +1})
        for (double beta : betas)
            for (double k : ks)
                for (double delta : deltas)
                    for (double a : as)
                        for (double q : qs) {
                            ++tuples;
                            const XiIntegrals xi = xi_integrals(y, delta, a, q, k, beta);
                            const auto ref = grid.integrate(y, delta, a, q, k, beta);
                            const auto close = [&](double lhs, double rhs) {
                                const double tol = std::max(
                                    1e-6 * std::max(std::abs(lhs), std::abs(rhs)), 1e-9);
                                return std::abs(lhs - rhs) <= tol;
                            };
                            if (!close(xi.i0, ref.i0) || !close(xi.i1, ref.i1) ||
                                !close(xi.i2, ref.i2)) {
                                ok = check(false, why,
                                           "mismatch at y=" + std::to_string(y) +
                                               " beta=" + fmt(beta) + " k=" + fmt(k) +
                                               " delta=" + fmt(delta) + " a=" + fmt(a) +
                                               " q=" + fmt(q));
                            }
                        }
    return check(tuples >= 500, why, "grid too small") && ok;
}

// --- 2: the iterative encoder never beats the exhaustive oracle -------------
bool criterion_oracle_dominance(std::string& why) {
    RngStream master = RngStream::from_seed(0xACCE0002);
    const std::size_t ns[] = {8, 10, 12};
    const double ps[] = {0.5, 0.8};
    bool ok = true;
    for (int instance = 0; instance < 50; ++instance) {
        const std::size_t n = ns[instance % 3];
        const double p = ps[instance % 2];
        RngStream rng = RngStream::from_seed(master.next_u64());
        auto [y, codebook] = gen_instance(p, 2 * n, n, rng);
        CodecParams params;
        params.k = default_threshold(p);
        const EncodeResult bp = encode_bp(y, codebook, params, rng);
        const OracleResult exact = encode_exhaustive(y, codebook, params.k);
        if (bp.distortion_bits < exact.distortion_bits) {
            ok = check(false, why,
                       "violation at instance " + std::to_string(instance) + ": bp=" +
                           std::to_string(bp.distortion_bits) + " exhaustive=" +
                           std::to_string(exact.distortion_bits));
        }
    }
    return ok;
}

// --- 3: mirror-symmetric fixed point ----------------------------------------
bool criterion_mirror_fixed_point(std::string& why) {
    RngStream rng = RngStream::from_seed(0xACCE0003);
    auto [y, codebook] = gen_instance(0.8, 30, 15, rng);
    CodecParams params;
    params.gamma = 0.0;
    params.k = 0.6745;
    params.beta = 3.0;
    BpState state = init_state(15, 30, 0.0, rng);
    for (int t = 0; t < 10; ++t) {
        state = bp_step(state, y, codebook, params);
        for (double v : state.m) {
            if (!(std::abs(v) <= 1e-12)) {
                return check(false, why,
                             "|m| grew to " + fmt(std::abs(v)) + " at iteration " +
                                 std::to_string(t + 1));
            }
        }
    }
    return true;
}

// --- 4: beta -> 0 contraction ------------------------------------------------
bool criterion_beta_contraction(std::string& why) {
    RngStream rng = RngStream::from_seed(0xACCE0004);
    auto [y, codebook] = gen_instance(0.5, 30, 20, rng);
    CodecParams params;
    params.beta = 1e-12;
    params.gamma = 0.4;
    params.k = 0.6745;
    const BpState state = init_state(20, 30, 0.4, rng);
    const BpState next = bp_step(state, y, codebook, params);
    for (std::size_t i = 0; i < state.m.size(); ++i) {
        if (std::abs(next.m[i] - params.gamma * state.m[i]) > 1e-10) {
            return check(false, why,
                         "component " + std::to_string(i) + " moved by " +
                             fmt(std::abs(next.m[i] - params.gamma * state.m[i])));
        }
    }
    return true;
}

// --- 5: no configuration beats the rate-distortion converse ------------------
bool criterion_rd_converse(std::string& why) {
    bool ok = true;
    for (const double p : {0.5, 0.8}) {
        ExperimentConfig cfg;
        cfg.p = p;
        cfg.rates = {0.3, 0.5};
        cfg.n = 500;
        cfg.trials = 20;
        cfg.params.k = default_threshold(p);
        cfg.auto_beta = true;
        cfg.master_seed = 0xACCE0005;
        cfg.workers = 2;
        const ExperimentResult res = run_experiment(cfg);
        for (const RateAggregate& agg : res.aggregates) {
            const double bound = rdf_inverse(p, agg.rate) - 0.02;
            if (!(agg.mean_d >= bound)) {
                ok = check(false, why,
                           "p=" + fmt(p) + " R=" + fmt(agg.rate) + ": mean " + fmt(agg.mean_d) +
                               " below converse bound " + fmt(bound));
            }
        }
    }
    return ok;
}

// --- 6: qualitative distortion-vs-rate behaviour ------------------------------
bool criterion_rate_curve(std::string& why) {
    ExperimentConfig cfg;
    cfg.p = 0.5;
    cfg.rates = {0.2, 0.3, 0.4, 0.5};
    cfg.n = 500;
    cfg.trials = 20;
    cfg.params.k = default_threshold(0.5);
    cfg.auto_beta = true;  // rate-matched inverse temperature
    cfg.master_seed = 0xACCE0006;
    cfg.workers = 2;
    const std::vector<double> gamma_grid{0.1, 0.3, 0.5, 0.7, 0.9};
    const SweepResult swept = sweep(cfg, SweepAxis::Gamma, gamma_grid);

    std::vector<double> best_mean(cfg.rates.size());
    for (std::size_t i = 0; i < cfg.rates.size(); ++i) {
        best_mean[i] = swept.best_per_rate[i].mean_d;
    }

    bool ok = true;
    // (a) strictly decreasing in R
    for (std::size_t i = 1; i < best_mean.size(); ++i) {
        if (!(best_mean[i] < best_mean[i - 1])) {
            ok = check(false, why,
                       "mean distortion not decreasing: D(R=" + fmt(cfg.rates[i - 1]) + ")=" +
                           fmt(best_mean[i - 1]) + " vs D(R=" + fmt(cfg.rates[i]) + ")=" +
                           fmt(best_mean[i]));
        }
    }
    // (b) clearly below the zero-information baseline
    for (std::size_t i = 0; i < best_mean.size(); ++i) {
        if (!(best_mean[i] <= 0.45)) {
            ok = check(false, why,
                       "R=" + fmt(cfg.rates[i]) + " mean " + fmt(best_mean[i]) +
                           " not below 0.45");
        }
    }
    // (c) the gap to the reference shrinks as the rate decreases
    std::vector<double> gap(best_mean.size());
    for (std::size_t i = 0; i < best_mean.size(); ++i) {
        gap[i] = best_mean[i] - rdf_inverse(0.5, cfg.rates[i]);
    }
    for (std::size_t i = 1; i < gap.size(); ++i) {
        if (!(gap[i - 1] <= gap[i])) {
            ok = check(false, why,
                       "gap not shrinking toward low rates: gap(R=" + fmt(cfg.rates[i - 1]) +
                           ")=" + fmt(gap[i - 1]) + " vs gap(R=" + fmt(cfg.rates[i]) + ")=" +
                           fmt(gap[i]));
        }
    }
    return ok;
}

// --- 7: fidelity failure probability decays with data length -----------------
bool criterion_tail_decay(std::string& why) {
    RngStream master = RngStream::from_seed(0xACCE0007);
    const double k = default_threshold(0.5);
    const std::size_t ms[] = {8, 12, 16, 20};
    std::vector<double> p_hat;
    for (const std::size_t m : ms) {
        RngStream rng = RngStream::from_seed(master.next_u64());
        const ExponentEstimate est =
            estimate_tail_probability(SourceModel{.p = 0.5}, m, 0.5, 0.3, k, 2000, rng);
        p_hat.push_back(est.p_hat);
    }
    bool ok = true;
    for (std::size_t i = 1; i < p_hat.size(); ++i) {
        if (!(p_hat[i] <= p_hat[i - 1])) {
            ok = check(false, why,
                       "P_F rose from " + fmt(p_hat[i - 1]) + " (M=" + std::to_string(ms[i - 1]) +
                           ") to " + fmt(p_hat[i]) + " (M=" + std::to_string(ms[i]) + ")");
        }
    }
    if (!(p_hat.back() < p_hat.front())) {
        ok = check(false, why,
                   "P_F(20)=" + fmt(p_hat.back()) + " not below P_F(8)=" + fmt(p_hat.front()));
    }
    return ok;
}

// --- 8: bit-exact persistence -------------------------------------------------
bool criterion_persistence(std::string& why) {
    RngStream rng = RngStream::from_seed(0xACCE0008);
    bool ok = true;
    for (int round = 0; round < 100; ++round) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng.next_u64() % 40);
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % 64);
        const double k = 2.5 * rng.next_uniform();
        const Codebook codebook = Codebook::from_seed(rng.next_u64(), m, n);
        std::vector<std::int8_t> symbols(n);
        for (auto& s : symbols) s = rng.next_uniform() <= 0.5 ? 1 : -1;
        const BinarySeq s(std::move(symbols));

        const CompressedBlob blob = pack_blob(s, codebook, k);
        const auto bytes = serialize_blob(blob);
        const CompressedBlob back = unpack_blob(bytes);
        if (!(back == blob && serialize_blob(back) == bytes)) {
            ok = check(false, why, "round " + std::to_string(round) + ": container not stable");
            continue;
        }
        if (!(decode_blob(back) == decode(s, codebook, k))) {
            ok = check(false, why,
                       "round " + std::to_string(round) + ": container decode diverged");
        }
    }
    return ok;
}

// --- 9: experiment-level determinism ------------------------------------------
bool criterion_determinism(std::string& why) {
    ExperimentConfig cfg;
    cfg.p = 0.5;
    cfg.rates = {0.4, 0.8};
    cfg.n = 200;
    cfg.trials = 10;
    cfg.params.k = default_threshold(0.5);
    cfg.master_seed = 0xACCE0009;

    cfg.workers = 1;
    const ExperimentResult one = run_experiment(cfg);
    const ExperimentResult one_again = run_experiment(cfg);
    cfg.workers = 2;
    const ExperimentResult two = run_experiment(cfg);
    cfg.workers = 7;
    const ExperimentResult seven = run_experiment(cfg);

    bool ok = check(one.detail_csv() == one_again.detail_csv() &&
                        one.aggregate_csv() == one_again.aggregate_csv(),
                    why, "rerun with identical settings changed the CSV");
    ok = check(one.detail_csv() == two.detail_csv() && one.detail_csv() == seven.detail_csv(),
               why, "worker count changed the CSV") &&
         ok;
    ok = check(one.aggregate_csv() == two.aggregate_csv(), why,
               "worker count changed the aggregate CSV") &&
         ok;
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"closed-form channel integrals match 200k-point quadrature", 30.0,
         criterion_integrals},
        {"encoder distortion dominates the exhaustive minimum (50 instances)", 120.0,
         criterion_oracle_dominance},
        {"mirror-symmetric start is a fixed point without inertia", 1.0,
         criterion_mirror_fixed_point},
        {"beta -> 0 sweep contracts magnetizations by gamma", 1.0, criterion_beta_contraction},
        {"mean distortion respects the rate-distortion converse", 600.0, criterion_rd_converse},
        {"best-gamma distortion curve behaves like the reference study", 1800.0,
         criterion_rate_curve},
        {"empirical failure probability decays with data length", 300.0, criterion_tail_decay},
        {"containers persist bit-exactly and decode identically", 10.0, criterion_persistence},
        {"experiments are byte-deterministic across runs and workers", 300.0,
         criterion_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string why;
        bool passed = false;
        try {
            passed = criteria[i].body(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > criteria[i].budget_seconds) {
            passed = false;
            if (why.empty()) {
                why = "exceeded the " + fmt(criteria[i].budget_seconds) + " s budget";
            }
        }
        std::printf("%s  criterion %zu: %s  (%.2f s / budget %.0f s)%s%s\n",
                    passed ? "PASS" : "FAIL", i + 1, criteria[i].name, seconds,
                    criteria[i].budget_seconds, why.empty() ? "" : " -- ", why.c_str());
        std::fflush(stdout);
        if (!passed) ++failures;
    }
    return failures;
}
