#include "plc/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

#include "plc/codec.hpp"
#include "plc/mathutil.hpp"
#include "plc/reference.hpp"

namespace plc {

namespace {

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string fmt(std::size_t v) {
    return std::to_string(v);
}

// Jobs must not throw; failures are recorded inside each job.
void parallel_for_index(std::size_t count, std::size_t workers,
                        const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min(workers, count);
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

std::size_t rows_for_rate(std::size_t n, double rate) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n) / rate));
}

void append_detail_row(std::string& out, const TrialRow& row) {
    out += fmt(row.p) + ',' + fmt(row.rate) + ',' + fmt(row.n) + ',' + fmt(row.m) + ',' +
           fmt(row.trial) + ',' + fmt(row.seed) + ',' + fmt(row.iters) + ',' +
           (row.converged ? "1" : "0") + ',';
    if (row.error.empty()) {
        out += fmt(row.distortion_bits) + ',' + fmt(row.distortion_per_bit);
    } else {
        out += "nan,nan";
    }
    out += '\n';
}

void append_aggregate_row(std::string& out, const RateAggregate& agg) {
    out += fmt(agg.p) + ',' + fmt(agg.rate) + ',' + fmt(agg.n) + ',' + fmt(agg.m) + ',' +
           fmt(agg.trials) + ',' + fmt(agg.mean_d) + ',' + fmt(agg.stderr_d) + ',' +
           fmt(agg.rdf_d) + ',' + fmt(agg.k) + ',' + fmt(agg.beta) + ',' + fmt(agg.gamma) + '\n';
}

void append_error_comments(std::string& out, const std::vector<TrialRow>& details) {
    for (const TrialRow& row : details) {
        if (!row.error.empty()) {
            out += "# error,R=" + fmt(row.rate) + ",trial=" + fmt(row.trial) + ": " + row.error +
                   '\n';
        }
    }
}

constexpr const char* kDetailHeader = "p,R,N,M,trial,seed,iters,converged,distortion_bits,distortion_per_bit";
constexpr const char* kAggregateHeader = "p,R,N,M,trials,mean_D,stderr_D,rdf_D,k,beta,gamma";

}  // namespace

void ExperimentConfig::validate() const {
    SourceModel{.p = p}.validate();
    if (rates.empty()) {
        throw InvalidArgument("at least one rate is required");
    }
    for (double r : rates) {
        if (!(r > 0.0 && r <= 1.0)) {
            throw InvalidArgument("rates must lie in (0,1], got " + fmt(r));
        }
    }
    if (n == 0) {
        throw InvalidArgument("codeword length n must be positive");
    }
    if (trials == 0) {
        throw InvalidArgument("trials must be >= 1");
    }
    if (workers == 0) {
        throw InvalidArgument("workers must be >= 1");
    }
    params.validate();
}

std::pair<BinarySeq, Codebook> gen_instance(double p, std::size_t m_rows, std::size_t n_cols,
                                            RngStream& rng) {
    SourceModel{.p = p}.validate();
    if (m_rows == 0 || n_cols == 0) {
        throw InvalidArgument("instance dimensions must be positive");
    }
    // One uniform per data symbol, all consumed before the codebook split.
    std::vector<std::int8_t> symbols(m_rows);
    for (auto& s : symbols) s = rng.next_uniform() <= p ? 1 : -1;
    const std::uint64_t codebook_seed = rng.next_u64();
    return {BinarySeq(std::move(symbols)), Codebook::from_seed(codebook_seed, m_rows, n_cols)};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    // Child seeds are drawn up front in (rate, trial) order so the result is
    // independent of how jobs get scheduled.
    RngStream master = RngStream::from_seed(cfg.master_seed);
    const std::size_t job_count = cfg.rates.size() * cfg.trials;
    std::vector<std::uint64_t> child_seeds(job_count);
    for (auto& seed : child_seeds) seed = master.next_u64();

    std::vector<CodecParams> rate_params(cfg.rates.size(), cfg.params);
    if (cfg.auto_beta) {
        for (std::size_t i = 0; i < cfg.rates.size(); ++i) {
            rate_params[i].beta = default_beta(cfg.p, cfg.rates[i]);
        }
    }

    std::vector<TrialRow> details(job_count);
    parallel_for_index(job_count, cfg.workers, [&](std::size_t job) {
        const std::size_t rate_idx = job / cfg.trials;
        const std::size_t trial = job % cfg.trials;
        const double rate = cfg.rates[rate_idx];
        const std::size_t m_rows = rows_for_rate(cfg.n, rate);

        TrialRow row;
        row.p = cfg.p;
        row.rate = rate;
        row.n = cfg.n;
        row.m = m_rows;
        row.trial = trial;
        row.seed = child_seeds[job];
        try {
            RngStream rng = RngStream::from_seed(row.seed);
            auto [y, codebook] = gen_instance(cfg.p, m_rows, cfg.n, rng);
            const EncodeResult res =
                encode_bp(y, codebook, rate_params[rate_idx], rng, cfg.best_iterate);
            row.iters = cfg.params.max_iters;
            row.converged = res.trace.converged();
            row.distortion_bits = res.distortion_bits;
            row.distortion_per_bit =
                static_cast<double>(res.distortion_bits) / static_cast<double>(m_rows);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        details[job] = std::move(row);
    });

    ExperimentResult result;
    result.details = std::move(details);
    const double source_entropy = binary_entropy(cfg.p);
    for (std::size_t rate_idx = 0; rate_idx < cfg.rates.size(); ++rate_idx) {
        const double rate = cfg.rates[rate_idx];
        RateAggregate agg;
        agg.p = cfg.p;
        agg.rate = rate;
        agg.n = cfg.n;
        agg.m = rows_for_rate(cfg.n, rate);
        agg.k = cfg.params.k;
        agg.beta = rate_params[rate_idx].beta;
        agg.gamma = cfg.params.gamma;
        agg.rdf_d = rate >= source_entropy ? 0.0 : rdf_inverse(cfg.p, rate);

        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const TrialRow& row = result.details[rate_idx * cfg.trials + t];
            if (row.error.empty()) {
                sum += row.distortion_per_bit;
                ++count;
            }
        }
        agg.trials = count;
        agg.mean_d = count > 0 ? sum / static_cast<double>(count) : 0.0;
        if (count > 1) {
            double ss = 0.0;
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                const TrialRow& row = result.details[rate_idx * cfg.trials + t];
                if (row.error.empty()) {
                    const double d = row.distortion_per_bit - agg.mean_d;
                    ss += d * d;
                }
            }
            agg.stderr_d = std::sqrt(ss / static_cast<double>(count - 1)) /
                           std::sqrt(static_cast<double>(count));
        }
        result.aggregates.push_back(agg);
    }
    return result;
}

std::string ExperimentResult::detail_csv() const {
    std::string out = "# plc.detail.v1\n";
    out += kDetailHeader;
    out += '\n';
    for (const TrialRow& row : details) append_detail_row(out, row);
    append_error_comments(out, details);
    return out;
}

std::string ExperimentResult::aggregate_csv() const {
    std::string out = "# plc.aggregate.v1\n";
    out += kAggregateHeader;
    out += '\n';
    for (const RateAggregate& agg : aggregates) append_aggregate_row(out, agg);
    return out;
}

const char* sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Gamma: return "gamma";
        case SweepAxis::Beta: return "beta";
        case SweepAxis::K: return "k";
    }
    return "?";
}

SweepResult sweep(const ExperimentConfig& cfg, SweepAxis axis, std::span<const double> grid) {
    if (grid.empty()) {
        throw InvalidArgument("sweep grid must be non-empty");
    }
    SweepResult result;
    result.axis = axis;
    result.grid.assign(grid.begin(), grid.end());
    for (const double value : grid) {
        ExperimentConfig point = cfg;
        switch (axis) {
            case SweepAxis::Gamma: point.params.gamma = value; break;
            case SweepAxis::Beta:
                point.params.beta = value;
                point.auto_beta = false;  // the grid value wins
                break;
            case SweepAxis::K: point.params.k = value; break;
        }
        result.runs.push_back(run_experiment(point));
    }
    for (std::size_t rate_idx = 0; rate_idx < cfg.rates.size(); ++rate_idx) {
        std::size_t best_run = 0;
        for (std::size_t run = 1; run < result.runs.size(); ++run) {
            if (result.runs[run].aggregates[rate_idx].mean_d <
                result.runs[best_run].aggregates[rate_idx].mean_d) {
                best_run = run;
            }
        }
        const RateAggregate& agg = result.runs[best_run].aggregates[rate_idx];
        result.best_per_rate.push_back(SweepBest{
            .p = agg.p,
            .rate = agg.rate,
            .n = agg.n,
            .m = agg.m,
            .value = result.grid[best_run],
            .mean_d = agg.mean_d,
        });
    }
    return result;
}

std::string SweepResult::detail_csv() const {
    std::string out = "# plc.sweep.detail.v1\n";
    out += std::string(sweep_axis_name(axis)) + ',' + kDetailHeader + '\n';
    for (std::size_t run = 0; run < runs.size(); ++run) {
        const std::string key = fmt(grid[run]) + ',';
        for (const TrialRow& row : runs[run].details) {
            out += key;
            append_detail_row(out, row);
        }
    }
    for (std::size_t run = 0; run < runs.size(); ++run) {
        append_error_comments(out, runs[run].details);
    }
    return out;
}

std::string SweepResult::aggregate_csv() const {
    std::string out = "# plc.sweep.aggregate.v1\n";
    out += std::string(sweep_axis_name(axis)) + ',' + kAggregateHeader + '\n';
    for (std::size_t run = 0; run < runs.size(); ++run) {
        const std::string key = fmt(grid[run]) + ',';
        for (const RateAggregate& agg : runs[run].aggregates) {
            out += key;
            append_aggregate_row(out, agg);
        }
    }
    return out;
}

std::string SweepResult::best_csv() const {
    std::string out = "# plc.sweep.best.v1\n";
    out += std::string("p,R,N,M,") + sweep_axis_name(axis) + ",mean_D\n";
    for (const SweepBest& row : best_per_rate) {
        out += fmt(row.p) + ',' + fmt(row.rate) + ',' + fmt(row.n) + ',' + fmt(row.m) + ',' +
               fmt(row.value) + ',' + fmt(row.mean_d) + '\n';
    }
    return out;
}

}  // namespace plc
