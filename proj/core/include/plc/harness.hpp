#pragma once
// Experiment runner: seeded instance generation, distortion-vs-rate sweeps
// with CSV emission, and single-axis parameter sweeps.  Output is fully
// deterministic for a fixed master seed, independent of the worker count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plc/bp_encoder.hpp"
#include "plc/rng.hpp"
#include "plc/types.hpp"

namespace plc {

struct ExperimentConfig {
    double p = 0.5;
    std::vector<double> rates;       // each in (0,1]; M = round(n / rate)
    std::size_t n = 1000;            // codeword length
    std::size_t trials = 100;
    CodecParams params{};
    // Override params.beta per rate with reference::default_beta(p, rate).
    bool auto_beta = false;
    bool best_iterate = false;
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;

    void validate() const;
};

struct TrialRow {
    double p = 0.0;
    double rate = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;  // child seed for this trial's stream
    std::size_t iters = 0;
    bool converged = false;
    std::size_t distortion_bits = 0;
    double distortion_per_bit = 0.0;
    std::string error;  // empty on success
};

struct RateAggregate {
    double p = 0.0;
    double rate = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t trials = 0;  // rows included in the mean
    double mean_d = 0.0;
    double stderr_d = 0.0;
    double rdf_d = 0.0;  // rate-distortion reference at this rate
    double k = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

struct ExperimentResult {
    std::vector<TrialRow> details;
    std::vector<RateAggregate> aggregates;

    std::string detail_csv() const;
    std::string aggregate_csv() const;
};

enum class SweepAxis { Gamma, Beta, K };

const char* sweep_axis_name(SweepAxis axis);

struct SweepBest {
    double p = 0.0;
    double rate = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    double value = 0.0;  // grid value with the smallest mean distortion
    double mean_d = 0.0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::Gamma;
    std::vector<double> grid;
    std::vector<ExperimentResult> runs;  // one per grid value
    std::vector<SweepBest> best_per_rate;

    std::string detail_csv() const;
    std::string aggregate_csv() const;
    std::string best_csv() const;
};

// Draws y (one uniform per symbol, consumed first), then one u64 child seed
// from which the codebook is regenerated.
std::pair<BinarySeq, Codebook> gen_instance(double p, std::size_t m_rows, std::size_t n_cols,
                                            RngStream& rng);

// One encode_bp per (rate, trial) on independent child-seeded streams, plus a
// per-rate aggregate carrying the rate-distortion reference value.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// run_experiment once per grid value with `axis` overridden.
SweepResult sweep(const ExperimentConfig& cfg, SweepAxis axis, std::span<const double> grid);

}  // namespace plc
