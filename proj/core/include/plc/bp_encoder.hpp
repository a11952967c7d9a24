#pragma once
// The practical encoder: message-passing sweeps over the dense factor graph,
// reduced to O(M+N) state per sweep via Gaussian cavity integrals, with an
// Onsager reaction correction, an inertia term that breaks the mirror
// symmetry, and a sign readout after a fixed iteration budget.

#include <cstddef>
#include <vector>

#include "plc/codec.hpp"
#include "plc/mathutil.hpp"
#include "plc/rng.hpp"
#include "plc/types.hpp"

namespace plc {

// Per-iteration encoder state.
struct BpState {
    std::vector<double> m;  // posterior magnetizations, each strictly in (-1,1)
    std::vector<double> a;  // per-factor cavity ratios
    double g = 0.0;         // Onsager coefficient
    double q = 0.0;         // overlap sum(m^2)/N, in [0,1)
    std::size_t iter = 0;
};

struct BpIterStat {
    double q = 0.0;
    double mean_abs_m = 0.0;
    std::size_t distortion_bits = 0;  // of the sign readout at this iteration
    double max_delta_m = 0.0;         // max_l |m_l - m_l^{prev}|
};

struct BpTrace {
    std::vector<BpIterStat> iterations;  // one record per completed sweep
    std::size_t chosen_iteration = 0;    // which iterate produced the codeword
    bool used_best_iterate = false;

    // Convergence monitor only; the sweep budget always runs to completion.
    bool converged(double tol = 1e-8) const {
        return !iterations.empty() && iterations.back().max_delta_m < tol;
    }
};

struct EncodeResult {
    BinarySeq s;
    std::size_t distortion_bits = 0;
    BpTrace trace;
};

// m_l i.i.d. uniform on [-amplitude, +amplitude]; everything else zeroed.
// amplitude = 0 leaves the mirror-symmetric fixed point m = 0 intact.
BpState init_state(std::size_t n, std::size_t m_rows, double amplitude, RngStream& rng);

// One full sweep, in fixed order: cavity fields Delta from the current m,
// overlap q, per-factor integrals at the current a giving the new a and the
// Onsager sum G, then a simultaneous magnetization update
//   m_l <- tanh( sum_mu x_l^mu a_mu^{new}/sqrt(N) - G^{new} m_l/N
//                + atanh(gamma m_l) ).
// Inputs are untouched; the returned state satisfies q = sum(m^2)/N exactly.
BpState bp_step(const BpState& state, const BinarySeq& y, const Codebook& codebook,
                const CodecParams& params);

// s_l = sign(m_l), with m_l = 0 resolving to +1.
BinarySeq readout(const BpState& state);

// Runs init_state, exactly params.max_iters sweeps, and the sign readout.
// The trace records every iteration; with best_iterate the codeword comes from
// the minimum-distortion iterate instead of the final one.
EncodeResult encode_bp(const BinarySeq& y, const Codebook& codebook, const CodecParams& params,
                       RngStream& rng, bool best_iterate = false);

}  // namespace plc
