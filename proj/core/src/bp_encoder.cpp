#include "plc/bp_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace plc {

namespace {

// Keeps magnetizations strictly inside (-1,1) when tanh saturates to 1.0 in
// double precision.
constexpr double kMagnetizationCap = 1.0 - 1e-12;

double overlap(const std::vector<double>& m) {
    double sum = 0.0;
    for (double v : m) sum += v * v;
    return sum / static_cast<double>(m.size());
}

std::size_t readout_distortion(const BpState& state, const BinarySeq& y, const Codebook& codebook,
                               double k) {
    return hamming_distortion(y, decode(readout(state), codebook, k));
}

}  // namespace

BpState init_state(std::size_t n, std::size_t m_rows, double amplitude, RngStream& rng) {
    if (n == 0 || m_rows == 0) {
        throw InvalidArgument("state dimensions must be positive");
    }
    if (!(amplitude >= 0.0 && amplitude < 1.0)) {
        throw InvalidArgument("init amplitude must lie in [0,1)");
    }
    BpState state;
    state.m.resize(n);
    for (double& v : state.m) v = amplitude * (2.0 * rng.next_uniform() - 1.0);
    state.a.assign(m_rows, 0.0);
    state.g = 0.0;
    state.q = overlap(state.m);
    state.iter = 0;
    return state;
}

BpState bp_step(const BpState& state, const BinarySeq& y, const Codebook& codebook,
                const CodecParams& params) {
    params.validate();
    validate_instance(y, codebook);
    const std::size_t m_rows = codebook.rows();
    const std::size_t n = codebook.cols();
    if (state.m.size() != n || state.a.size() != m_rows) {
        throw DimensionMismatch("encoder state sized (" + std::to_string(state.m.size()) + ", " +
                                std::to_string(state.a.size()) +
                                ") does not match the instance (" + std::to_string(n) + ", " +
                                std::to_string(m_rows) + ")");
    }
    if (params.gamma >= 1.0) {
        throw InvalidArgument("inertia gamma must be < 1 for the atanh inertia term");
    }
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    // (1) cavity field centers from the current magnetizations
    std::vector<double> delta(m_rows);
    for (std::size_t mu = 0; mu < m_rows; ++mu) {
        const std::span<const double> row = codebook.row(mu);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += row[i] * state.m[i];
        delta[mu] = dot * inv_sqrt_n;
    }

    // (2) overlap
    const double q = overlap(state.m);

    // (3) per-factor integrals at the pre-update a; new cavity ratios and the
    //     Onsager sum accumulate in fixed mu order
    std::vector<double> a_new(m_rows);
    double g_new = 0.0;
    for (std::size_t mu = 0; mu < m_rows; ++mu) {
        XiIntegrals xi;
        try {
            xi = xi_integrals(y[mu], delta[mu], state.a[mu], q, params.k, params.beta,
                              params.epsilon_q);
        } catch (const NumericOverflow& e) {
            throw NumericOverflow("iteration " + std::to_string(state.iter + 1) + ", factor " +
                                      std::to_string(mu) + ": " + e.what(),
                                  e.w_minus(), e.w_plus());
        }
        if (xi.i0 < 1e-300) {
            throw ChannelDegeneracy("channel normalizer underflowed at iteration " +
                                    std::to_string(state.iter + 1) + ", factor " +
                                    std::to_string(mu));
        }
        const double ratio = xi.i1 / xi.i0;
        a_new[mu] = ratio;
        g_new += xi.i2 / xi.i0 - ratio * ratio;
    }

    // (4) simultaneous magnetization update from a_new, g_new, and the
    //     previous m
    std::vector<double> field(n, 0.0);
    for (std::size_t mu = 0; mu < m_rows; ++mu) {
        const std::span<const double> row = codebook.row(mu);
        const double a_mu = a_new[mu];
        for (std::size_t i = 0; i < n; ++i) field[i] += a_mu * row[i];
    }

    BpState next;
    next.m.resize(n);
    const double g_over_n = g_new / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double arg =
            field[i] * inv_sqrt_n - g_over_n * state.m[i] + std::atanh(params.gamma * state.m[i]);
        next.m[i] = std::clamp(std::tanh(arg), -kMagnetizationCap, kMagnetizationCap);
    }
    next.a = std::move(a_new);
    next.g = g_new;
    next.q = overlap(next.m);
    next.iter = state.iter + 1;
    return next;
}

BinarySeq readout(const BpState& state) {
    std::vector<std::int8_t> s(state.m.size());
    for (std::size_t i = 0; i < state.m.size(); ++i) {
        s[i] = state.m[i] < 0.0 ? -1 : 1;
    }
    return BinarySeq(std::move(s));
}

EncodeResult encode_bp(const BinarySeq& y, const Codebook& codebook, const CodecParams& params,
                       RngStream& rng, bool best_iterate) {
    params.validate();
    validate_instance(y, codebook);

    BpState state = init_state(codebook.cols(), codebook.rows(), params.init_amplitude, rng);

    BpTrace trace;
    trace.iterations.reserve(params.max_iters);
    trace.used_best_iterate = best_iterate;

    BinarySeq best_s = readout(state);
    std::size_t best_distortion = hamming_distortion(y, decode(best_s, codebook, params.k));
    std::size_t best_iteration = 0;

    for (std::size_t t = 0; t < params.max_iters; ++t) {
        const std::vector<double> prev_m = state.m;
        state = bp_step(state, y, codebook, params);

        double max_delta = 0.0;
        double abs_sum = 0.0;
        for (std::size_t i = 0; i < state.m.size(); ++i) {
            max_delta = std::max(max_delta, std::abs(state.m[i] - prev_m[i]));
            abs_sum += std::abs(state.m[i]);
        }
        const std::size_t distortion = readout_distortion(state, y, codebook, params.k);
        trace.iterations.push_back(BpIterStat{
            .q = state.q,
            .mean_abs_m = abs_sum / static_cast<double>(state.m.size()),
            .distortion_bits = distortion,
            .max_delta_m = max_delta,
        });
        if (distortion < best_distortion) {
            best_distortion = distortion;
            best_s = readout(state);
            best_iteration = state.iter;
        }
    }

    EncodeResult result{.s = readout(state), .distortion_bits = 0, .trace = std::move(trace)};
    if (best_iterate) {
        result.s = best_s;
        result.distortion_bits = best_distortion;
        result.trace.chosen_iteration = best_iteration;
    } else {
        result.distortion_bits = hamming_distortion(y, decode(result.s, codebook, params.k));
        result.trace.chosen_iteration = state.iter;
    }
    return result;
}

}  // namespace plc
