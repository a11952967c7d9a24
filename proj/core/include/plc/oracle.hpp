#pragma once
// Ground-truth and baseline encoders at desk scale, plus Monte Carlo
// estimation of the finite-length fidelity tail probabilities.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "plc/codec.hpp"
#include "plc/rng.hpp"
#include "plc/types.hpp"

namespace plc {

inline constexpr std::size_t kExhaustiveMaxN = 24;

struct OracleResult {
    BinarySeq s;
    std::size_t distortion_bits = 0;
};

// Which side of the rate-distortion curve a tail estimate measures.
enum class TailRegime { Failure, Success };

// Empirical tail probability of the fidelity criterion at finite length.
// Failure counts trials with lambda >= D (boundary included); success counts
// lambda < D.  The two fractions are complementary.
struct ExponentEstimate {
    std::size_t m_rows = 0;
    std::size_t n_cols = 0;
    double rate = 0.0;
    double distortion = 0.0;
    double k = 0.0;
    std::size_t trials = 0;
    TailRegime regime = TailRegime::Failure;
    double p_hat = 0.0;
    std::optional<double> rate_estimate;  // -ln(p_hat)/M, defined for p_hat > 0
};

// Exact minimum-distortion codeword by Gray-coded enumeration of all 2^N
// candidates (N <= 24 enforced).  Ties resolve to the lexicographically
// smallest s under the (+1 < -1) per-position order.
OracleResult encode_exhaustive(const BinarySeq& y, const Codebook& codebook, double k);

// Random-start single-bit-flip descent; stops at a 1-flip-stable word or after
// max_passes full passes.  Positions are scanned in a fresh random order each
// pass.
OracleResult encode_greedy(const BinarySeq& y, const Codebook& codebook, double k,
                           std::size_t max_passes, RngStream& rng);

// Samples `trials` independent (y, codebook) pairs with N = round(rate * M),
// runs the exhaustive encoder on each, and reports the empirical tail
// fraction for the regime picked by comparing `rate` against the
// rate-distortion reference at `distortion`.
ExponentEstimate estimate_tail_probability(const SourceModel& source, std::size_t m_rows,
                                           double rate, double distortion, double k,
                                           std::size_t trials, RngStream& rng);

}  // namespace plc
