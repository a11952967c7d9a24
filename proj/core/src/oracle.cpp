#include "plc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "plc/harness.hpp"
#include "plc/reference.hpp"

namespace plc {

namespace {

// Candidate masks order positions MSB-first: bit (N-1-i) of the mask holds
// position i, set bit meaning -1.  Integer order on masks is then exactly the
// lexicographic order with +1 < -1 per position.
BinarySeq mask_to_codeword(std::uint32_t mask, std::size_t n) {
    std::vector<std::int8_t> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool flip = (mask >> (n - 1 - i)) & 1u;
        s[i] = flip ? -1 : 1;
    }
    return BinarySeq(std::move(s));
}

std::size_t distortion_from_sums(const std::vector<double>& sums, const BinarySeq& y,
                                 double inv_sqrt_n, double k) {
    std::size_t distortion = 0;
    for (std::size_t mu = 0; mu < sums.size(); ++mu) {
        if (output_fk(sums[mu] * inv_sqrt_n, k) != y[mu]) ++distortion;
    }
    return distortion;
}

}  // namespace

OracleResult encode_exhaustive(const BinarySeq& y, const Codebook& codebook, double k) {
    validate_instance(y, codebook);
    const std::size_t n = codebook.cols();
    const std::size_t m_rows = codebook.rows();
    if (n > kExhaustiveMaxN) {
        throw InvalidArgument("exhaustive search is capped at N = " +
                              std::to_string(kExhaustiveMaxN) + ", got N = " + std::to_string(n));
    }
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw InvalidArgument("threshold k must be finite and >= 0");
    }
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    // Start from the all +1 word (mask 0) and walk the reflected Gray code;
    // each step flips one position and updates the M running sums in O(M).
    std::vector<double> sums(m_rows, 0.0);
    for (std::size_t mu = 0; mu < m_rows; ++mu) {
        const std::span<const double> row = codebook.row(mu);
        sums[mu] = std::accumulate(row.begin(), row.end(), 0.0);
    }

    std::uint32_t best_mask = 0;
    std::size_t best_distortion = distortion_from_sums(sums, y, inv_sqrt_n, k);

    const std::uint64_t total = 1ull << n;
    std::uint32_t gray = 0;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        const int flip_bit = std::countr_zero(idx);
        gray ^= (1u << flip_bit);
        const std::size_t pos = n - 1 - static_cast<std::size_t>(flip_bit);
        const bool now_minus = (gray >> flip_bit) & 1u;
        const double step = now_minus ? -2.0 : 2.0;
        for (std::size_t mu = 0; mu < m_rows; ++mu) {
            sums[mu] += step * codebook.row(mu)[pos];
        }
        const std::size_t distortion = distortion_from_sums(sums, y, inv_sqrt_n, k);
        if (distortion < best_distortion ||
            (distortion == best_distortion && gray < best_mask)) {
            best_distortion = distortion;
            best_mask = gray;
        }
    }
    return OracleResult{.s = mask_to_codeword(best_mask, n), .distortion_bits = best_distortion};
}

OracleResult encode_greedy(const BinarySeq& y, const Codebook& codebook, double k,
                           std::size_t max_passes, RngStream& rng) {
    validate_instance(y, codebook);
    if (max_passes == 0) {
        throw InvalidArgument("max_passes must be >= 1");
    }
    const std::size_t n = codebook.cols();
    const std::size_t m_rows = codebook.rows();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    std::vector<std::int8_t> s(n);
    for (auto& v : s) v = rng.next_uniform() <= 0.5 ? 1 : -1;

    std::vector<double> sums(m_rows, 0.0);
    for (std::size_t mu = 0; mu < m_rows; ++mu) {
        const std::span<const double> row = codebook.row(mu);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += row[i] * s[i];
        sums[mu] = dot;
    }
    std::size_t current = distortion_from_sums(sums, y, inv_sqrt_n, k);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        // Fisher-Yates with the trial stream, fresh order per pass.
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
            std::swap(order[i - 1], order[j]);
        }
        bool improved = false;
        for (const std::size_t pos : order) {
            const double step = -2.0 * s[pos];
            for (std::size_t mu = 0; mu < m_rows; ++mu) {
                sums[mu] += step * codebook.row(mu)[pos];
            }
            const std::size_t candidate = distortion_from_sums(sums, y, inv_sqrt_n, k);
            if (candidate < current) {
                current = candidate;
                s[pos] = static_cast<std::int8_t>(-s[pos]);
                improved = true;
            } else {
                for (std::size_t mu = 0; mu < m_rows; ++mu) {
                    sums[mu] -= step * codebook.row(mu)[pos];
                }
            }
        }
        if (!improved) break;
    }
    return OracleResult{.s = BinarySeq(std::move(s)), .distortion_bits = current};
}

ExponentEstimate estimate_tail_probability(const SourceModel& source, std::size_t m_rows,
                                           double rate, double distortion, double k,
                                           std::size_t trials, RngStream& rng) {
    source.validate();
    if (m_rows == 0) {
        throw InvalidArgument("data length M must be positive");
    }
    if (!(rate > 0.0)) {
        throw InvalidArgument("rate must be positive");
    }
    if (!(distortion > 0.0 && distortion <= 1.0)) {
        throw InvalidArgument("distortion level must lie in (0,1], got " +
                              std::to_string(distortion));
    }
    if (trials == 0) {
        throw InvalidArgument("trials must be >= 1");
    }
    const std::size_t n =
        static_cast<std::size_t>(std::llround(rate * static_cast<double>(m_rows)));
    if (n == 0 || n > kExhaustiveMaxN) {
        throw InvalidArgument("round(rate*M) = " + std::to_string(n) +
                              " is outside the exhaustive range [1, " +
                              std::to_string(kExhaustiveMaxN) + "]");
    }

    const double critical_rate = rdf(source.p, distortion);
    const TailRegime regime = rate > critical_rate ? TailRegime::Failure : TailRegime::Success;

    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto [y, codebook] = gen_instance(source.p, m_rows, n, rng);
        const OracleResult best = encode_exhaustive(y, codebook, k);
        const double lambda =
            static_cast<double>(best.distortion_bits) / static_cast<double>(m_rows);
        const bool fidelity_broken = lambda >= distortion;  // boundary counts as failure
        if (regime == TailRegime::Failure ? fidelity_broken : !fidelity_broken) ++hits;
    }

    ExponentEstimate est;
    est.m_rows = m_rows;
    est.n_cols = n;
    est.rate = rate;
    est.distortion = distortion;
    est.k = k;
    est.trials = trials;
    est.regime = regime;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    if (est.p_hat > 0.0) {
        est.rate_estimate = -std::log(est.p_hat) / static_cast<double>(m_rows);
    }
    return est;
}

}  // namespace plc
