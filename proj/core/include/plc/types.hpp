#pragma once
// Domain types shared by the whole toolkit.  All of them validate their
// invariants on construction and are immutable afterwards, so instances can be
// shared freely across threads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "plc/errors.hpp"

namespace plc {

// A +/-1-valued sequence: original data, a representative, or a codeword.
class BinarySeq {
public:
    explicit BinarySeq(std::vector<std::int8_t> symbols);

    // Unpacks `nbits` bits MSB-first from `bytes`; bit 1 maps to +1.
    static BinarySeq from_packed_bits(std::span<const std::uint8_t> bytes, std::size_t nbits);

    // Packs MSB-first, +1 -> bit 1, zero padding in the final byte.
    std::vector<std::uint8_t> to_packed_bits() const;

    std::size_t size() const { return symbols_.size(); }
    int operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<std::int8_t>& symbols() const { return symbols_; }

    BinarySeq negated() const;

    friend bool operator==(const BinarySeq& a, const BinarySeq& b) = default;

private:
    std::vector<std::int8_t> symbols_;
};

// Bernoulli source over {+1,-1}: P(+1) = p.
struct SourceModel {
    double p = 0.5;

    void validate() const;
};

// The M x N matrix of Gaussian direction vectors, regenerable from its seed.
// Persisted artifacts carry only (seed, M, N); the dense matrix lives in
// memory because both ends can rebuild it bit-identically.
class Codebook {
public:
    static Codebook from_seed(std::uint64_t seed, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t seed() const { return seed_; }

    std::span<const double> row(std::size_t mu) const {
        return {entries_.data() + mu * cols_, cols_};
    }
    const std::vector<double>& entries() const { return entries_; }

private:
    Codebook(std::uint64_t seed, std::size_t rows, std::size_t cols, std::vector<double> entries)
        : seed_(seed), rows_(rows), cols_(cols), entries_(std::move(entries)) {}

    std::uint64_t seed_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
};

// Encoder knobs.  k and beta default to heuristic stand-ins for the channel's
// optimal values (see reference::default_threshold); gamma is the inertia
// constant, max_iters the fixed sweep budget, init_amplitude the symmetry
// breaking scale, epsilon_q the clamp on 1-q.
struct CodecParams {
    double k = 0.6744897501960817;
    double beta = 5.0;
    double gamma = 0.4;
    std::size_t max_iters = 35;
    double init_amplitude = 0.1;
    double epsilon_q = 1e-12;

    void validate() const;
};

// A point on (or against) the rate-distortion plane.
struct RdPoint {
    double rate = 0.0;
    double distortion = 0.0;

    void validate() const;
};

// Succeeds iff the data length matches the codebook row count.
void validate_instance(const BinarySeq& y, const Codebook& codebook);

}  // namespace plc
