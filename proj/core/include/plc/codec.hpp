#pragma once
// The deterministic side of the code: the two-threshold output function, the
// decoder map, Hamming distortion, and the bit-exact container format.

#include <cstdint>
#include <span>
#include <vector>

#include "plc/types.hpp"

namespace plc {

// Self-contained compressed representation: decoding needs nothing else.
struct CompressedBlob {
    std::uint64_t seed = 0;    // codebook seed
    std::uint64_t m_rows = 0;  // original data length M
    std::uint64_t n_cols = 0;  // codeword length N
    double k = 0.0;            // decoder threshold
    std::vector<std::uint8_t> payload;  // ceil(N/8) bytes, MSB-first, 1 <-> +1

    BinarySeq codeword() const;
    double rate() const { return static_cast<double>(n_cols) / static_cast<double>(m_rows); }

    friend bool operator==(const CompressedBlob&, const CompressedBlob&) = default;
};

// +1 iff |u| < k, else -1.  The boundary |u| = k falls in the -1 branch.
inline int output_fk(double u, double k) {
    return (u < k && u > -k) ? +1 : -1;
}

// Representative sequence: component mu is output_fk(<x^mu, s>/sqrt(N), k).
BinarySeq decode(const BinarySeq& s, const Codebook& codebook, double k);

// Same map without materializing the codebook; rows are regenerated from the
// seed in O(N) memory.  Bit-identical to decode() on the dense codebook.
BinarySeq decode_from_seed(const BinarySeq& s, std::uint64_t seed, std::size_t rows, double k);

// Number of disagreeing positions.
std::size_t hamming_distortion(const BinarySeq& y, const BinarySeq& y_hat);

CompressedBlob pack_blob(const BinarySeq& s, const Codebook& codebook, double k);

std::vector<std::uint8_t> serialize_blob(const CompressedBlob& blob);

// Inverse of serialize_blob; distinct errors for bad magic, unsupported
// version, truncation, nonzero padding, and nonsense header fields.
CompressedBlob unpack_blob(std::span<const std::uint8_t> bytes);

// Decode straight from a container (regenerates the codebook rows).
BinarySeq decode_blob(const CompressedBlob& blob);

}  // namespace plc
