#include "plc/types.hpp"

#include <cmath>
#include <string>

#include "plc/rng.hpp"

namespace plc {

BinarySeq::BinarySeq(std::vector<std::int8_t> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
        throw InvalidArgument("binary sequence must be non-empty");
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] != 1 && symbols_[i] != -1) {
            throw InvalidArgument("symbol at position " + std::to_string(i) + " is " +
                                  std::to_string(static_cast<int>(symbols_[i])) +
                                  "; every symbol must be +1 or -1");
        }
    }
}

BinarySeq BinarySeq::from_packed_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (nbits == 0) {
        throw InvalidArgument("binary sequence must be non-empty");
    }
    if (bytes.size() * 8 < nbits) {
        throw InvalidArgument("need " + std::to_string(nbits) + " bits but only " +
                              std::to_string(bytes.size() * 8) + " are available");
    }
    std::vector<std::int8_t> symbols(nbits);
    for (std::size_t i = 0; i < nbits; ++i) {
        const bool bit = (bytes[i / 8] >> (7 - i % 8)) & 1u;
        symbols[i] = bit ? 1 : -1;
    }
    return BinarySeq(std::move(symbols));
}

std::vector<std::uint8_t> BinarySeq::to_packed_bits() const {
    std::vector<std::uint8_t> bytes((symbols_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] > 0) {
            bytes[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
        }
    }
    return bytes;
}

BinarySeq BinarySeq::negated() const {
    std::vector<std::int8_t> flipped(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        flipped[i] = static_cast<std::int8_t>(-symbols_[i]);
    }
    return BinarySeq(std::move(flipped));
}

void SourceModel::validate() const {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidArgument("source bias p must lie strictly in (0,1), got " +
                              std::to_string(p));
    }
}

Codebook Codebook::from_seed(std::uint64_t seed, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw InvalidArgument("codebook dimensions must be positive");
    }
    RngStream rng = RngStream::from_seed(seed);
    std::vector<double> entries(rows * cols);
    for (double& e : entries) e = rng.next_gaussian();
    return Codebook(seed, rows, cols, std::move(entries));
}

void CodecParams::validate() const {
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw InvalidArgument("threshold k must be finite and >= 0");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidArgument("inverse temperature beta must be finite and > 0");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw InvalidArgument("inertia gamma must lie in [0,1]");
    }
    if (!(init_amplitude >= 0.0 && init_amplitude < 1.0)) {
        throw InvalidArgument("init amplitude must lie in [0,1)");
    }
    if (!(epsilon_q > 0.0 && epsilon_q < 1.0)) {
        throw InvalidArgument("epsilon_q must lie in (0,1)");
    }
}

void RdPoint::validate() const {
    if (!(rate > 0.0)) {
        throw InvalidArgument("rate must be positive");
    }
    if (!(distortion >= 0.0 && distortion <= 1.0)) {
        throw InvalidArgument("distortion must lie in [0,1]");
    }
}

void validate_instance(const BinarySeq& y, const Codebook& codebook) {
    if (y.size() != codebook.rows()) {
        throw DimensionMismatch("original data length " + std::to_string(y.size()) +
                                " does not match codebook row count " +
                                std::to_string(codebook.rows()));
    }
}

}  // namespace plc
