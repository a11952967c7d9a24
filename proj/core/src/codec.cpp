#include "plc/codec.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "plc/rng.hpp"

namespace plc {

namespace {

constexpr std::uint8_t kMagic[4] = {'P', 'L', 'C', '1'};
constexpr std::uint8_t kFormatVersion = 1;
constexpr std::size_t kHeaderBytes = 37;

void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[offset + i]) << (8 * i);
    return v;
}

void check_dims(const BinarySeq& s, std::size_t n_cols) {
    if (s.size() != n_cols) {
        throw DimensionMismatch("codeword length " + std::to_string(s.size()) +
                                " does not match codebook column count " +
                                std::to_string(n_cols));
    }
}

void check_threshold(double k) {
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw InvalidArgument("threshold k must be finite and >= 0");
    }
}

}  // namespace

BinarySeq CompressedBlob::codeword() const {
    return BinarySeq::from_packed_bits(payload, n_cols);
}

BinarySeq decode(const BinarySeq& s, const Codebook& codebook, double k) {
    check_dims(s, codebook.cols());
    check_threshold(k);
    const std::size_t m_rows = codebook.rows();
    const std::size_t n = codebook.cols();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<std::int8_t> out(m_rows);
    for (std::size_t mu = 0; mu < m_rows; ++mu) {
        const std::span<const double> row = codebook.row(mu);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += row[i] * s[i];
        out[mu] = static_cast<std::int8_t>(output_fk(dot * inv_sqrt_n, k));
    }
    return BinarySeq(std::move(out));
}

BinarySeq decode_from_seed(const BinarySeq& s, std::uint64_t seed, std::size_t rows, double k) {
    if (rows == 0) {
        throw InvalidArgument("row count must be positive");
    }
    check_threshold(k);
    const std::size_t n = s.size();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    // Same draw sequence as Codebook::from_seed, consumed row by row.
    RngStream rng = RngStream::from_seed(seed);
    std::vector<std::int8_t> out(rows);
    for (std::size_t mu = 0; mu < rows; ++mu) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += rng.next_gaussian() * s[i];
        out[mu] = static_cast<std::int8_t>(output_fk(dot * inv_sqrt_n, k));
    }
    return BinarySeq(std::move(out));
}

std::size_t hamming_distortion(const BinarySeq& y, const BinarySeq& y_hat) {
    if (y.size() != y_hat.size()) {
        throw DimensionMismatch("sequence lengths " + std::to_string(y.size()) + " and " +
                                std::to_string(y_hat.size()) + " differ");
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != y_hat[i]) ++count;
    }
    return count;
}

CompressedBlob pack_blob(const BinarySeq& s, const Codebook& codebook, double k) {
    check_dims(s, codebook.cols());
    check_threshold(k);
    return CompressedBlob{
        .seed = codebook.seed(),
        .m_rows = codebook.rows(),
        .n_cols = codebook.cols(),
        .k = k,
        .payload = s.to_packed_bits(),
    };
}

std::vector<std::uint8_t> serialize_blob(const CompressedBlob& blob) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + blob.payload.size());
    for (const std::uint8_t byte : kMagic) out.push_back(byte);
    out.push_back(kFormatVersion);
    put_u64_le(out, blob.seed);
    put_u64_le(out, blob.m_rows);
    put_u64_le(out, blob.n_cols);
    std::uint64_t k_bits;
    static_assert(sizeof(k_bits) == sizeof(blob.k));
    std::memcpy(&k_bits, &blob.k, sizeof(k_bits));
    put_u64_le(out, k_bits);
    out.insert(out.end(), blob.payload.begin(), blob.payload.end());
    return out;
}

CompressedBlob unpack_blob(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderBytes) {
        throw BlobFormatError(BlobFormatError::Kind::Truncated,
                              "container truncated: header needs " +
                                  std::to_string(kHeaderBytes) + " bytes, got " +
                                  std::to_string(bytes.size()));
    }
    if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
        throw BlobFormatError(BlobFormatError::Kind::BadMagic,
                              "bad magic in container header (offset 0)");
    }
    if (bytes[4] != kFormatVersion) {
        throw BlobFormatError(BlobFormatError::Kind::BadVersion,
                              "unsupported container version " + std::to_string(bytes[4]) +
                                  " (offset 4); this build reads version 1");
    }

    CompressedBlob blob;
    blob.seed = get_u64_le(bytes, 5);
    blob.m_rows = get_u64_le(bytes, 13);
    blob.n_cols = get_u64_le(bytes, 21);
    const std::uint64_t k_bits = get_u64_le(bytes, 29);
    std::memcpy(&blob.k, &k_bits, sizeof(blob.k));

    if (blob.m_rows == 0 || blob.n_cols == 0) {
        throw BlobFormatError(BlobFormatError::Kind::BadHeader,
                              "container header has zero dimensions (M = " +
                                  std::to_string(blob.m_rows) + ", N = " +
                                  std::to_string(blob.n_cols) + ")");
    }
    if (!(blob.k >= 0.0) || !std::isfinite(blob.k)) {
        throw BlobFormatError(BlobFormatError::Kind::BadHeader,
                              "container header threshold is not a finite value >= 0");
    }

    const std::size_t payload_bytes = (blob.n_cols + 7) / 8;
    const std::size_t actual = bytes.size() - kHeaderBytes;
    if (actual != payload_bytes) {
        throw BlobFormatError(BlobFormatError::Kind::Truncated,
                              "payload expects " + std::to_string(blob.n_cols) + " bits (" +
                                  std::to_string(payload_bytes) + " bytes at offset " +
                                  std::to_string(kHeaderBytes) + "), got " +
                                  std::to_string(actual) + " bytes");
    }
    blob.payload.assign(bytes.begin() + kHeaderBytes, bytes.end());

    const std::size_t pad_bits = payload_bytes * 8 - blob.n_cols;
    if (pad_bits > 0) {
        const std::uint8_t mask = static_cast<std::uint8_t>((1u << pad_bits) - 1u);
        if ((blob.payload.back() & mask) != 0) {
            throw BlobFormatError(BlobFormatError::Kind::BadPadding,
                                  "nonzero padding bits in final payload byte");
        }
    }
    return blob;
}

BinarySeq decode_blob(const CompressedBlob& blob) {
    return decode_from_seed(blob.codeword(), blob.seed, blob.m_rows, blob.k);
}

}  // namespace plc
