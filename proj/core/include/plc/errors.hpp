#pragma once

#include <stdexcept>
#include <string>

namespace plc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected argument or violated type invariant.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Two sequences or a sequence and a codebook disagree on length.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Malformed compressed container.
class BlobFormatError : public Error {
public:
    enum class Kind { BadMagic, BadVersion, Truncated, BadPadding, BadHeader };

    BlobFormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Non-finite intermediate in a channel-integral evaluation.
class NumericOverflow : public Error {
public:
    NumericOverflow(const std::string& what, double w_minus, double w_plus)
        : Error(what), w_minus_(w_minus), w_plus_(w_plus) {}
    double w_minus() const { return w_minus_; }
    double w_plus() const { return w_plus_; }

private:
    double w_minus_;
    double w_plus_;
};

// Channel normalizer underflowed to the point where cavity ratios are meaningless.
class ChannelDegeneracy : public Error {
public:
    using Error::Error;
};

}  // namespace plc
