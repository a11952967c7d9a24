#pragma once
// Rate-distortion reference for the Bernoulli(p) source under Hamming
// distortion, plus the heuristic threshold default derived from it.
//
// The curve is the textbook closed form R(D) = H2(p) - H2(D) on
// 0 <= D < min(p, 1-p) and 0 beyond, in bits per source symbol.

#include <cstddef>
#include <vector>

#include "plc/types.hpp"

namespace plc {

struct RdCurve {
    double p = 0.5;
    std::vector<RdPoint> points;
};

// R(D) for source bias p.
double rdf(double p, double distortion);

// The unique D with rdf(p, D) = R, for 0 <= R <= H2(p).
double rdf_inverse(double p, double rate);

// k solving 1 - 2 H(k) = p, so a random codeword's representative has +1-bias
// p.  A stand-in for the channel-optimal threshold; rejected for p > 1 - 1e-6
// where k diverges.
double default_threshold(double p);

// Inverse temperature matched to the slope of the rate-distortion curve at
// the target rate: beta = ln((1-D)/D) with D = rdf_inverse(p, rate).  D is
// clamped to [1e-3, 0.499] so the result stays finite at either end.  Like
// default_threshold this is a heuristic stand-in for the channel-optimal
// value, but it tracks the rate, which matters at low R.
double default_beta(double p, double rate);

// Uniform D-grid over [0, 1/2], 512 points by default.
RdCurve rd_curve(double p, std::size_t num_points = 512);

}  // namespace plc
