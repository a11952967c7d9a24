#pragma once
// Seeded randomness contract shared by every stochastic component.
//
// The exact recurrences matter: compressed containers store only the codebook
// seed, so any implementation that regenerates a codebook must reproduce this
// stream bit for bit.  The generator is xoshiro256** seeded through SplitMix64
// (reference: https://prng.di.unimi.it/), uniforms are the top 53 bits mapped
// into (0,1], and normals come from Box-Muller pairs consumed in cos/sin order.

#include <cstdint>

namespace plc {

class RngStream {
public:
    // Expands `seed` through four SplitMix64 outputs into the xoshiro256**
    // state.  An all-zero state (unreachable in practice) reseeds with seed+1.
    static RngStream from_seed(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on (0,1]: (x >> 11) * 2^-53 with 0 replaced by 2^-53.
    double next_uniform();

    // Standard normal.  Pairs (u1,u2) produce sqrt(-2 ln u1)*cos(2*pi*u2) and
    // the companion sine value, returned on the following call.
    double next_gaussian();

private:
    RngStream() = default;

    std::uint64_t state_[4] = {0, 0, 0, 0};
    double pending_gaussian_ = 0.0;
    bool has_pending_gaussian_ = false;
};

}  // namespace plc
