#include "plc/rng.hpp"

#include <cmath>
#include <numbers>

namespace plc {

namespace {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream RngStream::from_seed(std::uint64_t seed) {
    RngStream rng;
    std::uint64_t sm = seed;
    for (auto& word : rng.state_) word = splitmix64_next(sm);
    if ((rng.state_[0] | rng.state_[1] | rng.state_[2] | rng.state_[3]) == 0) {
        return from_seed(seed + 1);
    }
    return rng;
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256** step
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;

    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];

    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);

    return result;
}

double RngStream::next_uniform() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u == 0.0 ? 0x1.0p-53 : u;
}

double RngStream::next_gaussian() {
    if (has_pending_gaussian_) {
        has_pending_gaussian_ = false;
        return pending_gaussian_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    pending_gaussian_ = radius * std::sin(angle);
    has_pending_gaussian_ = true;
    return radius * std::cos(angle);
}

}  // namespace plc
