#include "plc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plc/mathutil.hpp"

namespace plc {

double rdf(double p, double distortion) {
    SourceModel{.p = p}.validate();
    if (!(distortion >= 0.0 && distortion <= 1.0)) {
        throw InvalidArgument("distortion must lie in [0,1], got " + std::to_string(distortion));
    }
    const double d_max = std::min(p, 1.0 - p);
    if (distortion >= d_max) return 0.0;
    return binary_entropy(p) - binary_entropy(distortion);
}

double rdf_inverse(double p, double rate) {
    SourceModel{.p = p}.validate();
    const double h = binary_entropy(p);
    if (!(rate >= 0.0)) {
        throw InvalidArgument("rate must be >= 0");
    }
    if (rate > h) {
        throw InvalidArgument("rate " + std::to_string(rate) + " exceeds the source entropy " +
                              std::to_string(h) + "; no distortion is needed there");
    }
    return inv_binary_entropy(h - rate);
}

double default_threshold(double p) {
    SourceModel{.p = p}.validate();
    if (p > 1.0 - 1e-6) {
        throw InvalidArgument("default_threshold diverges as p -> 1; p must be <= 1 - 1e-6");
    }
    // Solve gaussian_tail(k) = (1-p)/2; the tail is strictly decreasing.
    const double target = 0.5 * (1.0 - p);
    double lo = 0.0;
    double hi = 8.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gaussian_tail(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double default_beta(double p, double rate) {
    SourceModel{.p = p}.validate();
    if (!(rate > 0.0)) {
        throw InvalidArgument("rate must be positive");
    }
    const double entropy = binary_entropy(p);
    const double d = rate >= entropy ? 0.0 : rdf_inverse(p, rate);
    const double clamped = std::clamp(d, 1e-3, 0.499);
    return std::log((1.0 - clamped) / clamped);
}

RdCurve rd_curve(double p, std::size_t num_points) {
    if (num_points < 2) {
        throw InvalidArgument("curve needs at least 2 points");
    }
    RdCurve curve;
    curve.p = p;
    curve.points.reserve(num_points);
    for (std::size_t i = 0; i < num_points; ++i) {
        const double d = 0.5 * static_cast<double>(i) / static_cast<double>(num_points - 1);
        curve.points.push_back(RdPoint{.rate = rdf(p, d), .distortion = d});
    }
    return curve;
}

}  // namespace plc
