#include "plc/mathutil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace plc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

// Unguarded tail; accepts +/-inf, used internally where those are legitimate
// limits.
inline double tail(double x) {
    return 0.5 * std::erfc(x * kInvSqrt2);
}

}  // namespace

double gaussian_tail(double x) {
    if (!std::isfinite(x)) {
        throw InvalidArgument("gaussian_tail requires finite input");
    }
    return tail(x);
}

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw InvalidArgument("binary_entropy argument must lie in [0,1], got " +
                              std::to_string(q));
    }
    if (q == 0.0 || q == 1.0) return 0.0;
    return -(q * std::log2(q) + (1.0 - q) * std::log2(1.0 - q));
}

double inv_binary_entropy(double h) {
    if (!(h >= 0.0 && h <= 1.0)) {
        throw InvalidArgument("inv_binary_entropy argument must lie in [0,1], got " +
                              std::to_string(h));
    }
    if (h == 0.0) return 0.0;
    if (h == 1.0) return 0.5;
    double lo = 0.0;
    double hi = 0.5;
    // H2 is strictly increasing on [0, 1/2]; bisect well past the 1e-12
    // requirement (60 halvings of 0.5 end below 1 ulp).
    for (int it = 0; it < 60 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < h) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

CavityGeometry cavity_geometry(double delta, double a, double q, double k, double epsilon_q) {
    const double one_minus_q = std::max(1.0 - q, epsilon_q);
    const double sigma = std::sqrt(one_minus_q);
    const double center = delta - one_minus_q * a;
    return CavityGeometry{
        .w_minus = (-k - center) / sigma,
        .w_plus = (k - center) / sigma,
        .one_minus_q = one_minus_q,
    };
}

XiIntegrals xi_integrals(int y, double delta, double a, double q, double k, double beta,
                         double epsilon_q) {
    if (y != 1 && y != -1) {
        throw InvalidArgument("source symbol must be +1 or -1");
    }
    if (!(q >= 0.0 && q < 1.0)) {
        throw InvalidArgument("overlap q must lie in [0,1), got " + std::to_string(q));
    }
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw InvalidArgument("threshold k must be finite and >= 0");
    }
    if (!(beta > 0.0)) {
        throw InvalidArgument("beta must be positive");
    }
    if (!std::isfinite(delta) || !std::isfinite(a)) {
        throw InvalidArgument("cavity field arguments must be finite");
    }
    if (!(epsilon_q > 0.0 && epsilon_q < 1.0)) {
        throw InvalidArgument("epsilon_q must lie in (0,1)");
    }

    const CavityGeometry geo = cavity_geometry(delta, a, q, k, epsilon_q);
    const double wm = geo.w_minus;
    const double wp = geo.w_plus;
    if (!std::isfinite(wm) || !std::isfinite(wp)) {
        throw NumericOverflow("cavity thresholds overflowed (w- = " + std::to_string(wm) +
                                  ", w+ = " + std::to_string(wp) + ")",
                              wm, wp);
    }

    const double omq = geo.one_minus_q;
    const double exp_mb = std::exp(-beta);
    const double one_minus_exp_mb = -std::expm1(-beta);

    // Gaussian mass between the two crossings, evaluated from whichever pair
    // of tails stays far from the 1 - 1 cancellation.  The straddling branch
    // sums the tails before subtracting so the result is bit-exactly invariant
    // under the mirror map (delta, a) -> (-delta, -a).
    double p_inside;
    if (wm >= 0.0) {
        p_inside = tail(wm) - tail(wp);
    } else if (wp <= 0.0) {
        p_inside = tail(-wp) - tail(-wm);
    } else {
        p_inside = 1.0 - (tail(-wm) + tail(wp));
    }
    p_inside = std::clamp(p_inside, 0.0, 1.0);
    const double p_outside = std::clamp(tail(-wm) + tail(wp), 0.0, 1.0);

    const double i0 = exp_mb + one_minus_exp_mb * (y > 0 ? p_inside : p_outside);

    // Brackets exp(-wm^2/2) - exp(-wp^2/2) and wm exp(-wm^2/2) - wp exp(-wp^2/2),
    // factoring out the larger exponential before subtracting so that equal-sign
    // crossings far from the origin do not cancel catastrophically.
    const double ea = 0.5 * wm * wm;
    const double eb = 0.5 * wp * wp;
    double bracket1 = 0.0;
    double bracket2 = 0.0;
    if (std::min(ea, eb) <= 709.0) {
        if (ea <= eb) {
            const double scale = std::exp(-ea);
            const double shrink = std::exp(ea - eb);  // in [0,1]
            bracket1 = -scale * std::expm1(ea - eb);
            bracket2 = scale * (wm - wp * shrink);
        } else {
            const double scale = std::exp(-eb);
            const double shrink = std::exp(eb - ea);
            bracket1 = scale * std::expm1(eb - ea);
            bracket2 = scale * (wm * shrink - wp);
        }
    }

    const double ys = static_cast<double>(y);
    const double i1 = one_minus_exp_mb * ys * bracket1 / (kSqrt2Pi * std::sqrt(omq));
    const double i2 = one_minus_exp_mb * ys * bracket2 / (kSqrt2Pi * omq);

    if (!std::isfinite(i0) || !std::isfinite(i1) || !std::isfinite(i2)) {
        throw NumericOverflow("channel integral overflowed (w- = " + std::to_string(wm) +
                                  ", w+ = " + std::to_string(wp) + ")",
                              wm, wp);
    }
    return XiIntegrals{.i0 = i0, .i1 = i1, .i2 = i2};
}

}  // namespace plc
