#pragma once
// Numerically stable scalar kernels: the Gaussian tail, binary entropy and its
// inverse, and the three closed-form Gaussian averages of the two-threshold
// channel factor Xi that drive the iterative encoder.

#include "plc/errors.hpp"

namespace plc {

// The three Gaussian averages of the channel factor and its first two
// (distributional) derivatives.  i0 lies in (0,1] for any valid beta.
struct XiIntegrals {
    double i0 = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
};

// Standardized geometry of the cavity integral: the two threshold crossings
// w_- <= w_+ (for k >= 0) and the clamped variance 1-q.
struct CavityGeometry {
    double w_minus = 0.0;
    double w_plus = 0.0;
    double one_minus_q = 1.0;
};

// H(x) = integral_x^inf dz exp(-z^2/2)/sqrt(2 pi), via erfc.
double gaussian_tail(double x);

// Binary entropy in bits, with 0*log 0 = 0.
double binary_entropy(double q);

// Unique q in [0, 1/2] with binary_entropy(q) = h; bisection to 1e-12.
double inv_binary_entropy(double h);

CavityGeometry cavity_geometry(double delta, double a, double q, double k, double epsilon_q);

// Closed forms of integral Dz Xi / Xi' / Xi'' evaluated at the cavity field
// U = delta - (1-q) a + sqrt(1-q) z, for source symbol y in {+1,-1}.
// 1-q is clamped below by epsilon_q before the square root and division.
XiIntegrals xi_integrals(int y, double delta, double a, double q, double k, double beta,
                         double epsilon_q = 1e-12);

}  // namespace plc
