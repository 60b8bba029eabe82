#pragma once

// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately avoid the production code paths: the exponential
// integral is evaluated by exponentially damped panel quadrature with
// Richardson extrapolation in the damping parameter, the Fresnel integrals
// by adaptive quadrature of their defining integrals, and Lambert W by
// bisection on w e^w.

#include <complex>
#include <functional>

namespace oracles {

// Adaptive Gauss-Kronrod integration to an absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol);

// int_1^inf u^{-alpha} e^{i x u} du as the eps -> 0+ limit of the damped
// integral, extrapolated from damping values eps_j = |x| eta0 2^{-j}.
std::complex<double> damped_exp_integral(double alpha, double x, int levels = 10,
                                         double eta0 = 0.5);

struct FresnelPair {
    double c, s;
};
FresnelPair fresnel_quadrature(double z, double abs_tol = 1e-14);

// Bisection root of w e^w = x on w in [-745, -1].
double lambert_bisection(double x);

}  // namespace oracles
