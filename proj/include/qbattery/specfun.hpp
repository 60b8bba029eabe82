#pragma once

#include <complex>
#include <functional>

namespace qbattery::specfun {

// Generalized exponential integral with oscillatory kernel,
//   E_alpha(i x) = int_1^inf u^{-alpha} e^{i x u} du,
// defined as the Abel-regularized limit of the damped integral.  Valid for
// 0 <= alpha < 1 and real nonzero x, |x| < 1e6.  At x = 0 the integral
// diverges for every admissible alpha.
std::complex<double> gen_exp_integral(double alpha, double x);

struct FresnelValue {
    double c;  // int_0^z cos(pi u^2 / 2) du
    double s;  // int_0^z sin(pi u^2 / 2) du
};

FresnelValue fresnel(double z);

// Branch -1 of the Lambert W function on (-1/e, 0); returns w <= -1 with
// w e^w = x to relative residual <= 1e-12.
double lambert_w_branch_minus1(double x);

struct MaxResult {
    double arg;
    double value;
};

// Grid scan over [lo, hi] followed by golden-section refinement of the best
// cell.  |arg - true maximizer| <= tol for a unimodal maximum inside the
// refined cell.  Throws EvaluationError if f produces a non-finite value.
MaxResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

}  // namespace qbattery::specfun
