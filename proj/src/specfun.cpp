#include "qbattery/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qbattery/errors.hpp"

namespace qbattery::specfun {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// E_alpha(ix)
// ---------------------------------------------------------------------------

// Power-series route (moderate |x|):
//   E_a(ix) = Gamma(1-a) (-ix)^{a-1} - sum_k (ix)^k / (k! (1-a+k)).
// The branch factor for x > 0 is x^{a-1} e^{i pi (1-a)/2}.
cplx exp_integral_series(double alpha, double x) {
    const double phi = 0.5 * kPi * (1.0 - alpha);
    const cplx branch = std::tgamma(1.0 - alpha) * std::pow(x, alpha - 1.0) *
                        cplx(std::cos(phi), std::sin(phi));
    const cplx ix(0.0, x);
    cplx term(1.0, 0.0);  // (ix)^k / k!
    cplx sum = term / cplx(1.0 - alpha, 0.0);
    for (int k = 1; k < 600; ++k) {
        term *= ix / static_cast<double>(k);
        const cplx add = term / cplx(1.0 - alpha + k, 0.0);
        sum += add;
        if (k > x && std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return branch - sum;
}

// Continued-fraction route (large |x|), branch factors cancel:
//   E_a(ix) = e^{ix} / (z + 1 - a - 1(1-a)/(z + 3 - a - 2(2-a)/(...)))
// with z = -ix, a = 1 - alpha (modified Lentz).
cplx exp_integral_cf(double alpha, double x) {
    const double a = 1.0 - alpha;
    const cplx z(0.0, -x);
    const cplx tiny(1e-300, 0.0);
    cplx b = z + cplx(1.0 - a, 0.0);
    cplx f = (b == cplx(0.0)) ? tiny : b;
    cplx c = f;
    cplx d(0.0, 0.0);
    for (int n = 1; n < 200000; ++n) {
        const cplx an(-static_cast<double>(n) * (static_cast<double>(n) - a), 0.0);
        b += 2.0;
        d = b + an * d;
        if (d == cplx(0.0)) d = tiny;
        c = b + an / c;
        if (c == cplx(0.0)) c = tiny;
        d = 1.0 / d;
        const cplx delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            return cplx(std::cos(x), std::sin(x)) / f;
        }
    }
    throw EvaluationError("gen_exp_integral: continued fraction failed to converge");
}

// ---------------------------------------------------------------------------
// Fresnel integrals
// ---------------------------------------------------------------------------

// Gauss-Legendre nodes on [-1,1], computed once by Newton iteration on P_n.
struct GaussLegendre {
    std::array<double, 20> node{};
    std::array<double, 20> weight{};
    GaussLegendre() {
        const int n = 20;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            node[i] = x;
            weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre& gl20() {
    static const GaussLegendre table;
    return table;
}

// Tail integral T(z) = int_z^inf e^{i pi u^2/2} du for z >= 1, evaluated on
// the steepest-descent ray u = z + e^{i pi/4} v:
//   T(z) = e^{i pi z^2/2} e^{i pi/4} int_0^inf e^{-pi z v/sqrt2} e^{i pi z v/sqrt2}
//          e^{-pi v^2/2} dv.
cplx fresnel_tail(double z) {
    const double b = kPi * z / std::sqrt(2.0);
    // decay: exp(-b v - pi v^2 / 2); solve b v + (pi/2) v^2 = 42 for the cutoff
    const double vmax = (-b + std::sqrt(b * b + 2.0 * kPi * 42.0)) / kPi;
    // panel width limited by the oscillation/decay rate
    const int panels = std::max(8, static_cast<int>(std::ceil(vmax * (b + kPi * vmax) / 5.0)));
    const auto& q = gl20();
    cplx total(0.0, 0.0);
    const double hw = vmax / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * hw;
        cplx acc(0.0, 0.0);
        for (int i = 0; i < 20; ++i) {
            const double v = mid + 0.5 * hw * q.node[i];
            const double damp = std::exp(-b * v - 0.5 * kPi * v * v);
            acc += q.weight[i] * damp * cplx(std::cos(b * v), std::sin(b * v));
        }
        total += acc * (0.5 * hw);
    }
    // phase pi z^2 / 2 reduced in extended precision
    const long double rho = 0.5L * 3.141592653589793238462643383279502884L *
                            static_cast<long double>(z) * static_cast<long double>(z);
    const long double red = std::fmod(rho, 2.0L * 3.141592653589793238462643383279502884L);
    const cplx phase(static_cast<double>(std::cos(red)), static_cast<double>(std::sin(red)));
    const cplx rot(std::cos(0.25 * kPi), std::sin(0.25 * kPi));
    return phase * rot * total;
}

FresnelValue fresnel_positive(double z) {
    if (z <= 1.0) {
        // Taylor series of the defining integrals; rho = pi z^2 / 2 <= pi/2,
        // no cancellation.
        const double rho = 0.5 * kPi * z * z;
        const double rho2 = rho * rho;
        double c = 0.0, s = 0.0;
        double tc = z;        // z * rho^{2n} / (2n)!
        double ts = z * rho;  // z * rho^{2n+1} / (2n+1)!
        for (int n = 0; n < 40; ++n) {
            const double addc = tc / (4.0 * n + 1.0);
            const double adds = ts / (4.0 * n + 3.0);
            c += (n % 2 == 0) ? addc : -addc;
            s += (n % 2 == 0) ? adds : -adds;
            if (std::abs(addc) + std::abs(adds) < 1e-18 * (std::abs(c) + std::abs(s) + 1e-30))
                break;
            tc *= rho2 / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
            ts *= rho2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
        }
        return {c, s};
    }
    const cplx tail = fresnel_tail(z);
    return {0.5 - tail.real(), 0.5 - tail.imag()};
}

}  // namespace

std::complex<double> gen_exp_integral(double alpha, double x) {
    if (!(alpha >= 0.0) || !(alpha < 1.0))
        throw std::domain_error("gen_exp_integral: alpha must lie in [0, 1)");
    if (!std::isfinite(x) || std::abs(x) >= 1e6)
        throw std::domain_error("gen_exp_integral: |x| must be finite and < 1e6");
    if (x == 0.0)
        throw std::domain_error("gen_exp_integral: integral diverges at x = 0 for alpha < 1");
    const double ax = std::abs(x);
    const cplx val = ax < 12.0 ? exp_integral_series(alpha, ax) : exp_integral_cf(alpha, ax);
    return x > 0.0 ? val : std::conj(val);
}

FresnelValue fresnel(double z) {
    if (!std::isfinite(z) || std::abs(z) > 1e4)
        throw std::domain_error("fresnel: |z| must be finite and <= 1e4");
    if (z == 0.0) return {0.0, 0.0};
    const FresnelValue v = fresnel_positive(std::abs(z));
    return z > 0.0 ? v : FresnelValue{-v.c, -v.s};
}

double lambert_w_branch_minus1(double x) {
    constexpr double inv_e = 0.36787944117144233;  // 1/e
    if (!(x > -inv_e) || !(x < 0.0)) {
        if (x == -inv_e) return -1.0;  // branch point
        throw std::domain_error("lambert_w_branch_minus1: x must lie in (-1/e, 0)");
    }
    // solve g(w) = w + log(-w) - log(-x) = 0, monotone increasing on (-inf, -1]
    const double target = std::log(-x);
    auto g = [&](double w) { return w + std::log(-w) - target; };
    double hi = -1.0;  // g(-1) = -1 - log(-x) > 0
    double lo = -2.0;
    while (g(lo) > 0.0) {
        lo *= 2.0;
        if (lo < -750.0) break;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (g(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    double w = 0.5 * (lo + hi);
    // Halley polish on f(w) = w e^w - x, guarded near the branch point where
    // f' vanishes
    for (int it = 0; it < 3; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double fp = ew * (1.0 + w);
        if (std::abs(fp) < 1e-12 * ew) break;
        const double fpp = ew * (2.0 + w);
        const double step = f / (fp - 0.5 * f * fpp / fp);
        const double wn = w - step;
        if (!(wn < -1.0) || !std::isfinite(wn)) break;
        w = wn;
        if (std::abs(step) < 4e-16 * std::abs(w)) break;
    }
    return w;
}

MaxResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: need lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("maximize_scalar: need tol > 0");
    auto eval = [&](double t) {
        const double v = f(t);
        if (!std::isfinite(v))
            throw EvaluationError("maximize_scalar: objective returned a non-finite value");
        return v;
    };

    constexpr int kGrid = 128;
    double best_t = lo;
    double best_v = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i <= kGrid; ++i) {
        const double t = lo + (hi - lo) * i / kGrid;
        const double v = eval(t);
        if (v > best_v) {
            best_v = v;
            best_t = t;
            best_i = i;
        }
    }
    double a = lo + (hi - lo) * std::max(best_i - 1, 0) / kGrid;
    double b = lo + (hi - lo) * std::min(best_i + 1, kGrid) / kGrid;

    // golden-section on [a, b]
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 400 && (b - a) > tol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = eval(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = eval(x1);
        }
    }
    const double t_star = 0.5 * (a + b);
    const double v_star = eval(t_star);
    if (v_star >= best_v) return {t_star, v_star};
    return {best_t, best_v};
}

}  // namespace qbattery::specfun
