#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracles {
namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Kronrod pair (QUADPACK dqk15 constants).
constexpr double XGK[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                           0.741531185599394, 0.586087235467691, 0.405845151377397,
                           0.207784955007898, 0.0};
constexpr double WGK[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                           0.140653259715525, 0.169004726639267, 0.190350578064785,
                           0.204432940075298, 0.209482141084728};
constexpr double WG[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                          0.417959183673469};

struct PanelResult {
    double value;
    double error;
    double resabs;  // h * sum w |f|: magnitude scale of the rule, bounds its noise floor
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * XGK[i]);
        fv[14 - i] = f(c + h * XGK[i]);
    }
    fv[7] = f(c);
    double kron = 0.0, gauss = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        kron += WGK[i] * (fv[i] + fv[14 - i]);
        resabs += WGK[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    kron += WGK[7] * fv[7];
    resabs += WGK[7] * std::abs(fv[7]);
    for (int i = 0; i < 3; ++i) gauss += WG[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    gauss += WG[3] * fv[7];
    return {h * kron, std::abs(h * (kron - gauss)), h * resabs};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    struct Seg {
        double a, b, value, error;
    };
    const auto first = gk15(f, a, b);
    std::vector<Seg> segs{{a, b, first.value, first.error}};
    double total_err = first.error;
    // the kron-gauss estimator bottoms out near 5e-15 * resabs; refining past
    // that level only burns evaluations
    const double floor_tol = std::max(abs_tol, 1e-14 * first.resabs);
    for (int iter = 0; iter < 2000 && total_err > floor_tol; ++iter) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const Seg seg = segs[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        if (mid == seg.a || mid == seg.b) break;
        const auto l = gk15(f, seg.a, mid);
        const auto r = gk15(f, mid, seg.b);
        total_err += l.error + r.error - seg.error;
        segs[worst] = {seg.a, mid, l.value, l.error};
        segs.push_back({mid, seg.b, r.value, r.error});
    }
    double sum = 0.0, comp = 0.0;
    for (const auto& s : segs) {
        const double y = s.value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

std::complex<double> damped_exp_integral(double alpha, double x, int levels, double eta0) {
    if (x == 0.0) throw std::domain_error("damped_exp_integral: diverges at x = 0");
    const double sign = x < 0.0 ? -1.0 : 1.0;
    const double ax = std::abs(x);

    // Damping anchored at the lower limit, e^{-eps (u-1)}: the same Abel
    // limit, but the damped values keep the integral head so the only
    // eps-dependence left is on the oscillation scale the extrapolation
    // nodes are matched to.
    auto one_level = [&](double eps, double abs_tol) {
        // half-period panels; Kahan accumulation
        const double panel = std::min(kPi / ax, 1.0 / eps);
        double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
        double u = 1.0;
        const long max_panels = static_cast<long>(50.0 / (eps * panel)) + 16;
        for (long p = 0; p < max_panels; ++p) {
            const double u2 = u + panel;
            const double r = integrate(
                [&](double t) {
                    return std::pow(t, -alpha) * std::exp(-eps * (t - 1.0)) * std::cos(ax * t);
                },
                u, u2, abs_tol);
            const double i = integrate(
                [&](double t) {
                    return std::pow(t, -alpha) * std::exp(-eps * (t - 1.0)) * std::sin(ax * t);
                },
                u, u2, abs_tol);
            double y = r - cre, t1 = re + y;
            cre = (t1 - re) - y;
            re = t1;
            y = i - cim;
            t1 = im + y;
            cim = (t1 - im) - y;
            im = t1;
            u = u2;
            if (std::exp(-eps * (u - 1.0)) * std::pow(u, -alpha) / eps < abs_tol) break;
        }
        return std::complex<double>(re, im);
    };

    const std::complex<double> coarse = one_level(eta0 * ax, 1e-10);
    const double scale = std::max(std::abs(coarse), 1e-6);

    std::vector<std::complex<double>> q(levels);
    std::vector<double> eta(levels);
    for (int j = 0; j < levels; ++j) {
        eta[j] = eta0 * std::pow(0.5, j);
        // per-panel budget shrinks with eta so the summed error stays ~1e-13 * scale
        q[j] = one_level(eta[j] * ax, std::max(1e-13 * scale * eta[j], 3e-17 * scale));
    }
    // Neville extrapolation to eta = 0
    for (int k = 1; k < levels; ++k)
        for (int j = levels - 1; j >= k; --j)
            q[j] = q[j] + (q[j] - q[j - 1]) * (eta[j] / (eta[j - k] - eta[j]));
    const std::complex<double> val = q[levels - 1];
    return sign > 0 ? val : std::conj(val);
}

FresnelPair fresnel_quadrature(double z, double abs_tol) {
    const double az = std::abs(z);
    if (az == 0.0) return {0.0, 0.0};
    const double c =
        integrate([](double u) { return std::cos(0.5 * kPi * u * u); }, 0.0, az, abs_tol);
    const double s =
        integrate([](double u) { return std::sin(0.5 * kPi * u * u); }, 0.0, az, abs_tol);
    return z > 0 ? FresnelPair{c, s} : FresnelPair{-c, -s};
}

double lambert_bisection(double x) {
    if (!(x > -0.36787944117144233) || !(x < 0.0))
        throw std::domain_error("lambert_bisection: x outside (-1/e, 0)");
    auto f = [&](double w) { return w * std::exp(w) - x; };
    double hi = -1.0;
    double lo = -2.0;
    while (f(lo) < 0.0 && lo > -745.0) lo *= 2.0;  // w e^w below x (more negative): move up
    // on (-inf,-1], w e^w is decreasing in w; f(-1) = -1/e - x < 0, f(-inf) -> -x > 0
    // so root brackets with f(lo) > 0, f(hi) < 0
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracles
