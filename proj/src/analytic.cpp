#include "qbattery/analytic.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "qbattery/errors.hpp"
#include "qbattery/specfun.hpp"

namespace qbattery {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// series for int_0^x e^{-is} s^{-alpha} ds = x^{1-alpha} * conj(S),
// S = sum_k (ix)^k / (k! (k+1-alpha))
cplx lower_kernel_series(double alpha, double x) {
    const cplx ix(0.0, x);
    cplx term(1.0, 0.0);
    cplx sum = term / cplx(1.0 - alpha, 0.0);
    for (int k = 1; k < 600; ++k) {
        term *= ix / static_cast<double>(k);
        const cplx add = term / cplx(1.0 - alpha + k, 0.0);
        sum += add;
        if (k > x && std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return std::pow(x, 1.0 - alpha) * std::conj(sum);
}

double theta_m_for_exponent(double r) {
    static std::mutex mu;
    static std::map<double, double> cache;
    {
        std::scoped_lock lock(mu);
        auto it = cache.find(r);
        if (it != cache.end()) return it->second;
    }
    const double a = r / (1.0 + r);
    const auto m = specfun::maximize_scalar(
        [a](double x) {
            const double w = ramp_response(a, x);
            return w * w;
        },
        1e-6, 2.0 * kPi, 1e-11);
    const double theta = (1.0 + r) * m.arg;
    std::scoped_lock lock(mu);
    cache.emplace(r, theta);
    return theta;
}

}  // namespace

double ramp_response(double alpha, double x) {
    if (!(alpha >= 0.0) || !(alpha < 1.0))
        throw std::domain_error("ramp_response: alpha must lie in [0, 1)");
    if (!(x >= 0.0)) throw std::domain_error("ramp_response: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (x < 12.0) {
        const cplx j = lower_kernel_series(alpha, x);
        return (cplx(std::cos(x), std::sin(x)) * j).imag();
    }
    const double phi = 0.5 * kPi * (1.0 - alpha);
    const cplx e = specfun::gen_exp_integral(alpha, x);
    const cplx rot(std::cos(x), -std::sin(x));
    return std::tgamma(1.0 - alpha) * std::sin(x - phi) +
           std::pow(x, 1.0 - alpha) * (rot * e).imag();
}

double energy_constant_coupling(const SystemParams& params, double g_f, double t) {
    params.validate();
    if (params.gamma != 0.0)
        throw UnsupportedError("energy_constant_coupling: no closed form for gamma != 0");
    if (!(g_f > 0.0)) throw std::domain_error("energy_constant_coupling: g_f must be > 0");
    if (!(t >= 0.0)) throw std::domain_error("energy_constant_coupling: t must be >= 0");
    const double s = std::sin(0.5 * g_f * t);
    const double F = params.drive;
    return 4.0 * params.omega0 * F * F / (g_f * g_f) * s * s * s * s;
}

double energy_quench_closed(const SystemParams& params, const QuenchProtocol& protocol,
                            double t) {
    params.validate();
    if (params.gamma != 0.0)
        throw UnsupportedError("energy_quench_closed: no closed form for gamma != 0");
    if (protocol.kind() != RampKind::PowerLaw)
        throw std::domain_error("energy_quench_closed: PowerLaw ramp required");
    if (!(t >= 0.0) || t > protocol.tau_q())
        throw std::domain_error("energy_quench_closed: valid on the ramp 0 <= t <= tau_q only");
    if (t == 0.0) return 0.0;
    const double r = protocol.ramp_exponent();
    const double a = protocol.alpha();
    const double x = protocol.theta(t) / (1.0 + r);
    const double w = ramp_response(a, x);
    const double pref = params.drive * t / (1.0 + r);
    return params.omega0 * pref * pref * std::pow(x, 2.0 * (a - 1.0)) * w * w;
}

PeakPrediction peak_prediction(const SystemParams& params, const QuenchProtocol& protocol) {
    params.validate();
    if (params.gamma != 0.0)
        throw UnsupportedError("peak_prediction: no closed form for gamma != 0");
    if (protocol.kind() != RampKind::PowerLaw)
        throw std::domain_error("peak_prediction: PowerLaw ramp required");
    const double r = protocol.ramp_exponent();
    const double theta_m = theta_m_for_exponent(r);
    if (protocol.g_f() * protocol.tau_q() < theta_m)
        throw RegimeError(
            "peak_prediction: peak lies beyond the ramp (g_f tau_q < theta_m); use the dynamics "
            "path");
    const double k = protocol.phase_rate();
    const double t_m = std::pow(theta_m / k, 1.0 / (1.0 + r));
    const double e_bm = energy_quench_closed(params, protocol, t_m);
    return {theta_m, t_m, e_bm, e_bm / t_m};
}

PeakConditionResiduals peak_condition_residuals(double theta) {
    if (!(theta > 0.0)) throw std::domain_error("peak_condition_residuals: theta must be > 0");
    const auto f = specfun::fresnel(std::sqrt(theta / kPi));
    const double lhs = (f.c * f.c - f.s * f.s) / (2.0 * f.c * f.s);
    const double c1 = 1.0 / std::tan(0.5 * theta * theta);
    const double c2 = 1.0 / std::tan(0.5 * theta);
    const double c3 = 1.0 / std::tan(theta);
    return {lhs, lhs - c1, lhs - c2, lhs - c3};
}

double charger_energy_decoupled(const SystemParams& params, double t) {
    params.validate();
    if (!(t >= 0.0)) throw std::domain_error("charger_energy_decoupled: t must be >= 0");
    const double F = params.drive;
    const double y = 0.5 * params.gamma * t;
    if (y < 1e-6) {
        // 4/g^2 (e^{-y}-1)^2 = t^2 (1 - y + 7y^2/12 + ...)
        return params.omega0 * F * F * t * t * (1.0 - y + 7.0 / 12.0 * y * y);
    }
    const double d = std::expm1(-y);
    return params.omega0 * 4.0 * F * F / (params.gamma * params.gamma) * d * d;
}

double power_scaling_step(const SystemParams& params, double tau_q) {
    params.validate();
    if (!(params.gamma > 0.0)) throw std::domain_error("power_scaling_step: gamma must be > 0");
    if (!(tau_q > 0.0)) throw std::domain_error("power_scaling_step: tau_q must be > 0");
    const double y = 0.5 * params.gamma * tau_q;
    if (y < 1e-6) return 0.25 * tau_q * (1.0 - y + 7.0 / 12.0 * y * y);
    const double d = std::expm1(-y);
    return d * d / (tau_q * params.gamma * params.gamma);
}

double optimal_tauq_step(double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("optimal_tauq_step: gamma must be > 0");
    // root of e^y = 1 + 2y on (0, inf); f is convex with a single positive root
    auto f = [](double y) { return std::expm1(y) - 2.0 * y; };
    double lo = 1.0, hi = 2.0;
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double y = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const double step = f(y) / (std::exp(y) - 2.0);
        y -= step;
        if (std::abs(step) < 1e-15 * y) break;
    }
    return 2.0 * y / gamma;
}

}  // namespace qbattery
