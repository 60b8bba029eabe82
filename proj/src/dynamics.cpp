#include "qbattery/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

#include "qbattery/integrator.hpp"

namespace qbattery {
namespace {

constexpr double kPi = std::numbers::pi;

// state layout: {Re a, Im a, Re b, Im b}
struct MomentRhs {
    double drive;
    double gamma;

    void operator()(double g, std::span<const double> y, std::span<double> d) const {
        const double ar = y[0], ai = y[1], br = y[2], bi = y[3];
        d[0] = g * bi - 0.5 * gamma * ar;
        d[1] = -(g * br + drive) - 0.5 * gamma * ai;
        d[2] = g * ai;
        d[3] = -g * ar;
    }
};

}  // namespace

Trajectory integrate_moments_from(const SystemParams& params, const QuenchProtocol& protocol,
                                  std::complex<double> a0, std::complex<double> b0,
                                  double horizon, int n_out, double tol) {
    params.validate();
    if (!(horizon > 0.0)) throw std::domain_error("integrate_moments: horizon must be > 0");
    if (n_out < 2) throw std::domain_error("integrate_moments: n_out must be >= 2");
    if (!(tol > 1e-14) || !(tol < 1e-3))
        throw std::domain_error("integrate_moments: tol must lie in (1e-14, 1e-3)");

    Trajectory traj{params, protocol, {}, {}, {}, tol};
    traj.times.resize(n_out);
    traj.a_amp.resize(n_out);
    traj.b_amp.resize(n_out);
    for (int i = 0; i < n_out; ++i) traj.times[i] = horizon * i / (n_out - 1);
    traj.times.back() = horizon;

    const MomentRhs eom{params.drive, params.gamma};
    auto sink = [&](std::size_t idx, double, std::span<const double> y) {
        traj.a_amp[idx] = {y[0], y[1]};
        traj.b_amp[idx] = {y[2], y[3]};
    };

    StepControl ctrl;
    ctrl.rtol = tol;
    // absolute floor scales with the drive so runs at different F take
    // identical step sequences (drive linearity holds to rounding)
    ctrl.atol = tol * (1e-2 * params.drive + 1e-2 * std::abs(a0) + 1e-2 * std::abs(b0)) + 1e-280;

    std::vector<double> y{a0.real(), a0.imag(), b0.real(), b0.imag()};

    const double tq = protocol.tau_q();
    const bool split = protocol.kind() != RampKind::Constant && tq < horizon;
    const double t_mid = split ? tq : horizon;

    // ramp segment: left-limit coupling, conservative first step because
    // r < 1 ramps have unbounded slope at t = 0
    {
        auto rhs = [&](double t, std::span<const double> yy, std::span<double> dd) {
            eom(protocol.coupling_on_ramp(std::min(t, tq)), yy, dd);
        };
        StepControl c1 = ctrl;
        c1.initial_step = std::min(tq, t_mid) * 1e-6;
        const auto end_it = std::upper_bound(traj.times.begin(), traj.times.end(), t_mid);
        const std::size_t n_first = static_cast<std::size_t>(end_it - traj.times.begin());
        integrate_adaptive(rhs, y, 0.0, t_mid, c1,
                           std::span<const double>(traj.times.data(), n_first),
                           [&](std::size_t idx, double t, std::span<const double> yy) {
                               sink(idx, t, yy);
                           });
        if (split) {
            auto rhs2 = [&](double, std::span<const double> yy, std::span<double> dd) {
                eom(protocol.g_f(), yy, dd);
            };
            StepControl c2 = ctrl;
            c2.initial_step = std::min(horizon - tq, 1.0) * 1e-3;
            integrate_adaptive(rhs2, y, tq, horizon, c2,
                               std::span<const double>(traj.times.data() + n_first,
                                                       traj.times.size() - n_first),
                               [&](std::size_t idx, double t, std::span<const double> yy) {
                                   sink(idx + n_first, t, yy);
                               });
        }
    }
    return traj;
}

Trajectory integrate_moments(const SystemParams& params, const QuenchProtocol& protocol,
                             double horizon, int n_out, double tol) {
    return integrate_moments_from(params, protocol, {0.0, 0.0}, {0.0, 0.0}, horizon, n_out, tol);
}

EnergyTrace energy_trace(const Trajectory& traj) {
    EnergyTrace tr;
    const std::size_t n = traj.times.size();
    tr.times = traj.times;
    tr.e_a.resize(n);
    tr.e_b.resize(n);
    tr.p_b.resize(n);
    const double w0 = traj.params.omega0;
    for (std::size_t i = 0; i < n; ++i) {
        tr.e_a[i] = w0 * std::norm(traj.a_amp[i]);
        tr.e_b[i] = w0 * std::norm(traj.b_amp[i]);
        tr.p_b[i] = traj.times[i] > 0.0 ? tr.e_b[i] / traj.times[i] : 0.0;
    }
    tr.peak = find_first_peak(tr);
    return tr;
}

std::optional<Peak> find_first_peak(const EnergyTrace& trace) {
    const auto& e = trace.e_b;
    const auto& t = trace.times;
    if (e.size() < 3) return std::nullopt;
    for (std::size_t i = 1; i + 1 < e.size(); ++i) {
        if (e[i] > e[i - 1] && e[i] > e[i + 1]) {
            // quadratic refinement through the three bracketing samples
            const double denom = e[i - 1] - 2.0 * e[i] + e[i + 1];
            double tm = t[i];
            double em = e[i];
            if (denom < 0.0) {
                const double dt = 0.5 * (t[i + 1] - t[i - 1]);
                const double off = 0.5 * (e[i - 1] - e[i + 1]) / denom;
                tm = std::clamp(t[i] + off * dt, t[i - 1], t[i + 1]);
                em = e[i] - 0.125 * (e[i - 1] - e[i + 1]) * (e[i - 1] - e[i + 1]) / denom;
            }
            if (tm <= 0.0) continue;
            return Peak{tm, em, em / tm};
        }
    }
    return std::nullopt;
}

double default_horizon(const QuenchProtocol& protocol) {
    if (!(protocol.g_f() > 0.0))
        throw std::domain_error("default_horizon: needs g_f > 0 (pass an explicit horizon)");
    return protocol.tau_q() + 6.0 * kPi / protocol.g_f();
}

int default_output_points(const QuenchProtocol& protocol, double horizon) {
    // ~30 samples per post-quench half-period pi / (2 g_f) of |<b>|^2
    const double rate = protocol.g_f() > 0.0 ? 30.0 * protocol.g_f() / kPi : 10.0;
    const double n = std::ceil(horizon * rate);
    return static_cast<int>(std::clamp(n, 2001.0, 400001.0));
}

}  // namespace qbattery
