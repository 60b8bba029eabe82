#include "qbattery/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbattery/errors.hpp"

namespace qbattery {
namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
// 4th-order weights for the error estimate.
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;
// Dense-output weights.
constexpr double D1 = -12715105075.0 / 11282082432.0, D3 = 87487479700.0 / 32700410799.0,
                 D4 = -10690763975.0 / 1880347072.0, D5 = 701980252875.0 / 199316789632.0,
                 D6 = -1453857185.0 / 822651844.0, D7 = 69997945.0 / 29380423.0;

}  // namespace

void integrate_adaptive(const OdeRhs& rhs, std::vector<double>& y, double t0, double t1,
                        const StepControl& ctrl, std::span<const double> out_times,
                        const DenseSink& sink) {
    const std::size_t n = y.size();
    const double span = t1 - t0;
    if (!(span >= 0.0)) throw std::invalid_argument("integrate_adaptive: t1 < t0");

    std::size_t out_idx = 0;
    // emit any outputs that coincide with the start
    while (out_idx < out_times.size() && out_times[out_idx] <= t0) {
        if (sink) sink(out_idx, out_times[out_idx], y);
        ++out_idx;
    }
    if (span == 0.0) return;

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    std::vector<double> cont1(n), cont2(n), cont3(n), cont4(n), cont5(n);

    double t = t0;
    double hmax = ctrl.max_step > 0.0 ? ctrl.max_step : span;
    double h = ctrl.initial_step > 0.0 ? ctrl.initial_step : span * 1e-4;
    h = std::min(h, hmax);

    rhs(t, y, k1);
    const double hmin_floor = std::numeric_limits<double>::epsilon() * 16.0;
    int consecutive_rejects = 0;

    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        if (!(h > std::abs(t) * hmin_floor) && !(h > span * 1e-300)) {
            throw StiffnessError("integrate_adaptive: step size underflow at t", t);
        }

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * A21 * k1[i];
        rhs(t + C2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        rhs(t + C3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        rhs(t + C4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        rhs(t + C5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        rhs(t + h, ynew, k7);

        // scaled error norm
        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                                  E7 * k7[i]);
            const double sc =
                ctrl.atol + ctrl.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            if (!std::isfinite(ynew[i])) finite = false;
            if (sc > 0.0) err += (e / sc) * (e / sc);
        }
        err = n > 0 ? std::sqrt(err / static_cast<double>(n)) : 0.0;

        if (!finite) {
            if (consecutive_rejects > 60)
                throw DivergenceError("integrate_adaptive: state not finite at t", t);
            h *= 0.25;
            ++consecutive_rejects;
            continue;
        }

        if (err <= 1.0) {
            consecutive_rejects = 0;
            // dense output over (t, t+h]
            if (out_idx < out_times.size() && out_times[out_idx] <= t + h + 1e-300) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double ydiff = ynew[i] - y[i];
                    const double bspl = h * k1[i] - ydiff;
                    cont1[i] = y[i];
                    cont2[i] = ydiff;
                    cont3[i] = bspl;
                    cont4[i] = ydiff - h * k7[i] - bspl;
                    cont5[i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] +
                                    D6 * k6[i] + D7 * k7[i]);
                }
                while (out_idx < out_times.size() && out_times[out_idx] <= t + h * (1.0 + 1e-14)) {
                    const double s = std::clamp((out_times[out_idx] - t) / h, 0.0, 1.0);
                    const double s1 = 1.0 - s;
                    for (std::size_t i = 0; i < n; ++i) {
                        ytmp[i] = cont1[i] +
                                  s * (cont2[i] + s1 * (cont3[i] + s * (cont4[i] + s1 * cont5[i])));
                    }
                    if (sink) sink(out_idx, out_times[out_idx], ytmp);
                    ++out_idx;
                }
            }
            t += h;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            const double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h = std::min(h * std::clamp(fac, 0.2, 5.0), hmax);
        } else {
            ++consecutive_rejects;
            if (consecutive_rejects > 200)
                throw StiffnessError("integrate_adaptive: repeated step rejection at t", t);
            h *= std::max(0.9 * std::pow(err, -0.2), 0.1);
        }
    }

    // anything left (times equal to t1 up to rounding)
    while (out_idx < out_times.size()) {
        if (sink) sink(out_idx, out_times[out_idx], y);
        ++out_idx;
    }
}

}  // namespace qbattery
