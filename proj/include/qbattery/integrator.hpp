#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qbattery {

// dy/dt = f(t, y); f writes the derivative into dydt.
using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 = automatic
    double max_step = 0.0;      // 0 = span
};

// Called for every requested output time, in order.
using DenseSink = std::function<void(std::size_t index, double t, std::span<const double> y)>;

// Embedded Dormand-Prince 5(4) pair with its 4th-order dense interpolant.
// Integrates y over [t0, t1]; out_times must be sorted and lie in [t0, t1].
// y is updated in place to y(t1).  Throws StiffnessError on step underflow
// and DivergenceError when the state stops being finite.
void integrate_adaptive(const OdeRhs& rhs, std::vector<double>& y, double t0, double t1,
                        const StepControl& ctrl, std::span<const double> out_times,
                        const DenseSink& sink);

}  // namespace qbattery
