#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qbattery/model.hpp"

namespace qbattery {

// First-moment trajectory <a>(t), <b>(t) on a uniform output grid.
struct Trajectory {
    SystemParams params;
    QuenchProtocol protocol;
    std::vector<double> times;
    std::vector<std::complex<double>> a_amp;
    std::vector<std::complex<double>> b_amp;
    double integrator_tol = 0.0;
};

struct Peak {
    double t_m;
    double e_bm;
    double p_bm;
};

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> e_a;
    std::vector<double> e_b;
    std::vector<double> p_b;  // e_b / t, 0 at t = 0
    std::optional<Peak> peak;
};

// Integrates
//   d<a>/dt = -i (g(t) <b> + F) - (gamma/2) <a>,   d<b>/dt = -i g(t) <a>
// from the ground state (0, 0), sampling n_out uniform times on [0, horizon].
// The integration is split at tau_q so no step straddles the ramp end.
Trajectory integrate_moments(const SystemParams& params, const QuenchProtocol& protocol,
                             double horizon, int n_out, double tol);

// Same equations from arbitrary initial amplitudes (used by invariance tests;
// the physical protocol starts from vacuum).
Trajectory integrate_moments_from(const SystemParams& params, const QuenchProtocol& protocol,
                                  std::complex<double> a0, std::complex<double> b0,
                                  double horizon, int n_out, double tol);

// E_A = omega0 |<a>|^2, E_B = omega0 |<b>|^2 (exact for this quadratic,
// linearly driven, vacuum-initialized model), P_B = E_B / t, and the first
// interior peak of E_B when present.
EnergyTrace energy_trace(const Trajectory& traj);

// Earliest interior sample strictly above both neighbours, refined by a
// three-point quadratic fit.  Absent when E_B is monotone over the horizon.
std::optional<Peak> find_first_peak(const EnergyTrace& trace);

// tau_q + 6 pi / g_f: three post-quench coupling periods, enough to bracket
// the first peak for slow quenches.
double default_horizon(const QuenchProtocol& protocol);

// Output grid dense enough to resolve post-quench oscillation lobes.
int default_output_points(const QuenchProtocol& protocol, double horizon);

}  // namespace qbattery
