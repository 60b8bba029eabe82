#pragma once

#include "qbattery/model.hpp"

namespace qbattery {

// Closed-form prediction of the first battery-energy maximum on a power-law
// ramp (gamma = 0).  theta_m = k t_m^{1+r} depends on r only.
struct PeakPrediction {
    double theta_m;
    double t_m;
    double e_bm;
    double p_bm;
};

// Fresnel peak-condition diagnostics at a given theta (linear ramp, r = 1).
// lhs = (C^2 - S^2) / (2 C S) with argument sqrt(theta/pi); the candidates
// are the right-hand sides the condition has been written against.  At the
// true maximizer lhs equals cot(theta) while both printed variants miss.
struct PeakConditionResiduals {
    double lhs;
    double vs_cot_theta_sq_half;  // lhs - cot(theta^2 / 2)
    double vs_cot_theta_half;     // lhs - cot(theta / 2)
    double vs_cot_theta;          // lhs - cot(theta)
};

// Constant coupling, gamma = 0:
//   E_B(t) = 4 omega0 F^2 / g_f^2 * sin^4(g_f t / 2).
double energy_constant_coupling(const SystemParams& params, double g_f, double t);

// Battery energy on the ramp (gamma = 0, PowerLaw, 0 <= t <= tau_q), exact
// for the vacuum start:
//   E_B(t) = omega0 (F t / (1+r))^2 x^{2(alpha-1)} w(x)^2,  x = theta(t)/(1+r),
// where w is the oscillator response below.  The large-x branch of w is
// evaluated through specfun::gen_exp_integral.
double energy_quench_closed(const SystemParams& params, const QuenchProtocol& protocol, double t);

// w(x) = Im[ e^{ix} int_0^x e^{-is} s^{-alpha} ds ]: response of a unit
// oscillator driven by s^{-alpha}, the shape of the battery amplitude in the
// ramp phase variable.  E_B is proportional to w^2.
double ramp_response(double alpha, double x);

// Maximizes the closed-form energy over the ramp phase (memoized per ramp
// exponent) and converts to (t_m, E_Bm, P_Bm) for the given protocol.
PeakPrediction peak_prediction(const SystemParams& params, const QuenchProtocol& protocol);

PeakConditionResiduals peak_condition_residuals(double theta);

// Decoupled dissipative charger:
//   E_A(t) = omega0 (4 F^2 / gamma^2) (e^{-gamma t / 2} - 1)^2,
// with a series switchover near gamma t = 0 and the exact omega0 F^2 t^2
// limit at gamma = 0.
double charger_energy_decoupled(const SystemParams& params, double t);

// Normalized shape of the step-quench peak power,
//   (e^{-gamma tau/2} - 1)^2 / (tau gamma^2);
// a proportionality, never an absolute power.
double power_scaling_step(const SystemParams& params, double tau_q);

// Maximizer of power_scaling_step: tau = 2 y / gamma with e^y = 1 + 2y, y > 0
// (numerically 2.5129 / gamma).
double optimal_tauq_step(double gamma);

}  // namespace qbattery
