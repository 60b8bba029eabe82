#pragma once

#include <string>

namespace qbattery {

// Physical parameters of the driven charger/battery pair, natural units
// (hbar = 1, omega0 is the reference energy, 1/omega0 the reference time).
struct SystemParams {
    double omega0 = 1.0;  // mode frequency of charger and battery (resonant)
    double drive = 0.01;  // coherent drive amplitude F applied to the charger
    double gamma = 0.0;   // charger dissipation rate, >= 0

    void validate() const;
};

enum class RampKind { PowerLaw, Constant, Step };

// Coupling quench g(t): rises from 0 to g_f over tau_q with ramp exponent r,
// then stays at g_f.  Constant (r = 0) and Step (r -> infinity) are explicit
// variants because their closed forms differ and the limits are numerically
// ill-conditioned.
class QuenchProtocol {
  public:
    static QuenchProtocol power_law(double r, double g_f, double tau_q);
    static QuenchProtocol constant(double g_f, double tau_q);
    static QuenchProtocol step(double g_f, double tau_q);

    RampKind kind() const { return kind_; }
    double ramp_exponent() const { return r_; }
    double g_f() const { return g_f_; }
    double tau_q() const { return tau_q_; }

    // g(t); piecewise, equals g_f exactly for every t >= tau_q.
    double coupling_at(double t) const;

    // Scaling exponent alpha = r/(r+1); 0 for Constant, 1 for Step.
    double alpha() const;

    // Accumulated ramp phase k t^{1+r} with k = g_f / tau_q^r.
    // Defined only on the ramp of a PowerLaw protocol.
    double theta(double t) const;

    // k = g_f / tau_q^r (PowerLaw only).
    double phase_rate() const;

    // Left-limit coupling on [0, tau_q]; differs from coupling_at only for
    // Step at t = tau_q.  Used to integrate up to the ramp end without
    // stepping across the discontinuity.
    double coupling_on_ramp(double t) const;

    std::string ramp_name() const;

  private:
    QuenchProtocol(RampKind kind, double r, double g_f, double tau_q);

    RampKind kind_;
    double r_;
    double g_f_;
    double tau_q_;
};

}  // namespace qbattery
