#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qbattery/dynamics.hpp"
#include "qbattery/model.hpp"

namespace qbattery {

// Coherently driven Tavis-Cummings battery on a truncated charger Fock space
// tensored with a collective spin s:
//   H(t) = g(t)/sqrt(2s) (S+ a + S- a^dag) + F (a + a^dag),
// starting from |n=0> (x) |m=-s>.  Battery energy omega0 (<S_z> + s),
// charger energy omega0 <a^dag a>.  Closed system only (gamma = 0).
struct TCConfig {
    double spin = 4.0;  // collective spin s; 2s must be a nonnegative integer
    int n_cutoff = 16;  // charger Fock truncation, >= 2
    SystemParams params;
    QuenchProtocol protocol = QuenchProtocol::power_law(1.0, 1.0, 50.0);

    void validate() const;
    std::size_t spin_states() const { return static_cast<std::size_t>(2.0 * spin + 1.5); }
    std::size_t dimension() const { return static_cast<std::size_t>(n_cutoff) * spin_states(); }
};

struct TCTrace {
    EnergyTrace energy;
    std::vector<double> norm;
    std::vector<double> leakage;  // probability at the highest retained Fock level
    double max_norm_drift = 0.0;
    double max_leakage = 0.0;
};

struct HPPoint {
    double spin;
    double error;
};

// Sparse (matrix-free) Schroedinger evolution.  Throws CutoffError naming a
// larger n_cutoff when leakage exceeds 1e-6 and IntegratorError when the norm
// drifts by more than 1e-6.
TCTrace evolve_tc(const TCConfig& cfg, double horizon, int n_out, double tol);

// error(s) = max_t |E_B^TC - E_B^bosonic| / max_t E_B^bosonic against the
// first-moment model, one row per spin (shared params/protocol/horizon).
std::vector<HPPoint> hp_convergence(const TCConfig& base, std::span<const double> spins,
                                    double horizon, int n_out, double tol);

// sup-norm error between two battery traces on the same grid, relative to
// the reference peak
double trace_error_vs_reference(const EnergyTrace& candidate, const EnergyTrace& reference);

// ceil(4 max_t E_A / omega0) + 10, with E_A from the cheap first-moment model.
int required_cutoff(const SystemParams& params, const QuenchProtocol& protocol, double horizon);

// H(t) |psi>; exposed for hermiticity and conservation probes.
void apply_hamiltonian(const TCConfig& cfg, double t, std::span<const std::complex<double>> psi,
                       std::span<std::complex<double>> out);

}  // namespace qbattery
