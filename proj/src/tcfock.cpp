#include "qbattery/tcfock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbattery/errors.hpp"
#include "qbattery/integrator.hpp"

namespace qbattery {
namespace {

struct Ladders {
    std::vector<double> sqn;  // sqrt(n), n = 0..n_cutoff
    std::vector<double> cp;   // S+ from m_j: sqrt((s - m)(s + m + 1))
    std::vector<double> cm;   // S- from m_j: sqrt((s + m)(s - m + 1))

    explicit Ladders(const TCConfig& cfg) {
        const std::size_t ns = cfg.spin_states();
        const double s = cfg.spin;
        sqn.resize(cfg.n_cutoff + 1);
        for (int n = 0; n <= cfg.n_cutoff; ++n) sqn[n] = std::sqrt(static_cast<double>(n));
        cp.resize(ns);
        cm.resize(ns);
        for (std::size_t j = 0; j < ns; ++j) {
            const double m = static_cast<double>(j) - s;
            cp[j] = std::sqrt(std::max((s - m) * (s + m + 1.0), 0.0));
            cm[j] = std::sqrt(std::max((s + m) * (s - m + 1.0), 0.0));
        }
    }
};

// out = H(g) psi in the flat (n, j) layout, j fastest
void apply_h(const Ladders& lad, const TCConfig& cfg, double g,
             std::span<const std::complex<double>> psi, std::span<std::complex<double>> out) {
    const std::size_t ns = cfg.spin_states();
    const int ncut = cfg.n_cutoff;
    const double F = cfg.params.drive;
    const double G = g / std::sqrt(2.0 * cfg.spin);
    for (int n = 0; n < ncut; ++n) {
        const std::size_t row = static_cast<std::size_t>(n) * ns;
        const std::size_t up = row + ns;    // (n+1, j)
        const std::size_t down = row - ns;  // (n-1, j)
        for (std::size_t j = 0; j < ns; ++j) {
            std::complex<double> acc(0.0, 0.0);
            if (n + 1 < ncut) {
                acc += F * lad.sqn[n + 1] * psi[up + j];
                if (j > 0) acc += G * lad.sqn[n + 1] * lad.cp[j - 1] * psi[up + j - 1];
            }
            if (n > 0) {
                acc += F * lad.sqn[n] * psi[down + j];
                if (j + 1 < ns) acc += G * lad.sqn[n] * lad.cm[j + 1] * psi[down + j + 1];
            }
            out[row + j] = acc;
        }
    }
}

}  // namespace

void TCConfig::validate() const {
    params.validate();
    if (params.gamma != 0.0)
        throw UnsupportedError("tcfock: dissipative Tavis-Cummings evolution is not supported");
    if (!(spin > 0.0)) throw std::invalid_argument("tcfock: spin must be > 0");
    const double twos = 2.0 * spin;
    if (std::abs(twos - std::round(twos)) > 1e-9)
        throw std::invalid_argument("tcfock: 2 * spin must be an integer");
    if (n_cutoff < 2) throw std::invalid_argument("tcfock: n_cutoff must be >= 2");
}

void apply_hamiltonian(const TCConfig& cfg, double t, std::span<const std::complex<double>> psi,
                       std::span<std::complex<double>> out) {
    cfg.validate();
    if (psi.size() != cfg.dimension() || out.size() != cfg.dimension())
        throw std::invalid_argument("apply_hamiltonian: state size mismatch");
    const Ladders lad(cfg);
    apply_h(lad, cfg, cfg.protocol.coupling_at(t), psi, out);
}

TCTrace evolve_tc(const TCConfig& cfg, double horizon, int n_out, double tol) {
    cfg.validate();
    if (!(horizon > 0.0)) throw std::domain_error("evolve_tc: horizon must be > 0");
    if (n_out < 2) throw std::domain_error("evolve_tc: n_out must be >= 2");
    if (!(tol > 1e-14) || !(tol < 1e-3))
        throw std::domain_error("evolve_tc: tol must lie in (1e-14, 1e-3)");

    const std::size_t dim = cfg.dimension();
    const std::size_t ns = cfg.spin_states();
    const Ladders lad(cfg);

    TCTrace out;
    out.energy.times.resize(n_out);
    for (int i = 0; i < n_out; ++i) out.energy.times[i] = horizon * i / (n_out - 1);
    out.energy.times.back() = horizon;
    out.energy.e_a.resize(n_out);
    out.energy.e_b.resize(n_out);
    out.energy.p_b.resize(n_out);
    out.norm.resize(n_out);
    out.leakage.resize(n_out);

    std::vector<std::complex<double>> hpsi(dim);
    auto record = [&](std::size_t idx, std::span<const double> y) {
        const auto* psi = reinterpret_cast<const std::complex<double>*>(y.data());
        double ea = 0.0, eb = 0.0, nrm = 0.0, leak = 0.0;
        for (std::size_t n = 0; n < static_cast<std::size_t>(cfg.n_cutoff); ++n) {
            for (std::size_t j = 0; j < ns; ++j) {
                const double p = std::norm(psi[n * ns + j]);
                nrm += p;
                ea += p * static_cast<double>(n);
                eb += p * static_cast<double>(j);
                if (n + 1 == static_cast<std::size_t>(cfg.n_cutoff)) leak += p;
            }
        }
        const double w0 = cfg.params.omega0;
        const double t = out.energy.times[idx];
        out.energy.e_a[idx] = w0 * ea;
        out.energy.e_b[idx] = w0 * eb;
        out.energy.p_b[idx] = t > 0.0 ? w0 * eb / t : 0.0;
        out.norm[idx] = nrm;
        out.leakage[idx] = leak;
    };

    auto make_rhs = [&](bool ramp_side) {
        return [&, ramp_side](double t, std::span<const double> y, std::span<double> dydt) {
            const double g = ramp_side ? cfg.protocol.coupling_on_ramp(std::min(t, cfg.protocol.tau_q()))
                                       : cfg.protocol.g_f();
            const auto* psi = reinterpret_cast<const std::complex<double>*>(y.data());
            apply_h(lad, cfg, g, std::span<const std::complex<double>>(psi, dim), hpsi);
            // d psi / dt = -i H psi
            for (std::size_t i = 0; i < dim; ++i) {
                dydt[2 * i] = hpsi[i].imag();
                dydt[2 * i + 1] = -hpsi[i].real();
            }
        };
    };

    std::vector<double> y(2 * dim, 0.0);
    y[0] = 1.0;  // |n=0> (x) |m=-s>

    StepControl ctrl;
    ctrl.rtol = tol;
    ctrl.atol = tol * 1e-2;

    const double tq = cfg.protocol.tau_q();
    const bool split = cfg.protocol.kind() != RampKind::Constant && tq < horizon;
    const double t_mid = split ? tq : horizon;
    const auto& ts = out.energy.times;
    const auto end_it = std::upper_bound(ts.begin(), ts.end(), t_mid);
    const std::size_t n_first = static_cast<std::size_t>(end_it - ts.begin());

    StepControl c1 = ctrl;
    c1.initial_step = t_mid * 1e-6;
    integrate_adaptive(make_rhs(true), y, 0.0, t_mid, c1,
                       std::span<const double>(ts.data(), n_first),
                       [&](std::size_t idx, double, std::span<const double> yy) { record(idx, yy); });
    if (split) {
        StepControl c2 = ctrl;
        c2.initial_step = std::min(horizon - tq, 1.0) * 1e-3;
        integrate_adaptive(make_rhs(false), y, tq, horizon, c2,
                           std::span<const double>(ts.data() + n_first, ts.size() - n_first),
                           [&](std::size_t idx, double, std::span<const double> yy) {
                               record(idx + n_first, yy);
                           });
    }

    for (int i = 0; i < n_out; ++i) {
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(out.norm[i] - 1.0));
        out.max_leakage = std::max(out.max_leakage, out.leakage[i]);
    }
    if (out.max_leakage > 1e-6) {
        const int suggestion = cfg.n_cutoff + std::max(4, cfg.n_cutoff / 2);
        throw CutoffError("evolve_tc: Fock-truncation leakage exceeds 1e-6; retry with n_cutoff >= " +
                              std::to_string(suggestion),
                          suggestion);
    }
    if (out.max_norm_drift > 1e-6)
        throw IntegratorError("evolve_tc: state norm drifted by more than 1e-6; tighten tol");

    out.energy.peak = find_first_peak(out.energy);
    return out;
}

double trace_error_vs_reference(const EnergyTrace& candidate, const EnergyTrace& reference) {
    if (candidate.times.size() != reference.times.size())
        throw std::invalid_argument("trace_error_vs_reference: grids differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < reference.times.size(); ++i) {
        num = std::max(num, std::abs(candidate.e_b[i] - reference.e_b[i]));
        den = std::max(den, reference.e_b[i]);
    }
    if (!(den > 0.0)) throw std::invalid_argument("trace_error_vs_reference: reference is zero");
    return num / den;
}

std::vector<HPPoint> hp_convergence(const TCConfig& base, std::span<const double> spins,
                                    double horizon, int n_out, double tol) {
    base.validate();
    if (spins.empty()) throw std::invalid_argument("hp_convergence: empty spin list");
    if (!std::is_sorted(spins.begin(), spins.end()))
        throw std::invalid_argument("hp_convergence: spins must be ascending");

    const auto bosonic =
        energy_trace(integrate_moments(base.params, base.protocol, horizon, n_out, tol));
    std::vector<HPPoint> out;
    out.reserve(spins.size());
    for (const double s : spins) {
        TCConfig cfg = base;
        cfg.spin = s;
        const auto tc = evolve_tc(cfg, horizon, n_out, tol);
        out.push_back({s, trace_error_vs_reference(tc.energy, bosonic)});
    }
    return out;
}

int required_cutoff(const SystemParams& params, const QuenchProtocol& protocol, double horizon) {
    params.validate();
    if (!(horizon > 0.0)) throw std::domain_error("required_cutoff: horizon must be > 0");
    SystemParams closed = params;
    closed.gamma = 0.0;
    const auto trace = energy_trace(integrate_moments(closed, protocol, horizon, 2001, 1e-9));
    double emax = 0.0;
    for (const double e : trace.e_a) emax = std::max(emax, e);
    return static_cast<int>(std::ceil(4.0 * emax / params.omega0)) + 10;
}

}  // namespace qbattery
