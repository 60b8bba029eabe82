#include "qbattery/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qbattery {

void SystemParams::validate() const {
    if (!(omega0 > 0.0)) throw std::invalid_argument("SystemParams: omega0 must be > 0");
    if (!(drive >= 0.0)) throw std::invalid_argument("SystemParams: drive amplitude must be >= 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("SystemParams: gamma must be >= 0");
}

QuenchProtocol::QuenchProtocol(RampKind kind, double r, double g_f, double tau_q)
    : kind_(kind), r_(r), g_f_(g_f), tau_q_(tau_q) {
    // g_f = 0 is admitted so the decoupled (free driven charger) limit is
    // expressible; operations that need a coupling period reject it.
    if (!(g_f >= 0.0)) throw std::invalid_argument("QuenchProtocol: g_f must be >= 0");
    if (!(tau_q > 0.0)) throw std::invalid_argument("QuenchProtocol: tau_q must be > 0");
}

QuenchProtocol QuenchProtocol::power_law(double r, double g_f, double tau_q) {
    if (!(r > 0.0)) throw std::invalid_argument("QuenchProtocol: ramp exponent must be > 0");
    return QuenchProtocol(RampKind::PowerLaw, r, g_f, tau_q);
}

QuenchProtocol QuenchProtocol::constant(double g_f, double tau_q) {
    return QuenchProtocol(RampKind::Constant, 0.0, g_f, tau_q);
}

QuenchProtocol QuenchProtocol::step(double g_f, double tau_q) {
    return QuenchProtocol(RampKind::Step, std::numeric_limits<double>::infinity(), g_f, tau_q);
}

double QuenchProtocol::coupling_at(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("coupling_at: t must be >= 0");
    switch (kind_) {
        case RampKind::Constant:
            return g_f_;
        case RampKind::Step:
            return t >= tau_q_ ? g_f_ : 0.0;
        case RampKind::PowerLaw:
            if (t >= tau_q_) return g_f_;
            return g_f_ * std::pow(t / tau_q_, r_);
    }
    return 0.0;
}

double QuenchProtocol::coupling_on_ramp(double t) const {
    if (kind_ == RampKind::Step) return 0.0;
    if (t >= tau_q_) return g_f_;
    return coupling_at(t);
}

double QuenchProtocol::alpha() const {
    switch (kind_) {
        case RampKind::Constant: return 0.0;
        case RampKind::Step: return 1.0;
        case RampKind::PowerLaw: return r_ / (r_ + 1.0);
    }
    return 0.0;
}

double QuenchProtocol::phase_rate() const {
    if (kind_ != RampKind::PowerLaw)
        throw std::domain_error("phase_rate: defined for PowerLaw ramps only");
    return g_f_ / std::pow(tau_q_, r_);
}

double QuenchProtocol::theta(double t) const {
    if (kind_ != RampKind::PowerLaw)
        throw std::domain_error("theta: defined for PowerLaw ramps only");
    if (!(t >= 0.0) || t > tau_q_)
        throw std::domain_error("theta: defined on the ramp 0 <= t <= tau_q only");
    return phase_rate() * std::pow(t, 1.0 + r_);
}

std::string QuenchProtocol::ramp_name() const {
    switch (kind_) {
        case RampKind::Constant: return "constant";
        case RampKind::Step: return "step";
        case RampKind::PowerLaw: return "power";
    }
    return "?";
}

}  // namespace qbattery
