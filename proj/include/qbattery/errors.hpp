#pragma once

#include <stdexcept>
#include <string>

namespace qbattery {

// Command-line / configuration misuse; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested closed form does not exist for these parameters.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form peak lies outside its validity regime; caller must use the ODE path.
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StiffnessError : std::runtime_error {
    StiffnessError(const std::string& msg, double t_fail) : std::runtime_error(msg), t(t_fail) {}
    double t;
};

struct DivergenceError : std::runtime_error {
    DivergenceError(const std::string& msg, double t_fail) : std::runtime_error(msg), t(t_fail) {}
    double t;
};

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fock truncation too small; carries a usable replacement.
struct CutoffError : std::runtime_error {
    CutoffError(const std::string& msg, int suggested) : std::runtime_error(msg), suggested_cutoff(suggested) {}
    int suggested_cutoff;
};

struct IntegratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qbattery
