#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbattery/model.hpp"

namespace qbattery::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Fully resolved run configuration: defaults < config file < flags.
// Every output artifact embeds resolved_kv() verbatim so a run can be
// reproduced from its own header.
struct RunConfig {
    std::string command;  // simulate | sweep | tc | analytic

    // physical parameters
    double omega0 = 1.0;
    double f = 0.01;
    double gf = 1.0;
    std::vector<double> gamma_list{0.0};  // >1 entry = overlay series
    std::string ramp = "power";           // power | step | constant
    double r = 1.0;
    std::vector<double> tauq_list{100.0};  // >1 entry = overlay series (simulate)

    // numerics
    double horizon = 0.0;  // 0 = default_horizon
    double tol = 1e-10;
    int nout = 0;  // 0 = automatic
    int jobs = 1;

    // sweep
    double tauq_min = 0.0;  // 0 = 10 pi / gf
    double tauq_max = 1e4;
    int ppd = 12;
    std::string method = "ode";  // ode | closed
    bool fit = false;
    double fit_min = 0.0;  // 0 = sweep window edge
    double fit_max = 0.0;

    // tc
    std::vector<double> s_list{4.0, 8.0, 16.0, 32.0};
    int ncutoff = 0;  // 0 = required_cutoff
    std::string outdir = ".";

    // analytic
    std::string quantity;
    double t_eval = 0.0;
    bool t_eval_set = false;

    // output
    std::string out = "-";
    std::string plot;

    QuenchProtocol protocol(double tau_q) const;
    double resolved_gamma() const { return gamma_list.at(0); }

    // deterministic, fixed-order key/value view for artifact headers
    std::vector<std::pair<std::string, std::string>> resolved_kv() const;
};

// Parses argv (subcommand + flags), then merges a JSON config file when
// --config is present: explicit flags win over file values, file values win
// over defaults.  Throws UsageError for malformed input.
RunConfig parse_command_line(int argc, const char* const* argv);

}  // namespace qbattery::cli
