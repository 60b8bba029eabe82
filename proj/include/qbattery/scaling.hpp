#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qbattery/dynamics.hpp"
#include "qbattery/model.hpp"

namespace qbattery {

enum class SweepMethod { Ode, ClosedForm };
enum class RowStatus { Ok, NoPeak };
enum class PeakField { EnergyMax, PowerMax };

struct SweepRow {
    double tau_q = 0.0;
    double t_m = 0.0;
    double e_bm = 0.0;
    double p_bm = 0.0;
    RowStatus status = RowStatus::NoPeak;
    SweepMethod source = SweepMethod::Ode;
};

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int n_points = 0;
};

struct SweepOptions {
    SweepMethod method = SweepMethod::Ode;
    double tol = 1e-10;
    int jobs = 1;
    double horizon = 0.0;  // 0 = default_horizon per point
    int n_out = 0;         // 0 = default_output_points per point
};

// Log-spaced grid from lo to hi inclusive at points_per_decade density.
std::vector<double> log_spaced_grid(double lo, double hi, int points_per_decade);

// One row per tau_q in grid order, independent of worker count.  The ramp
// shape and g_f come from the protocol template; tau_q is substituted per
// point.  Rows whose first peak is not bracketed by the default horizon are
// retried once with a 4x horizon and then reported as failures.  Throws
// SweepError when every point fails.
std::vector<SweepRow> sweep_tauq(const SystemParams& params, const QuenchProtocol& proto_template,
                                 std::span<const double> grid, const SweepOptions& opts = {});

// Ordinary least squares of log(field) against log(tau_q) over Ok rows
// inside [window_lo, window_hi].
ScalingFit fit_power_law(std::span<const SweepRow> rows, PeakField field, double window_lo,
                         double window_hi);

// tau_q of the maximal P_Bm row, refined by three-point log-quadratic
// interpolation; absent when the maximum sits on the grid edge (monotone).
std::optional<double> detect_rolloff(std::span<const SweepRow> rows);

}  // namespace qbattery
