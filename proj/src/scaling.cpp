#include "qbattery/scaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qbattery/analytic.hpp"
#include "qbattery/errors.hpp"

namespace qbattery {
namespace {

QuenchProtocol with_tau(const QuenchProtocol& proto, double tau_q) {
    switch (proto.kind()) {
        case RampKind::PowerLaw:
            return QuenchProtocol::power_law(proto.ramp_exponent(), proto.g_f(), tau_q);
        case RampKind::Constant:
            return QuenchProtocol::constant(proto.g_f(), tau_q);
        case RampKind::Step:
            return QuenchProtocol::step(proto.g_f(), tau_q);
    }
    throw std::logic_error("with_tau: unknown ramp kind");
}

SweepRow run_point_ode(const SystemParams& params, const QuenchProtocol& proto,
                       const SweepOptions& opts) {
    SweepRow row;
    row.tau_q = proto.tau_q();
    row.source = SweepMethod::Ode;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const double scale = attempt == 0 ? 1.0 : 4.0;
        const double horizon =
            (opts.horizon > 0.0 ? opts.horizon : default_horizon(proto)) * scale;
        const int n_out =
            opts.n_out > 0 ? opts.n_out : default_output_points(proto, horizon);
        const auto traj = integrate_moments(params, proto, horizon, n_out, opts.tol);
        const auto trace = energy_trace(traj);
        if (trace.peak) {
            row.t_m = trace.peak->t_m;
            row.e_bm = trace.peak->e_bm;
            row.p_bm = trace.peak->p_bm;
            row.status = RowStatus::Ok;
            return row;
        }
    }
    row.status = RowStatus::NoPeak;
    return row;
}

SweepRow run_point_closed(const SystemParams& params, const QuenchProtocol& proto) {
    SweepRow row;
    row.tau_q = proto.tau_q();
    row.source = SweepMethod::ClosedForm;
    if (proto.kind() == RampKind::Constant) {
        const double g = proto.g_f();
        row.t_m = std::numbers::pi / g;
        row.e_bm = 4.0 * params.omega0 * params.drive * params.drive / (g * g);
        row.p_bm = row.e_bm / row.t_m;
        row.status = RowStatus::Ok;
        return row;
    }
    const auto pk = peak_prediction(params, proto);
    row.t_m = pk.t_m;
    row.e_bm = pk.e_bm;
    row.p_bm = pk.p_bm;
    row.status = RowStatus::Ok;
    return row;
}

}  // namespace

std::vector<double> log_spaced_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi > 0.0) || points_per_decade < 1)
        throw std::invalid_argument("log_spaced_grid: need lo, hi > 0 and density >= 1");
    std::vector<double> grid;
    if (hi < lo) return grid;
    const double l0 = std::log10(lo);
    const double l1 = std::log10(hi);
    const int n = static_cast<int>(std::floor((l1 - l0) * points_per_decade + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) grid.push_back(std::pow(10.0, l0 + static_cast<double>(i) / points_per_decade));
    if (grid.empty() || grid.back() < hi * (1.0 - 1e-12)) grid.push_back(hi);
    return grid;
}

std::vector<SweepRow> sweep_tauq(const SystemParams& params, const QuenchProtocol& proto_template,
                                 std::span<const double> grid, const SweepOptions& opts) {
    params.validate();
    if (grid.size() < 3) throw std::invalid_argument("sweep_tauq: grid needs >= 3 points");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("sweep_tauq: grid must be sorted ascending");
    if (opts.method == SweepMethod::ClosedForm && params.gamma != 0.0)
        throw UnsupportedError("sweep_tauq: closed-form source requires gamma = 0");

    std::vector<SweepRow> rows(grid.size());
    const int jobs = std::max(1, opts.jobs);
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mu;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                const auto proto = with_tau(proto_template, grid[i]);
                rows[i] = opts.method == SweepMethod::Ode ? run_point_ode(params, proto, opts)
                                                          : run_point_closed(params, proto);
            } catch (...) {
                std::scoped_lock lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    if (std::all_of(rows.begin(), rows.end(),
                    [](const SweepRow& r) { return r.status != RowStatus::Ok; }))
        throw SweepError("sweep_tauq: no point produced a detectable peak");
    return rows;
}

ScalingFit fit_power_law(std::span<const SweepRow> rows, PeakField field, double window_lo,
                         double window_hi) {
    std::vector<double> lx, ly;
    for (const auto& r : rows) {
        if (r.status != RowStatus::Ok) continue;
        if (r.tau_q < window_lo || r.tau_q > window_hi) continue;
        const double v = field == PeakField::EnergyMax ? r.e_bm : r.p_bm;
        if (!(v > 0.0)) continue;
        lx.push_back(std::log(r.tau_q));
        ly.push_back(std::log(v));
    }
    const int n = static_cast<int>(lx.size());
    if (n < 3) throw FitError("fit_power_law: fewer than 3 usable rows in the window");

    double sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw FitError("fit_power_law: degenerate window (single abscissa)");
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (int i = 0; i < n; ++i) {
        const double d = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += d * d;
    }
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;
    fit.n_points = n;
    return fit;
}

std::optional<double> detect_rolloff(std::span<const SweepRow> rows) {
    std::vector<const SweepRow*> ok;
    for (const auto& r : rows)
        if (r.status == RowStatus::Ok && r.p_bm > 0.0) ok.push_back(&r);
    if (ok.size() < 3) return std::nullopt;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < ok.size(); ++i)
        if (ok[i]->p_bm > ok[imax]->p_bm) imax = i;
    if (imax == 0 || imax + 1 == ok.size()) return std::nullopt;  // monotone to the edge
    const double x0 = std::log(ok[imax - 1]->tau_q), x1 = std::log(ok[imax]->tau_q),
                 x2 = std::log(ok[imax + 1]->tau_q);
    const double y0 = std::log(ok[imax - 1]->p_bm), y1 = std::log(ok[imax]->p_bm),
                 y2 = std::log(ok[imax + 1]->p_bm);
    // vertex of the parabola through three (possibly non-uniform) log points
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double curv = (d2 - d1) / (x2 - x0);
    if (!(curv < 0.0)) return std::exp(x1);
    const double xv = 0.5 * (x0 + x1 - d1 / curv);
    return std::exp(std::clamp(xv, x0, x2));
}

}  // namespace qbattery
