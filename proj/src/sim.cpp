#include "ehsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ehsim
{

namespace
{

int sgn(double value) noexcept
{
    return (value > 0.0) - (value < 0.0);
}

PlantState axpy(const PlantState &s, double h, const PlantRate &k) noexcept
{
    return {s.x + h * k.x, s.v + h * k.v, s.PL + h * k.PL};
}

double rms(std::span<const SimRow> rows, double SimRow::*field)
{
    if (rows.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto &row : rows) {
        acc += row.*field * row.*field;
    }
    return std::sqrt(acc / static_cast<double>(rows.size()));
}

/// Rows with t in [begin, end).
std::span<const SimRow> slice(std::span<const SimRow> rows, double begin, double end)
{
    const auto first = std::lower_bound(rows.begin(), rows.end(), begin,
                                        [](const SimRow &r, double t) { return r.t < t; });
    const auto last = std::lower_bound(first, rows.end(), end,
                                       [](const SimRow &r, double t) { return r.t < t; });
    return {first, last};
}

double mean_abs_estimate_error(std::span<const SimRow> rows)
{
    if (rows.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto &row : rows) {
        acc += std::abs(row.dhat - row.d);
    }
    return acc / static_cast<double>(rows.size());
}

} // namespace

ReferencePoint reference_at(double t, const ReferenceTrajectory &ref) noexcept
{
    const double a = ref.amplitude;
    const double w = ref.omega;
    const double s = std::sin(w * t);
    const double c = std::cos(w * t);
    return {
        .xd = a * s,
        .xd_dot = a * w * c,
        .xd_ddot = -a * w * w * s,
        .xd_dddot = -a * w * w * w * c,
    };
}

std::string_view to_string(SupplyPressureMode mode) noexcept
{
    return mode == SupplyPressureMode::constant ? "constant" : "varying";
}

SupplyPressureMode parse_supply_mode(std::string_view text)
{
    if (text == "constant" || text == "constant-ps") {
        return SupplyPressureMode::constant;
    }
    if (text == "varying" || text == "varying-ps") {
        return SupplyPressureMode::varying;
    }
    throw std::invalid_argument("unknown supply pressure mode '" + std::string(text) + "'");
}

double supply_pressure(SupplyPressureMode mode, double x, double constant_ps) noexcept
{
    if (mode == SupplyPressureMode::constant) {
        return constant_ps;
    }
    return 7.0e6 * (1.0 + 0.2 * std::sin(x));
}

std::size_t Scenario::substeps() const
{
    return static_cast<std::size_t>(std::llround(dt_control / dt_plant));
}

std::size_t Scenario::samples() const
{
    return static_cast<std::size_t>(std::llround(duration / dt_control));
}

void Scenario::validate() const
{
    const auto fail = [](const char *field, const char *rule) {
        throw InvalidParameter(field, rule);
    };
    if (!(std::isfinite(duration) && duration >= 0.0)) fail("duration", "must be non-negative");
    if (!(std::isfinite(dt_plant) && dt_plant > 0.0)) fail("dt_plant", "must be positive");
    if (!(std::isfinite(dt_control) && dt_control > 0.0)) fail("dt_control", "must be positive");
    const double ratio = dt_control / dt_plant;
    if (std::llround(ratio) < 1 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
        fail("dt_control", "must be a positive integer multiple of dt_plant");
    }
    if (!std::isfinite(reference.amplitude)) fail("amplitude", "must be finite");
    if (!std::isfinite(reference.omega)) fail("omega", "must be finite");
    if (!initial.finite()) fail("x0", "initial state must be finite");
    if (!(monitor.window > 0.0)) fail("monitor_window", "must be positive");
    if (!(monitor.tolerance >= 1.0)) fail("monitor_tolerance", "must be at least 1");
    if (!(monitor.e_threshold > 0.0)) fail("monitor_e_threshold", "must be positive");
    if (!(monitor.transient_fraction >= 0.0 && monitor.transient_fraction < 1.0)) {
        fail("transient_fraction", "must lie in [0, 1)");
    }
}

PlantState rk4_step(const PlantState &s, double u, double dt, const PlantParams &p, double time)
{
    PlantState next;
    try {
        const PlantRate k1 = plant_derivatives(s, u, p);
        const PlantRate k2 = plant_derivatives(axpy(s, 0.5 * dt, k1), u, p);
        const PlantRate k3 = plant_derivatives(axpy(s, 0.5 * dt, k2), u, p);
        const PlantRate k4 = plant_derivatives(axpy(s, dt, k3), u, p);
        next = {
            s.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
            s.PL + dt / 6.0 * (k1.PL + 2.0 * k2.PL + 2.0 * k3.PL + k4.PL),
        };
    } catch (const NumericalBlowUp &) {
        throw NumericalBlowUp("plant state diverged at t = " + std::to_string(time) + " s", time);
    }
    if (!next.finite()) {
        throw NumericalBlowUp("plant state diverged at t = " + std::to_string(time) + " s", time);
    }
    next.PL = std::clamp(next.PL, -p.Ps, p.Ps);
    return next;
}

SimResult run(const Scenario &scenario, const PlantParams &plant, const ControllerParams &cp,
              const FuzzyEstimator &estimator)
{
    scenario.validate();
    plant.validate();
    cp.validate();

    SimResult result;
    result.scenario = scenario;
    FuzzyEstimator est = estimator;

    const ModelCoefficients coeffs = model_coefficients(cp.model);
    const std::size_t samples = scenario.samples();
    const std::size_t substeps = scenario.substeps();
    PlantState state = scenario.initial;
    int previous_sign = 0;

    result.rows.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) * scenario.dt_control;

        PlantParams actual = plant;
        actual.Ps = supply_pressure(scenario.supply_mode, state.x, plant.Ps);

        const MeasuredState meas{state.x, state.v, acceleration(state, actual)};
        const ReferencePoint ref = reference_at(t, scenario.reference);
        const TrackingError err = tracking_error(meas, ref);
        const double e = combined_error(err, cp);
        const double b = input_gain_b(meas, previous_sign, cp.model);
        const double u_hat = equivalent_control(meas, ref, coeffs, b, cp);
        if (!std::isfinite(u_hat) || !std::isfinite(e)) {
            throw NumericalBlowUp("controller output diverged at t = " + std::to_string(t) + " s",
                                  t);
        }

        const auto psi = est.membership(u_hat);
        const double d_hat = scenario.freeze_adaptation ? 0.0 : est.infer(psi);
        const double u = control_law(u_hat, d_hat, e, cp);
        if (!scenario.freeze_adaptation) {
            est.adapt(e, psi, cp.phi, scenario.dt_control);
        }

        result.rows.push_back({
            .t = t,
            .x = state.x,
            .xd = ref.xd,
            .xerr = err.pos,
            .v = state.v,
            .PL = state.PL,
            .u = u,
            .uhat = u_hat,
            .d = dead_zone_d(u, actual),
            .dhat = d_hat,
            .e = e,
            .Ps = actual.Ps,
        });

        for (std::size_t j = 0; j < substeps; ++j) {
            const double t_sub = t + static_cast<double>(j) * scenario.dt_plant;
            actual.Ps = supply_pressure(scenario.supply_mode, state.x, plant.Ps);
            state = rk4_step(state, u, scenario.dt_plant, actual, t_sub);
        }
        previous_sign = sgn(u);
    }

    result.final_estimator = est;
    result.metrics = compute_metrics(result.rows, scenario.monitor, scenario.duration,
                                     est.centers());
    return result;
}

MonitorReport stability_monitor(std::span<const SimRow> rows, const MonitorConfig &cfg,
                                double duration, std::span<const double> centers)
{
    MonitorReport report;
    if (rows.empty()) {
        return report;
    }

    // (i) windowed RMS of e must not grow after the transient.
    const double start = cfg.transient_fraction * duration;
    for (double begin = start; begin + cfg.window <= duration + 1e-9; begin += cfg.window) {
        report.window_rms.push_back(rms(slice(rows, begin, begin + cfg.window), &SimRow::e));
    }
    for (std::size_t i = 1; i < report.window_rms.size(); ++i) {
        ++report.windows_checked;
        if (report.window_rms[i] > cfg.tolerance * report.window_rms[i - 1]) {
            ++report.window_violations;
        }
    }

    // (ii) residual combined error over the final window.
    const auto final_window = slice(rows, std::max(0.0, duration - cfg.window), duration + 1.0);
    if (!final_window.empty()) {
        double acc = 0.0;
        for (const auto &row : final_window) {
            acc += std::abs(row.e);
        }
        report.final_mean_abs_e = acc / static_cast<double>(final_window.size());
        if (report.final_mean_abs_e > cfg.e_threshold) {
            report.final_error_violations = 1;
        }
    }

    // (iii) outside the innermost rules the estimate must carry the sign of
    // the dead-zone edge on the same side.
    double inner = 0.0;
    for (const double c : centers) {
        if (c != 0.0 && (inner == 0.0 || std::abs(c) < inner)) {
            inner = std::abs(c);
        }
    }
    for (const auto &row : final_window) {
        if (std::abs(row.uhat) <= inner) {
            continue;
        }
        ++report.sign_samples;
        if (sgn(row.dhat) != sgn(row.uhat)) {
            ++report.sign_violations;
        }
    }
    return report;
}

SimMetrics compute_metrics(std::span<const SimRow> rows, const MonitorConfig &cfg,
                           double duration, std::span<const double> centers)
{
    SimMetrics m;
    const auto first = slice(rows, 0.0, 0.25 * duration);
    const auto last = slice(rows, 0.75 * duration, duration + 1.0);
    const auto post = slice(rows, cfg.transient_fraction * duration, duration + 1.0);

    m.rms_xerr_first_quarter = rms(first, &SimRow::xerr);
    m.rms_xerr_final_quarter = rms(last, &SimRow::xerr);
    for (const auto &row : post) {
        m.max_abs_xerr_post_transient = std::max(m.max_abs_xerr_post_transient, std::abs(row.xerr));
    }
    m.mean_abs_dhat_err_first_quarter = mean_abs_estimate_error(first);
    m.mean_abs_dhat_err_final_quarter = mean_abs_estimate_error(last);

    if (post.size() > 1) {
        std::size_t ok = 0;
        for (std::size_t i = 1; i < post.size(); ++i) {
            ok += post[i].e * post[i].e <= post[i - 1].e * post[i - 1].e ? 1 : 0;
        }
        m.e2_nonincreasing_fraction = static_cast<double>(ok) / static_cast<double>(post.size() - 1);
    }
    m.monitor = stability_monitor(rows, cfg, duration, centers);
    return m;
}

} // namespace ehsim
