#pragma once

#include "ehsim/controller.hpp"
#include "ehsim/fuzzy.hpp"
#include "ehsim/plant.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ehsim
{

/// Sinusoidal position reference amp * sin(omega t).
struct ReferenceTrajectory {
    double amplitude = 0.5; ///< [m]
    double omega     = 0.1; ///< [rad/s]
};

ReferencePoint reference_at(double t, const ReferenceTrajectory &ref) noexcept;

enum class SupplyPressureMode {
    constant, ///< plant keeps its configured Ps
    varying,  ///< Ps = 7 MPa (1 + 0.2 sin(x)), x the piston position
};

std::string_view to_string(SupplyPressureMode mode) noexcept;
/// Accepts "constant"/"constant-ps" and "varying"/"varying-ps".
SupplyPressureMode parse_supply_mode(std::string_view text);

double supply_pressure(SupplyPressureMode mode, double x, double constant_ps) noexcept;

/// Thresholds of the closed-loop stability monitor.
struct MonitorConfig {
    double window             = 10.0; ///< RMS window length [s]
    double tolerance          = 1.05; ///< allowed growth factor between consecutive windows
    double e_threshold        = 0.1;  ///< bound on mean |e| over the final window
    double transient_fraction = 0.25; ///< leading share of the run excluded from metrics
};

struct Scenario {
    double duration   = 120.0;
    double dt_plant   = 1.0 / 800.0;
    double dt_control = 1.0 / 400.0;
    ReferenceTrajectory reference{};
    SupplyPressureMode supply_mode = SupplyPressureMode::constant;
    PlantState initial{};
    /// Disables adaptation and forces d_hat = 0 (uncompensated baseline).
    bool freeze_adaptation = false;
    MonitorConfig monitor{};

    /// Number of plant substeps per control period.
    std::size_t substeps() const;
    /// Number of control samples in the run.
    std::size_t samples() const;
    /// Throws InvalidParameter naming the offending field.
    void validate() const;
};

/// One control sample. Plant quantities are taken at the start of the period.
struct SimRow {
    double t     = 0.0;
    double x     = 0.0;
    double xd    = 0.0;
    double xerr  = 0.0;
    double v     = 0.0;
    double PL    = 0.0;
    double u     = 0.0;
    double uhat  = 0.0;
    double d     = 0.0; ///< dead-zone term d(u) of the applied voltage
    double dhat  = 0.0; ///< estimate d_hat(u_hat)
    double e     = 0.0;
    double Ps    = 0.0;

    friend bool operator==(const SimRow &, const SimRow &) = default;
};

struct MonitorReport {
    std::size_t window_violations    = 0; ///< RMS(e) grew across consecutive windows
    std::size_t windows_checked      = 0;
    std::size_t final_error_violations = 0; ///< 1 when final-window mean |e| exceeds threshold
    std::size_t sign_violations      = 0; ///< samples where sgn(d_hat) disagrees with the active edge
    std::size_t sign_samples         = 0;
    std::vector<double> window_rms;
    double final_mean_abs_e = 0.0;
};

struct SimMetrics {
    double rms_xerr_first_quarter = 0.0;
    double rms_xerr_final_quarter = 0.0;
    double max_abs_xerr_post_transient = 0.0;
    double mean_abs_dhat_err_first_quarter = 0.0;
    double mean_abs_dhat_err_final_quarter = 0.0;
    /// Share of post-transient samples with e^2 non-increasing from the previous sample.
    double e2_nonincreasing_fraction = 1.0;
    MonitorReport monitor{};
};

struct SimResult {
    Scenario scenario{};
    std::vector<SimRow> rows;
    FuzzyEstimator final_estimator{FuzzyEstimator::default_centers()};
    SimMetrics metrics{};
};

/// Classical RK4 step with u held, followed by the |PL| <= Ps clamp.
/// Throws NumericalBlowUp carrying `time` on a non-finite result.
PlantState rk4_step(const PlantState &s, double u, double dt, const PlantParams &p,
                    double time = 0.0);

/// Closed-loop simulation: controller at dt_control with zero-order hold,
/// plant integrated with RK4 at dt_plant. Deterministic.
SimResult run(const Scenario &scenario, const PlantParams &plant, const ControllerParams &cp,
              const FuzzyEstimator &estimator);

MonitorReport stability_monitor(std::span<const SimRow> rows, const MonitorConfig &cfg,
                                double duration, std::span<const double> centers);

SimMetrics compute_metrics(std::span<const SimRow> rows, const MonitorConfig &cfg,
                           double duration, std::span<const double> centers);

} // namespace ehsim
