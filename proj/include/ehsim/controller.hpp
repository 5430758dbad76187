#pragma once

#include "ehsim/plant.hpp"

namespace ehsim
{

struct ControllerParams {
    double c0    = 64.0; ///< position-error weight [1/s^2]
    double c1    = 16.0; ///< velocity-error weight [1/s]
    double kappa = 1.0;  ///< feedback gain
    double phi   = 0.5;  ///< adaptation rate
    PlantParams model{}; ///< controller's internal copy of the plant constants

    /// Gains for the critically damped error polynomial (p + lambda)^2.
    static ControllerParams from_lambda(double lambda, double kappa, double phi,
                                        const PlantParams &model);

    /// Throws InvalidParameter naming the offending field.
    void validate() const;

    friend bool operator==(const ControllerParams &, const ControllerParams &) = default;
};

/// True when both roots of p^2 + c1 p + c0 have strictly negative real part.
bool is_hurwitz(double c0, double c1) noexcept;

/// Desired position and its first three derivatives.
struct ReferencePoint {
    double xd       = 0.0;
    double xd_dot   = 0.0;
    double xd_ddot  = 0.0;
    double xd_dddot = 0.0;
};

/// Measured (x, x', x'').
struct MeasuredState {
    double x   = 0.0;
    double v   = 0.0;
    double acc = 0.0;
};

/// Tracking error x - xd and its first two derivatives.
struct TrackingError {
    double pos = 0.0;
    double vel = 0.0;
    double acc = 0.0;
};

TrackingError tracking_error(const MeasuredState &m, const ReferencePoint &ref) noexcept;

/// Coefficients of the reduced third-order model x''' = -a.x + b (u - d(u)).
struct ModelCoefficients {
    double a0 = 0.0; ///< [1/s^3]
    double a1 = 0.0; ///< [1/s^2]
    double a2 = 0.0; ///< [1/s]
};

ModelCoefficients model_coefficients(const PlantParams &model) noexcept;

/// State-dependent input gain b > 0 [m/(s^3 V)]. sign_u is the sign assumed
/// for the control voltage in the orifice term.
double input_gain_b(const MeasuredState &m, int sign_u, const PlantParams &model) noexcept;

/// e = c0 x~ + c1 x~' + x~''.
double combined_error(const TrackingError &err, const ControllerParams &cp) noexcept;

/// Model-inverting control u_hat = (a.x + xd''' - c1 x~'' - c0 x~') / b.
double equivalent_control(const MeasuredState &m, const ReferencePoint &ref,
                          const ModelCoefficients &a, double b,
                          const ControllerParams &cp) noexcept;

/// u = u_hat + d_hat - kappa e.
double control_law(double u_hat, double d_hat, double e, const ControllerParams &cp) noexcept;

} // namespace ehsim
