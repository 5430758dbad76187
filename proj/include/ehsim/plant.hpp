#pragma once

#include <stdexcept>
#include <string>

namespace ehsim
{

/// Radicand floor of the orifice equation [Pa]. Keeps the square root real
/// when the load pressure approaches the supply pressure.
inline constexpr double cavitation_floor = 1.0e3;

/// Physical constants of a symmetric cylinder driven by a closed-center
/// servovalve with spool overlap (dead-zone).
struct PlantParams {
    double Ps      = 7.0e6;   ///< supply pressure [Pa]
    double rho     = 850.0;   ///< fluid density [kg/m^3]
    double Cd      = 0.6;     ///< discharge coefficient [-]
    double w       = 2.5e-2;  ///< orifice area gradient [m]
    double Ap      = 3.0e-4;  ///< ram area [m^2]
    double Ctp     = 2.0e-12; ///< total leakage coefficient [m^3/(s Pa)]
    double beta_e  = 700.0e6; ///< effective bulk modulus [Pa]
    double Vt      = 6.0e-5;  ///< total volume under compression [m^3]
    double Mt      = 250.0;   ///< total moving mass [kg]
    double Bp      = 100.0;   ///< viscous damping [N s/m]
    double K       = 75.0;    ///< load spring constant [N/m]
    double delta_l = -1.1;    ///< left dead-zone edge [V]
    double delta_r = 0.9;     ///< right dead-zone edge [V]
    double kv      = 1.0e-5;  ///< valve gain [m/V]

    /// Throws InvalidParameter naming the first offending field.
    void validate() const;

    friend bool operator==(const PlantParams &, const PlantParams &) = default;
};

/// Physical simulation state.
struct PlantState {
    double x  = 0.0; ///< piston position [m]
    double v  = 0.0; ///< piston velocity [m/s]
    double PL = 0.0; ///< load pressure [Pa]

    bool finite() const noexcept;

    friend bool operator==(const PlantState &, const PlantState &) = default;
};

/// Time derivative of a PlantState, same layout.
using PlantRate = PlantState;

/// A parameter outside its admissible range. field() names it.
class InvalidParameter : public std::invalid_argument
{
public:
    InvalidParameter(std::string field, const std::string &rule);

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Raised when the state leaves the finite domain during integration.
class NumericalBlowUp : public std::runtime_error
{
public:
    NumericalBlowUp(const std::string &what, double time);

    /// Simulation time at which the blow-up was detected [s].
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Effective spool displacement after the dead-zone [m].
double dead_zone_output(double u, const PlantParams &p) noexcept;

/// Dead-zone decomposition term: kv (u - d(u)) equals dead_zone_output(u).
double dead_zone_d(double u, const PlantParams &p) noexcept;

/// Load flow through matched symmetric orifices [m^3/s].
/// Throws std::invalid_argument for non-finite inputs.
double load_flow(double spool, double PL, const PlantParams &p);

/// Piston acceleration from the force balance [m/s^2].
double acceleration(const PlantState &s, const PlantParams &p) noexcept;

/// Right-hand side of the 3-state plant ODE with control voltage u.
/// Throws NumericalBlowUp (time = NaN) for a non-finite state.
PlantRate plant_derivatives(const PlantState &s, double u, const PlantParams &p);

} // namespace ehsim
