#include "ehsim/plant.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ehsim
{

namespace
{

void require(bool ok, const char *field, const char *rule)
{
    if (!ok) {
        throw InvalidParameter(field, rule);
    }
}

int sgn(double value) noexcept
{
    return (value > 0.0) - (value < 0.0);
}

} // namespace

void PlantParams::validate() const
{
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    const auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
    require(positive(Ps), "Ps", "must be positive");
    require(positive(rho), "rho", "must be positive");
    require(positive(Cd), "Cd", "must be positive");
    require(positive(w), "w", "must be positive");
    require(positive(Ap), "Ap", "must be positive");
    require(non_negative(Ctp), "Ctp", "must be non-negative");
    require(positive(beta_e), "beta_e", "must be positive");
    require(positive(Vt), "Vt", "must be positive");
    require(positive(Mt), "Mt", "must be positive");
    require(non_negative(Bp), "Bp", "must be non-negative");
    require(non_negative(K), "K", "must be non-negative");
    require(std::isfinite(delta_l) && delta_l < 0.0, "delta_l", "must be negative");
    require(std::isfinite(delta_r) && delta_r > 0.0, "delta_r", "must be positive");
    require(positive(kv), "kv", "must be positive");
}

bool PlantState::finite() const noexcept
{
    return std::isfinite(x) && std::isfinite(v) && std::isfinite(PL);
}

InvalidParameter::InvalidParameter(std::string field, const std::string &rule)
    : std::invalid_argument(field + " " + rule), field_(std::move(field))
{
}

NumericalBlowUp::NumericalBlowUp(const std::string &what, double time)
    : std::runtime_error(what), time_(time)
{
}

double dead_zone_output(double u, const PlantParams &p) noexcept
{
    if (u <= p.delta_l) {
        return p.kv * (u - p.delta_l);
    }
    if (u >= p.delta_r) {
        return p.kv * (u - p.delta_r);
    }
    return 0.0;
}

double dead_zone_d(double u, const PlantParams &p) noexcept
{
    return std::clamp(u, p.delta_l, p.delta_r);
}

double load_flow(double spool, double PL, const PlantParams &p)
{
    if (!std::isfinite(spool) || !std::isfinite(PL)) {
        throw std::invalid_argument("load_flow: non-finite input");
    }
    const double radicand = std::max(cavitation_floor, p.Ps - sgn(spool) * PL);
    return p.Cd * p.w * spool * std::sqrt(radicand / p.rho);
}

double acceleration(const PlantState &s, const PlantParams &p) noexcept
{
    return (p.Ap * s.PL - p.Bp * s.v - p.K * s.x) / p.Mt;
}

PlantRate plant_derivatives(const PlantState &s, double u, const PlantParams &p)
{
    if (!s.finite()) {
        throw NumericalBlowUp("plant state is not finite", std::nan(""));
    }
    const double flow = load_flow(dead_zone_output(u, p), s.PL, p);
    const double stiffness = 4.0 * p.beta_e / p.Vt;
    return {
        .x = s.v,
        .v = acceleration(s, p),
        .PL = stiffness * (flow - p.Ap * s.v - p.Ctp * s.PL),
    };
}

} // namespace ehsim
