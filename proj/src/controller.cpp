#include "ehsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ehsim
{

ControllerParams ControllerParams::from_lambda(double lambda, double kappa, double phi,
                                               const PlantParams &model)
{
    return {.c0 = lambda * lambda, .c1 = 2.0 * lambda, .kappa = kappa, .phi = phi, .model = model};
}

bool is_hurwitz(double c0, double c1) noexcept
{
    if (!std::isfinite(c0) || !std::isfinite(c1) || c0 <= 0.0) {
        return false;
    }
    const std::complex<double> disc = std::sqrt(std::complex<double>(c1 * c1 - 4.0 * c0));
    const auto r1 = (-c1 + disc) / 2.0;
    const auto r2 = (-c1 - disc) / 2.0;
    return r1.real() < 0.0 && r2.real() < 0.0;
}

void ControllerParams::validate() const
{
    const auto fail = [](const char *field, const char *rule) {
        throw InvalidParameter(field, rule);
    };
    if (!(std::isfinite(c0) && c0 > 0.0)) fail("c0", "must be positive");
    if (!(std::isfinite(c1) && c1 > 0.0)) fail("c1", "must be positive");
    if (!is_hurwitz(c0, c1)) fail("c0", "with c1 does not give a Hurwitz polynomial");
    if (!(std::isfinite(kappa) && kappa > 0.0)) fail("kappa", "must be positive");
    if (!(std::isfinite(phi) && phi > 0.0)) fail("phi", "must be positive");
    model.validate();
}

TrackingError tracking_error(const MeasuredState &m, const ReferencePoint &ref) noexcept
{
    return {.pos = m.x - ref.xd, .vel = m.v - ref.xd_dot, .acc = m.acc - ref.xd_ddot};
}

ModelCoefficients model_coefficients(const PlantParams &m) noexcept
{
    const double hydraulic = 4.0 * m.beta_e / m.Vt;
    return {
        .a0 = hydraulic * m.Ctp * m.K / m.Mt,
        .a1 = m.K / m.Mt + hydraulic * m.Ap * m.Ap / m.Mt + hydraulic * m.Ctp * m.Bp / m.Mt,
        .a2 = m.Bp / m.Mt + hydraulic * m.Ctp,
    };
}

double input_gain_b(const MeasuredState &s, int sign_u, const PlantParams &m) noexcept
{
    const double load_pressure = (m.Mt * s.acc + m.Bp * s.v + m.K * s.x) / m.Ap;
    const double radicand = std::max(cavitation_floor, m.Ps - sign_u * load_pressure);
    return 4.0 * m.beta_e * m.Ap / (m.Vt * m.Mt) * m.Cd * m.w * m.kv * std::sqrt(radicand / m.rho);
}

double combined_error(const TrackingError &err, const ControllerParams &cp) noexcept
{
    return cp.c0 * err.pos + cp.c1 * err.vel + err.acc;
}

double equivalent_control(const MeasuredState &m, const ReferencePoint &ref,
                          const ModelCoefficients &a, double b,
                          const ControllerParams &cp) noexcept
{
    const TrackingError err = tracking_error(m, ref);
    const double numerator = a.a0 * m.x + a.a1 * m.v + a.a2 * m.acc + ref.xd_dddot -
                             cp.c1 * err.acc - cp.c0 * err.vel;
    return numerator / b;
}

double control_law(double u_hat, double d_hat, double e, const ControllerParams &cp) noexcept
{
    return u_hat + d_hat - cp.kappa * e;
}

} // namespace ehsim
