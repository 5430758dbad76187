#pragma once

// Test-only reference solution of the valve-closed plant. With u = 0 the
// spool sits in the dead band, QL = 0, and the plant is the linear system
//   x' = v
//   v' = (Ap PL - Bp v - K x) / Mt
//   PL' = -(4 beta_e / Vt) (Ap v + Ctp PL)
// whose exact solution is exp(A t) s0.

#include "ehsim/plant.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace ehsim::testing
{

inline Eigen::Matrix3d closed_valve_matrix(const PlantParams &p)
{
    const double h = 4.0 * p.beta_e / p.Vt;
    Eigen::Matrix3d a;
    a << 0.0, 1.0, 0.0,
        -p.K / p.Mt, -p.Bp / p.Mt, p.Ap / p.Mt,
        0.0, -h * p.Ap, -h * p.Ctp;
    return a;
}

/// exp(A t) s0, evaluated on a rescaled pressure coordinate PL / sigma so the
/// coupling entries have comparable magnitude.
inline PlantState closed_valve_solution(const PlantState &s0, double t, const PlantParams &p)
{
    const double sigma = std::sqrt(4.0 * p.beta_e / p.Vt * p.Mt);
    const Eigen::Vector3d scale(1.0, 1.0, sigma);
    const Eigen::Matrix3d balanced =
        scale.cwiseInverse().asDiagonal() * closed_valve_matrix(p) * scale.asDiagonal();
    const Eigen::Matrix3d phi = (balanced * t).exp();
    const Eigen::Vector3d z = phi * Eigen::Vector3d(s0.x, s0.v, s0.PL / sigma);
    return {z(0), z(1), z(2) * sigma};
}

} // namespace ehsim::testing
