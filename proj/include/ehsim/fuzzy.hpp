#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ehsim
{

/// Zero-order TSK estimator of the dead-zone term d(u) with one input.
///
/// Rule r reads "if u_hat is U_r then d_hat_r = D_r". The fuzzy sets U_r are
/// triangles peaking at centers[r] and reaching zero at the neighbouring
/// centers; the two outermost sets are shoulders that stay at 1 beyond the
/// extreme centers. With this layout the normalized strengths form a
/// partition of unity and at most two neighbouring rules fire.
class FuzzyEstimator
{
public:
    /// Consequents start at zero.
    explicit FuzzyEstimator(std::vector<double> centers);
    FuzzyEstimator(std::vector<double> centers, std::vector<double> consequents);

    /// Central values used by default: {-0.5, -0.1, -0.05, 0, 0.05, 0.1, 0.5} V.
    static std::vector<double> default_centers();

    std::size_t size() const noexcept { return centers_.size(); }
    std::span<const double> centers() const noexcept { return centers_; }
    std::span<const double> consequents() const noexcept { return consequents_; }

    /// Raw firing strength w_r of every rule at u_hat.
    std::vector<double> firing_strengths(double u_hat) const;

    /// Normalized strengths psi_r = w_r / sum(w). Throws std::invalid_argument
    /// for non-finite u_hat.
    std::vector<double> membership(double u_hat) const;

    /// Weighted-average output sum(psi_r D_r) / sum(psi_r).
    double infer(std::span<const double> psi) const;

    /// One forward-Euler step of dD/dt = -rate * e * psi.
    void adapt(double e, std::span<const double> psi, double rate, double dt);

    /// Functional form of adapt().
    [[nodiscard]] FuzzyEstimator adapted(double e, std::span<const double> psi, double rate,
                                         double dt) const;

    friend bool operator==(const FuzzyEstimator &, const FuzzyEstimator &) = default;

private:
    std::vector<double> centers_;
    std::vector<double> consequents_;
};

} // namespace ehsim
