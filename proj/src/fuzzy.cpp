#include "ehsim/fuzzy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace ehsim
{

FuzzyEstimator::FuzzyEstimator(std::vector<double> centers)
    : FuzzyEstimator(centers, std::vector<double>(centers.size(), 0.0))
{
}

FuzzyEstimator::FuzzyEstimator(std::vector<double> centers, std::vector<double> consequents)
    : centers_(std::move(centers)), consequents_(std::move(consequents))
{
    if (centers_.size() < 2) {
        throw std::invalid_argument("fuzzy estimator needs at least two centers");
    }
    if (consequents_.size() != centers_.size()) {
        throw std::invalid_argument("fuzzy estimator: one consequent per center required");
    }
    for (std::size_t r = 0; r < centers_.size(); ++r) {
        if (!std::isfinite(centers_[r]) || !std::isfinite(consequents_[r])) {
            throw std::invalid_argument("fuzzy estimator: non-finite center or consequent");
        }
        if (r > 0 && !(centers_[r] > centers_[r - 1])) {
            throw std::invalid_argument("fuzzy estimator: centers must be strictly increasing");
        }
    }
}

std::vector<double> FuzzyEstimator::default_centers()
{
    return {-0.50, -0.10, -0.05, 0.00, 0.05, 0.10, 0.50};
}

std::vector<double> FuzzyEstimator::firing_strengths(double u_hat) const
{
    if (!std::isfinite(u_hat)) {
        throw std::invalid_argument("membership: non-finite input");
    }
    const std::size_t n = centers_.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double c = centers_[r];
        if (u_hat <= c) {
            if (r == 0) {
                w[r] = 1.0;
            } else if (u_hat > centers_[r - 1]) {
                w[r] = (u_hat - centers_[r - 1]) / (c - centers_[r - 1]);
            }
        } else {
            if (r == n - 1) {
                w[r] = 1.0;
            } else if (u_hat < centers_[r + 1]) {
                w[r] = (centers_[r + 1] - u_hat) / (centers_[r + 1] - c);
            }
        }
    }
    return w;
}

std::vector<double> FuzzyEstimator::membership(double u_hat) const
{
    auto psi = firing_strengths(u_hat);
    const double total = std::accumulate(psi.begin(), psi.end(), 0.0);
    for (auto &value : psi) {
        value /= total;
    }
    return psi;
}

double FuzzyEstimator::infer(std::span<const double> psi) const
{
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t r = 0; r < consequents_.size(); ++r) {
        weighted += psi[r] * consequents_[r];
        total += psi[r];
    }
    return weighted / total;
}

void FuzzyEstimator::adapt(double e, std::span<const double> psi, double rate, double dt)
{
    const double step = rate * e * dt;
    for (std::size_t r = 0; r < consequents_.size(); ++r) {
        if (psi[r] > 0.0) {
            consequents_[r] -= step * psi[r];
        }
    }
}

FuzzyEstimator FuzzyEstimator::adapted(double e, std::span<const double> psi, double rate,
                                       double dt) const
{
    FuzzyEstimator next = *this;
    next.adapt(e, psi, rate, dt);
    return next;
}

} // namespace ehsim
