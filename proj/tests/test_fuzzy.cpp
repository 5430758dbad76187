#include "ehsim/fuzzy.hpp"
#include "fuzzy_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

using namespace ehsim;

namespace
{

std::vector<double> unit(std::size_t n, std::size_t active)
{
    std::vector<double> psi(n, 0.0);
    psi[active] = 1.0;
    return psi;
}

} // namespace

TEST_SUITE("fuzzy")
{
    TEST_CASE("construction checks")
    {
        CHECK_THROWS_AS(FuzzyEstimator({0.0}), std::invalid_argument);
        CHECK_THROWS_AS(FuzzyEstimator({0.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(FuzzyEstimator({0.1, -0.1}), std::invalid_argument);
        CHECK_THROWS_AS(FuzzyEstimator({-1.0, 1.0}, {0.0}), std::invalid_argument);
        const FuzzyEstimator est(FuzzyEstimator::default_centers());
        CHECK(est.size() == 7);
        for (double d : est.consequents()) {
            CHECK(d == 0.0);
        }
    }

    TEST_CASE("membership at reference points")
    {
        const FuzzyEstimator est(FuzzyEstimator::default_centers());
        CHECK(est.membership(0.0) == std::vector<double>{0, 0, 0, 1, 0, 0, 0});
        CHECK(est.membership(-2.0) == std::vector<double>{1, 0, 0, 0, 0, 0, 0});
        CHECK(est.membership(3.0) == std::vector<double>{0, 0, 0, 0, 0, 0, 1});
        const auto mid = est.membership(0.075);
        CHECK(mid[4] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(mid[5] == doctest::Approx(0.5).epsilon(1e-12));
        for (std::size_t r : {0u, 1u, 2u, 3u, 6u}) {
            CHECK(mid[r] == 0.0);
        }
        CHECK_THROWS_AS(est.membership(std::numeric_limits<double>::quiet_NaN()),
                        std::invalid_argument);
    }

    TEST_CASE("partition of unity and locality over a dense sweep")
    {
        const FuzzyEstimator est(FuzzyEstimator::default_centers());
        for (int i = 0; i <= 20000; ++i) {
            const double u = -2.2 + 4.4 * i / 20000.0;
            const auto psi = est.membership(u);
            const double total = std::accumulate(psi.begin(), psi.end(), 0.0);
            REQUIRE(std::abs(total - 1.0) < 1e-12);
            std::size_t first = psi.size();
            std::size_t count = 0;
            for (std::size_t r = 0; r < psi.size(); ++r) {
                REQUIRE(psi[r] >= 0.0);
                REQUIRE(psi[r] <= 1.0);
                if (psi[r] > 0.0) {
                    first = std::min(first, r);
                    ++count;
                }
            }
            REQUIRE(count >= 1);
            REQUIRE(count <= 2);
            if (count == 2) {
                REQUIRE(psi[first + 1] > 0.0);
            }
        }
    }

    TEST_CASE("inference")
    {
        std::vector<double> centers = FuzzyEstimator::default_centers();
        const FuzzyEstimator zero(centers);
        const FuzzyEstimator constant(centers, std::vector<double>(7, 0.42));
        for (double u : {-3.0, -0.3, -0.07, 0.0, 0.02, 0.3, 4.0}) {
            CHECK(zero.infer(zero.membership(u)) == 0.0);
            CHECK(constant.infer(constant.membership(u)) == doctest::Approx(0.42).epsilon(1e-15));
        }
    }

    TEST_CASE("vector form agrees with the weighted-average oracle")
    {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> u_dist(-1.5, 1.5);
        std::uniform_real_distribution<double> d_dist(-2.0, 2.0);
        const auto centers = FuzzyEstimator::default_centers();
        for (int i = 0; i < 500; ++i) {
            std::vector<double> d(centers.size());
            for (auto &value : d) {
                value = d_dist(rng);
            }
            const FuzzyEstimator est(centers, d);
            const double u = u_dist(rng);
            const double expected = testing::weighted_average(centers, d, u);
            const double got = est.infer(est.membership(u));
            REQUIRE(std::abs(got - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
            REQUIRE(got >= *std::min_element(d.begin(), d.end()) - 1e-15);
            REQUIRE(got <= *std::max_element(d.begin(), d.end()) + 1e-15);
        }
    }

    TEST_CASE("inference is linear in the consequents and continuous in u_hat")
    {
        const auto centers = FuzzyEstimator::default_centers();
        const std::vector<double> d1{-1.0, -0.7, 0.2, 0.0, 0.4, 0.8, 1.0};
        const std::vector<double> d2{0.3, 0.1, -0.5, 0.9, -0.2, 0.0, 0.6};
        std::vector<double> sum(7);
        for (std::size_t r = 0; r < 7; ++r) {
            sum[r] = 2.0 * d1[r] + 3.0 * d2[r];
        }
        const FuzzyEstimator e1(centers, d1), e2(centers, d2), es(centers, sum);
        double max_slope = 0.0;
        for (std::size_t r = 1; r < 7; ++r) {
            max_slope = std::max(max_slope, std::abs(sum[r] - sum[r - 1]) / (centers[r] - centers[r - 1]));
        }
        double previous = es.infer(es.membership(-1.0));
        for (int i = 1; i <= 2000; ++i) {
            const double u = -1.0 + i * 1e-3;
            const auto psi = es.membership(u);
            REQUIRE(es.infer(psi) ==
                    doctest::Approx(2.0 * e1.infer(psi) + 3.0 * e2.infer(psi)).epsilon(1e-12));
            const double value = es.infer(psi);
            REQUIRE(std::abs(value - previous) <= max_slope * 1e-3 + 1e-12);
            previous = value;
        }
    }

    TEST_CASE("adaptation step")
    {
        const FuzzyEstimator est(FuzzyEstimator::default_centers(),
                                 {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7});
        SUBCASE("zero error leaves the estimator unchanged")
        {
            CHECK(est.adapted(0.0, est.membership(0.03), 0.5, 0.0025) == est);
        }
        SUBCASE("single active rule")
        {
            const auto next = est.adapted(1.0, unit(7, 3), 0.5, 0.0025);
            CHECK(next.consequents()[3] == doctest::Approx(0.4 - 0.00125).epsilon(1e-14));
            for (std::size_t r : {0u, 1u, 2u, 4u, 5u, 6u}) {
                CHECK(next.consequents()[r] == est.consequents()[r]);
            }
        }
        SUBCASE("inactive rules are never modified")
        {
            const auto psi = est.membership(0.075);
            const auto next = est.adapted(-0.8, psi, 0.5, 0.0025);
            for (std::size_t r = 0; r < 7; ++r) {
                if (psi[r] == 0.0) {
                    CHECK(next.consequents()[r] == est.consequents()[r]);
                } else {
                    CHECK(next.consequents()[r] > est.consequents()[r]);
                }
            }
        }
        SUBCASE("two steps equal one double step")
        {
            const auto psi = est.membership(-0.07);
            const auto twice = est.adapted(0.3, psi, 0.5, 0.0025).adapted(0.3, psi, 0.5, 0.0025);
            const auto once = est.adapted(0.3, psi, 0.5, 0.005);
            for (std::size_t r = 0; r < 7; ++r) {
                CHECK(twice.consequents()[r] == doctest::Approx(once.consequents()[r]).epsilon(1e-14));
            }
        }
    }
}
