#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "crossworld/errors.hpp"
#include "crossworld/math.hpp"
#include "crossworld/models.hpp"

using namespace crossworld;

namespace {

BinaryTreatmentGaussianModel unit_model(double rho, double mu0 = 1.0, double mu1 = 1.0,
                                        double s0 = 1.0, double s1 = 1.0) {
    BinaryTreatmentGaussianModel m;
    m.mu0 = mu0;
    m.mu1 = mu1;
    m.sigma0 = s0;
    m.sigma1 = s1;
    m.rho = rho;
    m.p1 = 0.5;
    return m;
}

// Independent check on the conditional law: narrow-window rejection over raw
// joint draws, no conditional formula anywhere.
std::vector<double> rejection_conditioned_other_arm(const BinaryTreatmentGaussianModel& m,
                                                    int observed_arm, double x, double window,
                                                    std::size_t n_total, std::uint64_t seed) {
    const auto draws = sample_cross_world(m, n_total, seed);
    std::vector<double> accepted;
    for (const auto& d : draws) {
        const double factual = (observed_arm == 0) ? d.x0 : d.x1;
        if (std::abs(factual - x) <= window) {
            accepted.push_back(observed_arm == 0 ? d.x1 : d.x0);
        }
    }
    return accepted;
}

}  // namespace

TEST_CASE("model validation") {
    CHECK_THROWS_AS(unit_model(1.5).validate(), ModelError);
    CHECK_THROWS_AS(unit_model(0.0, 1.0, 1.0, -1.0).validate(), ModelError);
    auto m = unit_model(0.0);
    m.p1 = 1.2;
    CHECK_THROWS_AS(m.validate(), ModelError);
    CHECK_NOTHROW(unit_model(-1.0).validate());
}

TEST_CASE("config round trip") {
    const auto kv = KeyVals::parse("mu0=1.0 mu1=2.0 sigma0=0.5 sigma1=1.5 rho=-0.25 p1=0.4");
    const auto m = BinaryTreatmentGaussianModel::from_keyvals(kv);
    CHECK(m.mu1 == 2.0);
    CHECK(m.rho == -0.25);
    const auto back = BinaryTreatmentGaussianModel::from_keyvals(m.to_keyvals());
    CHECK(back.sigma1 == m.sigma1);
    CHECK(back.p1 == m.p1);
}

TEST_CASE("perfectly correlated matched arms collapse the two worlds") {
    const auto draws = sample_cross_world(unit_model(1.0), 5000, 11);
    for (const auto& d : draws) {
        CHECK(d.x0 == d.x1);
        CHECK(d.x == (d.a == 1 ? d.x1 : d.x0));  // consistency, bitwise
    }
}

TEST_CASE("independent worlds decorrelate") {
    const auto draws = sample_cross_world(unit_model(0.0), 100000, 12);
    std::vector<double> x0s, x1s;
    for (const auto& d : draws) {
        x0s.push_back(d.x0);
        x1s.push_back(d.x1);
    }
    const double n = static_cast<double>(draws.size());
    CHECK(std::abs(covariance(x0s, x1s)) < 3.0 / std::sqrt(n));
}

TEST_CASE("sample covariance matches rho sigma0 sigma1") {
    const auto draws = sample_cross_world(unit_model(0.5), 1000000, 13);
    std::vector<double> x0s, x1s;
    for (const auto& d : draws) {
        x0s.push_back(d.x0);
        x1s.push_back(d.x1);
    }
    CHECK(covariance(x0s, x1s) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("arm marginals are identifiable whatever rho does") {
    for (const double rho : {-0.9, 0.0, 0.9}) {
        const auto m = unit_model(rho, 1.0, 2.0, 1.0, 0.5);
        const auto draws = sample_cross_world(m, 100000, 14);
        std::vector<double> arm0, arm1;
        for (const auto& d : draws) (d.a == 0 ? arm0 : arm1).push_back(d.x);
        const auto cdf0 = [&](double v) { return normal_cdf((v - m.mu0) / m.sigma0); };
        const auto cdf1 = [&](double v) { return normal_cdf((v - m.mu1) / m.sigma1); };
        CHECK(ks_distance_vs_cdf(arm0, cdf0) < 0.01);
        CHECK(ks_distance_vs_cdf(arm1, cdf1) < 0.01);
    }
}

TEST_CASE("treatment is assigned independently of the potential outcomes") {
    const auto draws = sample_cross_world(unit_model(0.5), 200000, 15);
    std::vector<double> x0_given_a0, x0_given_a1;
    for (const auto& d : draws) (d.a == 0 ? x0_given_a0 : x0_given_a1).push_back(d.x0);
    CHECK(ks_distance(x0_given_a0, x0_given_a1) < 0.01);
}

TEST_CASE("posterior trivia: independence and degeneracy") {
    const auto indep = counterfactual_posterior(unit_model(0.0, 1.0, 2.0, 1.0, 0.5), 0, 7.0);
    CHECK(indep.mean == doctest::Approx(2.0));
    CHECK(indep.variance == doctest::Approx(0.25));

    const auto degenerate = counterfactual_posterior(unit_model(1.0), 0, 1.7);
    CHECK(degenerate.point_mass());
    CHECK(degenerate.mean == doctest::Approx(1.7));

    CHECK_THROWS_AS(counterfactual_posterior(unit_model(0.0), 2, 0.0), InputError);
}

TEST_CASE("posterior closed form at the worked conditioning point") {
    // mu0 = mu1 = 1, sigma = 1, rho = 0.5, observed arm 0 at x = 2.
    const auto law = counterfactual_posterior(unit_model(0.5), 0, 2.0);
    CHECK(law.mean == doctest::Approx(1.5));
    CHECK(law.variance == doctest::Approx(0.75));
    CHECK(law.cdf(2.0) == doctest::Approx(0.7181).epsilon(1e-3));

    // Monte-Carlo oracle: empirical cdf at 2 from narrow-window rejection.
    const auto accepted = rejection_conditioned_other_arm(unit_model(0.5), 0, 2.0, 0.01, 2000000, 21);
    REQUIRE(accepted.size() > 1000);
    const double empirical_at_2 =
        static_cast<double>(std::count_if(accepted.begin(), accepted.end(),
                                          [](double v) { return v <= 2.0; })) /
        static_cast<double>(accepted.size());
    CHECK(std::abs(empirical_at_2 - law.cdf(2.0)) < 0.01);
}

TEST_CASE("posterior agrees with the rejection oracle in sup norm on a grid") {
    for (const double rho : {-0.9, 0.0, 0.5, 0.9}) {
        for (const double x : {0.0, 1.0, 2.0}) {
            const auto m = unit_model(rho);
            const auto law = counterfactual_posterior(m, 0, x);
            const auto accepted =
                rejection_conditioned_other_arm(m, 0, x, 0.01, 6000000, 1000 + 17 * (unsigned)(10 * (rho + 1)) + (unsigned)x);
            REQUIRE(accepted.size() > 20000);
            CHECK(ks_distance_vs_cdf(accepted, [&](double v) { return law.cdf(v); }) < 0.01);
        }
    }
}

TEST_CASE("csv dump carries the documented header") {
    const auto draws = sample_cross_world(unit_model(0.0), 3, 1);
    std::ostringstream out;
    write_samples_csv(out, draws);
    const std::string text = out.str();
    CHECK(text.substr(0, 10) == "a,x0,x1,x\n");
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("gp kernel correlation values") {
    GpTreatmentModel gp;
    gp.kernel_variance = 2.0;
    gp.length_scale = 1.0;
    gp.treatment_grid = {0.0, 1.0};
    CHECK(gp_cross_world_correlation(gp, 0.7, 0.7) == doctest::Approx(1.0));
    CHECK(gp_cross_world_correlation(gp, 0.0, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(gp_cross_world_correlation(gp, 0.0, 10.0) == doctest::Approx(1.93e-22).epsilon(0.01));
    CHECK(gp_cross_world_correlation(gp, 0.0, 10.0) < 1e-20);

    GpTreatmentModel bad = gp;
    bad.length_scale = -1.0;
    CHECK_THROWS_AS(bad.validate(), ModelError);
}

TEST_CASE("gp draws realize the kernel correlation") {
    GpTreatmentModel gp;
    gp.kernel_variance = 1.0;
    gp.length_scale = 1.0;
    gp.treatment_grid = {0.0, 1.0};
    const auto eps = sample_gp_errors(gp, 100000, 31);
    std::vector<double> e0, e1;
    for (const auto& row : eps) {
        e0.push_back(row[0]);
        e1.push_back(row[1]);
    }
    const double corr = covariance(e0, e1) / std::sqrt(variance(e0) * variance(e1));
    CHECK(corr == doctest::Approx(std::exp(-0.5)).epsilon(0.02));
    CHECK(std::abs(corr - std::exp(-0.5)) < 0.01);
}

TEST_CASE("gp world is observationally flat per level yet cross-world distinct") {
    GpTreatmentModel gp;
    gp.kernel_variance = 1.0;
    gp.length_scale = 1.0;
    gp.treatment_grid = {0.0, 1.0, 2.0};
    const auto report = gp_observational_equivalence_check(gp, 100000, 41);
    REQUIRE(report.ks_per_level.size() == 3);
    for (const double ks : report.ks_per_level) {
        CHECK(ks < 0.02);
        CHECK(ks < report.ks_critical_1pct * 2.0);
    }
    REQUIRE(report.cross_world.size() == 3);
    for (const auto& pair : report.cross_world) {
        CHECK(pair.shared_error_corr == 1.0);
        CHECK(pair.gp_corr < 1.0);
    }
    CHECK(report.cross_world.front().gp_corr == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("single-level gp check sits below the one-percent critical value") {
    GpTreatmentModel gp;
    gp.kernel_variance = 1.0;
    gp.length_scale = 1.0;
    gp.treatment_grid = {0.0};
    const auto report = gp_observational_equivalence_check(gp, 100000, 43);
    CHECK(report.ks_per_level.front() < report.ks_critical_1pct);
}

TEST_CASE("wage example cancels the treatment exactly") {
    const auto o = example14_cross_world(1, 0.3, -0.2);
    CHECK(o.x == doctest::Approx(-0.7));
    CHECK(o.y == doctest::Approx(0.1));
    CHECK(o.y0 == o.y1);
    CHECK(o.y0 == doctest::Approx(0.1));

    const auto zero = example14_cross_world(0, 0.0, 0.0);
    CHECK(zero.x == 0.0);
    CHECK(zero.y == 0.0);
    CHECK(zero.y0 == 0.0);
    CHECK(zero.y1 == 0.0);

    Rng rng(55);
    for (int i = 0; i < 10000; ++i) {
        const int a = rng.bernoulli(0.5) ? 1 : 0;
        const auto out = example14_cross_world(a, rng.normal(), rng.normal());
        REQUIRE(out.y0 == out.y1);  // bitwise
        REQUIRE(out.y == (a == 1 ? out.y1 : out.y0));
    }
}

TEST_CASE("wage example sampler keeps the structural relations") {
    const auto draws = sample_example14(20000, 77);
    std::size_t ones = 0;
    for (const auto& d : draws) {
        REQUIRE(d.y0 == d.y1);
        REQUIRE(d.x == -static_cast<double>(d.a) + d.u_x);
        ones += static_cast<std::size_t>(d.a);
    }
    CHECK(static_cast<double>(ones) / 20000.0 == doctest::Approx(0.5).epsilon(0.05));
}
