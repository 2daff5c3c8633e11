#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "crossworld/errors.hpp"
#include "crossworld/fairness.hpp"
#include "crossworld/math.hpp"
#include "crossworld/models.hpp"
#include "crossworld/predictors.hpp"

using namespace crossworld;

namespace {

BinaryTreatmentGaussianModel make_model(double mu0, double mu1, double s0, double s1, double rho) {
    BinaryTreatmentGaussianModel m;
    m.mu0 = mu0;
    m.mu1 = mu1;
    m.sigma0 = s0;
    m.sigma1 = s1;
    m.rho = rho;
    return m;
}

}  // namespace

TEST_CASE("standardized score basics") {
    const auto m = make_model(1.0, 3.0, 1.0, 2.0, 0.0);
    CHECK(standardized_score(m, 0, 1.0) == 0.0);
    CHECK(standardized_score(m, 1, 3.0) == 0.0);
    CHECK(standardized_score(m, 0, 2.0) == 1.0);
    CHECK(standardized_score(m, 1, 2.0) == -0.5);
    CHECK_THROWS_AS(standardized_score(m, 2, 0.0), InputError);
}

TEST_CASE("standardized score is standard normal within each arm") {
    const auto m = make_model(1.0, 4.0, 1.0, 0.5, 0.3);
    const StandardizedPredictor predictor(m);
    const auto draws = sample_cross_world(m, 100000, 301);
    std::vector<double> arm0, arm1;
    Rng rng(0);
    for (const auto& d : draws) {
        (d.a == 0 ? arm0 : arm1).push_back(predictor.score(WorldUnit::factual(d), rng));
    }
    CHECK(ks_distance_vs_cdf(arm0, normal_cdf) < 0.01);
    CHECK(ks_distance_vs_cdf(arm1, normal_cdf) < 0.01);
}

TEST_CASE("standardized score reads both inputs nontrivially") {
    // Same x, different arm: differs whenever the arm laws differ.
    const auto shifted = make_model(0.0, 1.0, 1.0, 1.0, 0.0);
    CHECK(standardized_score(shifted, 0, 0.7) != standardized_score(shifted, 1, 0.7));
    const auto scaled = make_model(1.0, 1.0, 1.0, 2.0, 0.0);
    CHECK(standardized_score(scaled, 0, 0.7) != standardized_score(scaled, 1, 0.7));
    // Same arm, different x: strictly monotone.
    CHECK(standardized_score(shifted, 0, 0.1) < standardized_score(shifted, 0, 0.2));
}

TEST_CASE("cancellation coefficients") {
    const auto c1 = linear_cancellation_coefficients(1.0, 1.0);
    CHECK(c1.lambda1 == -1.0);
    CHECK(c1.lambda2 == 1.0);
    const auto c2 = linear_cancellation_coefficients(1.0, 0.0);
    CHECK(c2.lambda1 == 0.0);
    const auto c3 = linear_cancellation_coefficients(2.0, 1.0);
    CHECK(c3.lambda1 == -0.5);
    CHECK_THROWS_AS(linear_cancellation_coefficients(0.0, 1.0), InputError);

    // Simulation check: cov(A, lambda1 A + X) vanishes for Gaussian (A, X)
    // with var(A) = 2, cov(A, X) = 1.
    Rng rng(77);
    std::vector<double> as, scores;
    for (int i = 0; i < 100000; ++i) {
        const double a = std::sqrt(2.0) * rng.normal();
        const double x = 0.5 * a + rng.normal();
        as.push_back(a);
        scores.push_back(c3.lambda1 * a + c3.lambda2 * x);
    }
    CHECK(std::abs(covariance(as, scores)) < 0.02);
}

TEST_CASE("quantile transform hits the median and composes back to the z-score") {
    const auto m = make_model(1.0, 2.0, 1.0, 3.0, 0.0);
    const GaussianArmCdfs cdfs(m);
    const auto identity = [](double u) { return u; };
    CHECK(rosenblatt_dp_score(cdfs, 0, 1.0, identity).value == doctest::Approx(0.5));
    CHECK(rosenblatt_dp_score(cdfs, 1, 2.0, identity).value == doctest::Approx(0.5));

    const auto z = RosenblattDpPredictor::gaussianized(m);
    Rng rng(0);
    for (const double x : {-2.0, -0.5, 0.0, 1.0, 2.5, 4.0}) {
        for (const int arm : {0, 1}) {
            const WorldUnit u{arm, x, x, x};
            CHECK(z.score(u, rng) ==
                  doctest::Approx(standardized_score(m, arm, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("quantile transform yields pooled uniform levels") {
    const auto m = make_model(0.0, 2.0, 1.0, 0.5, 0.4);
    const auto predictor = RosenblattDpPredictor::uniform(m);
    const auto draws = sample_cross_world(m, 100000, 302);
    std::vector<double> levels;
    Rng rng(0);
    for (const auto& d : draws) levels.push_back(predictor.score(WorldUnit::factual(d), rng));
    const auto uniform_cdf = [](double v) { return std::clamp(v, 0.0, 1.0); };
    CHECK(ks_distance_vs_cdf(levels, uniform_cdf) < 0.01);
}

TEST_CASE("empirical arm cdfs clamp and flag out-of-support points") {
    const EmpiricalArmCdfs cdfs({1.0, 2.0, 3.0}, {10.0, 20.0});
    const auto identity = [](double u) { return u; };
    const auto low = rosenblatt_dp_score(cdfs, 0, 0.0, identity);
    CHECK(low.clamped);
    CHECK(low.value == doctest::Approx(1.0 / 3.0));  // clamped to the min, cdf(min) = 1/3
    const auto high = rosenblatt_dp_score(cdfs, 1, 25.0, identity);
    CHECK(high.clamped);
    CHECK(high.value == doctest::Approx(1.0));
    const auto inside = rosenblatt_dp_score(cdfs, 0, 2.0, identity);
    CHECK_FALSE(inside.clamped);
    CHECK(inside.value == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("potential outcome score reads only the cross-world vector") {
    CHECK(potential_outcome_score(1.0, 1.0, 2.0, 4.0) == 6.0);
    CHECK(potential_outcome_score(1.0, 0.0, 2.0, 4.0) == 2.0);

    const PotentialOutcomeLinearPredictor p(1.0, 1.0);
    Rng rng(0);
    PotentialOutcomeDraw d{0, 2.0, 4.0, 2.0};
    CHECK(p.score(WorldUnit::factual(d), rng) == p.score(WorldUnit::flipped(d), rng));
    CHECK(p.cross_world_invariant());

    CHECK_THROWS_AS(PotentialOutcomeLinearPredictor(-1.0, 1.0, true), InputError);
}

TEST_CASE("monotone dominance for equal factual scores") {
    // Unit 1 observed under the disadvantaged arm at x, unit 2 under the
    // other arm at the same x; per-unit monotonicity X_other >= X_base.
    CHECK(potential_outcome_score(1.0, 1.0, 3.0, 4.0) >= potential_outcome_score(1.0, 1.0, 2.0, 3.0));

    Rng rng(303);
    for (int i = 0; i < 2000; ++i) {
        const double x = 3.0 * rng.normal();
        const double lift1 = std::abs(rng.normal());
        const double drop2 = std::abs(rng.normal());
        const double l1 = 0.1 + std::abs(rng.normal());
        const double l2 = 0.1 + std::abs(rng.normal());
        const double score1 = potential_outcome_score(l1, l2, x, x + lift1);
        const double score2 = potential_outcome_score(l1, l2, x - drop2, x);
        REQUIRE(score1 >= score2);
    }
}

TEST_CASE("coin flip") {
    CHECK(coin_flip_score(0.0, 5) == 0);
    CHECK(coin_flip_score(1.0, 5) == 1);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) sum += coin_flip_score(0.5, derive_seed(900, i));
    CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sum / 100000.0 - 0.5) < 0.005);
    CHECK_THROWS_AS(coin_flip_score(1.5, 0), InputError);
}

TEST_CASE("path-specific score hand evaluation") {
    PathSpecificModel m;
    m.f_x = {0.0, 1.0, 1.0};        // X = A + U_x
    m.f_z = {0.0, 1.0, 1.0, 1.0};   // Z = A + X + U_z
    CHECK(path_specific_score(m, 1.0, 0.0, 0.0, 0.0) == doctest::Approx(2.0));

    // a == baseline: nothing to break, z* is the factual z.
    const double a = 1.0, u_x = 0.4, u_z = -0.3;
    const double x = m.f_x_eval(a, u_x);
    const double z_factual = m.f_z_eval(a, x, u_z);
    CHECK(path_specific_score(m, a, u_x, u_z, a) == doctest::Approx(x + z_factual));

    // The broken-edge component ignores the treatment once x is held fixed.
    const double base = 0.0;
    CHECK(m.f_z_eval(base, 1.7, u_z) == m.f_z_eval(base, 1.7, u_z));
    const double s0 = path_specific_score(m, 0.0, u_x, u_z, base);
    const double x0 = m.f_x_eval(0.0, u_x);
    CHECK(s0 == doctest::Approx(x0 + m.f_z_eval(base, x0, u_z)));
}

TEST_CASE("predictor factory parses flat specs") {
    const auto m = make_model(1.0, 1.0, 1.0, 1.0, 0.5);
    CHECK(make_predictor(KeyVals::parse("predictor=standardized"), m)->name() == "standardized");
    const auto linear = make_predictor(KeyVals::parse("predictor=linear lambda1=-1 lambda2=1"), m);
    Rng rng(0);
    CHECK(linear->score({1, 2.0, 0.0, 2.0}, rng) == doctest::Approx(1.0));
    CHECK(make_predictor(KeyVals::parse("predictor=po_linear lambda1=1 lambda2=1"), m)
              ->cross_world_invariant());
    CHECK(make_predictor(KeyVals::parse("predictor=rosenblatt h=gaussian"), m)->name() ==
          "rosenblatt_gaussian");
    CHECK_FALSE(make_predictor(KeyVals::parse("predictor=coin_flip p=0.3"), m)->deterministic());
    CHECK_THROWS_AS(make_predictor(KeyVals::parse("predictor=nope"), m), InputError);
    CHECK_THROWS_AS(make_predictor(KeyVals::parse("x=1"), m), InputError);
}
