#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "crossworld/keyval.hpp"
#include "crossworld/math.hpp"

namespace crossworld {

// ---------------------------------------------------------------------------
// Binary-treatment Gaussian potential-outcome family
// ---------------------------------------------------------------------------

/// Cross-world generative family for a binary treatment: the potential
/// outcomes (X0, X1) are jointly Gaussian with given marginals and
/// correlation rho, and the treatment is Bernoulli(p1) independent of both
/// (ignorability). rho is never identified by observational or interventional
/// data; it is the free parameter an adversarial world-search sweeps.
struct BinaryTreatmentGaussianModel {
    double mu0 = 0.0;
    double mu1 = 0.0;
    double sigma0 = 1.0;
    double sigma1 = 1.0;
    double rho = 0.0;
    double p1 = 0.5;

    void validate() const;  // throws ModelError
    double mu(int arm) const;
    double sigma(int arm) const;
    BinaryTreatmentGaussianModel with_rho(double new_rho) const;

    static BinaryTreatmentGaussianModel from_keyvals(const KeyVals& kv);
    KeyVals to_keyvals() const;
};

/// One sampled unit: treatment, both potential outcomes, and the factual
/// value. Consistency (x == x_a) holds by construction.
struct PotentialOutcomeDraw {
    int a = 0;
    double x0 = 0.0;
    double x1 = 0.0;
    double x = 0.0;
};

std::vector<PotentialOutcomeDraw> sample_cross_world(const BinaryTreatmentGaussianModel& model,
                                                     std::size_t n, std::uint64_t seed);

/// Law of the unobserved arm given the factual one: X_{1-a} | X_a = x, which
/// under ignorability equals the law given (A = a, X = x). Degenerate when
/// |rho| = 1 (point mass, not an error).
GaussianLaw counterfactual_posterior(const BinaryTreatmentGaussianModel& model, int observed_arm,
                                     double x);

/// CSV dump with header `a,x0,x1,x`.
void write_samples_csv(std::ostream& out, const std::vector<PotentialOutcomeDraw>& draws);

// ---------------------------------------------------------------------------
// Gaussian-process error family over a finite treatment grid
// ---------------------------------------------------------------------------

/// X = a + eps_a with {eps_a} a zero-mean stationary GP (squared-exponential
/// kernel), realized on a finite grid of treatment levels. Observationally
/// indistinguishable from the shared-error model X = a + eps level by level,
/// but with cross-world correlation below 1 for distinct levels.
struct GpTreatmentModel {
    double kernel_variance = 1.0;
    double length_scale = 1.0;
    std::vector<double> treatment_grid;

    void validate() const;  // throws ModelError; checks the Gram matrix is PSD
    double kernel(double a, double a_prime) const;
};

/// k(a - a') / k(0) = exp(-(a - a')^2 / (2 l^2)); equals 1 iff a == a'.
double gp_cross_world_correlation(const GpTreatmentModel& model, double a, double a_prime);

/// n joint draws of the error vector (eps_a, a in grid), row-major n x grid.
std::vector<std::vector<double>> sample_gp_errors(const GpTreatmentModel& model, std::size_t n,
                                                  std::uint64_t seed);

struct GpEquivalenceReport {
    std::vector<double> grid;
    /// Two-sample KS per level between X = a + eps (one shared error draw per
    /// unit) and X = a + eps_a (GP error vector per unit).
    std::vector<double> ks_per_level;
    /// 1% critical value 1.63 * sqrt(2/n) for the two-sample statistic.
    double ks_critical_1pct = 0.0;
    /// Cross-world contrast per grid pair (a, a'): shared-error correlation
    /// is identically 1; the GP correlation is exp(-(a-a')^2 / (2 l^2)).
    struct CrossWorldPair {
        double a;
        double a_prime;
        double shared_error_corr;  // always 1
        double gp_corr;
    };
    std::vector<CrossWorldPair> cross_world;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

/// The per-level comparison should be statistically flat (same observational
/// law) while the cross_world entries expose the rung-3 divergence.
GpEquivalenceReport gp_observational_equivalence_check(const GpTreatmentModel& model,
                                                       std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Fixed three-equation wage example
// ---------------------------------------------------------------------------

/// A = U_a (uniform on {0,1}); X = -A + U_x; Y = A + X + U_y. The treatment
/// cancels out of every potential outcome of Y: Y_a = U_x + U_y for all a.
struct Example14Outcome {
    double y0 = 0.0;
    double y1 = 0.0;
    double x = 0.0;
    double y = 0.0;
};

Example14Outcome example14_cross_world(int a, double u_x, double u_y);

struct Example14Draw {
    int a = 0;
    double u_x = 0.0;
    double u_y = 0.0;
    double x = 0.0;
    double y = 0.0;
    double y0 = 0.0;
    double y1 = 0.0;
};

/// U_x, U_y standard Gaussian by default.
std::vector<Example14Draw> sample_example14(std::size_t n, std::uint64_t seed);

}  // namespace crossworld
