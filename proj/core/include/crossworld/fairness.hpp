#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crossworld/math.hpp"
#include "crossworld/models.hpp"
#include "crossworld/predictors.hpp"

namespace crossworld {

// ---------------------------------------------------------------------------
// Distances and reports
// ---------------------------------------------------------------------------

enum class DistanceKind { kolmogorov_smirnov, wasserstein1 };

struct DistributionDistance {
    DistanceKind kind = DistanceKind::kolmogorov_smirnov;
    double value = 0.0;
};

enum class GapMethod { closed_form, monte_carlo };

const char* to_string(DistanceKind kind);
const char* to_string(GapMethod method);

// ---------------------------------------------------------------------------
// Demographic parity (rung 1)
// ---------------------------------------------------------------------------

/// Distance between the score laws given A=0 and A=1 over n factual draws.
/// Zero (up to sampling error) means demographic parity. If one arm comes up
/// empty the draw is retried on derived substreams; p1 in {0, 1} is an error.
DistributionDistance dp_gap(const Predictor& predictor, const BinaryTreatmentGaussianModel& model,
                            std::size_t n, std::uint64_t seed,
                            DistanceKind kind = DistanceKind::kolmogorov_smirnov);

// ---------------------------------------------------------------------------
// Counterfactual fairness (rung 3)
// ---------------------------------------------------------------------------

struct CfGapOptions {
    DistanceKind kind = DistanceKind::kolmogorov_smirnov;
    /// Unset: closed form when the predictor admits one, sampling otherwise.
    std::optional<GapMethod> method;
    /// Joint draws for the sampling route.
    std::size_t n = 1'000'000;
    /// Conditioning tolerance |X_a - x| <= window for the sampling route.
    double window = 0.01;
    std::uint64_t seed = 1;
    /// Two point masses closer than this count as the same law (guards the
    /// |rho| = 1 corner against last-ulp arithmetic noise).
    double point_mass_tol = 1e-9;
};

struct CfGapResult {
    DistributionDistance distance;
    GapMethod method = GapMethod::closed_form;
    std::size_t n_used = 0;  // accepted draws for the sampling route, else 0
    std::uint64_t seed = 0;
};

/// Distance between the factual score law P(Y_hat_a <= . | A=a, X=x) and the
/// counterfactual one P(Y_hat_{a'} <= . | A=a, X=x). Zero iff the predictor
/// is counterfactually fair at that conditioning point.
///
/// Closed form: cross-world-invariant predictors give exactly 0; per-arm
/// affine predictors push the counterfactual posterior through the other
/// arm's score map analytically. Sampling route: rejection on |X_a - x| <=
/// window over the full cross-world joint, scoring accepted units in both
/// worlds with shared background randomness. The two routes share no
/// conditioning code.
CfGapResult cf_gap(const Predictor& predictor, const BinaryTreatmentGaussianModel& model, double x,
                   int a, const CfGapOptions& options = {});

struct AggregateCfGap {
    double mean_gap = 0.0;
    double max_gap = 0.0;
    std::size_t n_points = 0;
    std::uint64_t seed = 0;
    DistanceKind kind = DistanceKind::kolmogorov_smirnov;
};

/// Averages the pointwise gap over conditioning points (a, x) drawn from the
/// model's factual law.
AggregateCfGap cf_gap_aggregate(const Predictor& predictor,
                                const BinaryTreatmentGaussianModel& model, std::size_t n_points,
                                std::uint64_t seed, const CfGapOptions& per_point = {});

/// Bundle of both criteria at one conditioning point.
struct FairnessReport {
    DistributionDistance dp_gap;
    DistributionDistance cf_gap;
    double x = 0.0;
    int a = 0;
    GapMethod cf_method = GapMethod::closed_form;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

FairnessReport audit(const Predictor& predictor, const BinaryTreatmentGaussianModel& model,
                     double x, int a, std::size_t n, std::uint64_t seed,
                     DistanceKind kind = DistanceKind::kolmogorov_smirnov);

// ---------------------------------------------------------------------------
// Adversarial world-search over the unidentified correlation
// ---------------------------------------------------------------------------

struct RhoProfilePoint {
    double rho = 0.0;
    double gap = 0.0;
};

struct AdversarySearch {
    double rho_star = 0.0;
    double gap_star = 0.0;
    std::vector<RhoProfilePoint> profile;
    DistanceKind kind = DistanceKind::kolmogorov_smirnov;
    GapMethod method = GapMethod::closed_form;
    std::uint64_t seed = 0;
};

/// Evaluates cf_gap at every rho on the grid; every such world shares the
/// same observational and interventional laws, so the adversary is free to
/// pick the worst. Ties break toward the smallest |rho| (then grid order).
/// The grid must be nonempty with |rho| <= 1 throughout; the endpoints are
/// included only if the caller puts them there.
AdversarySearch adversary_rho(const Predictor& predictor, BinaryTreatmentGaussianModel base,
                              double x, int a, const std::vector<double>& rho_grid,
                              const CfGapOptions& options = {});

/// Pairwise KS between the observational laws of the rho-worlds on a grid:
/// the data cannot tell the adversary's candidate worlds apart.
struct MarginalInvarianceReport {
    std::vector<double> rho_grid;
    double max_pairwise_ks_pooled_x = 0.0;
    double max_pairwise_ks_arm0 = 0.0;
    double max_pairwise_ks_arm1 = 0.0;
    double max_arm_share_diff = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

MarginalInvarianceReport observational_invariance(const BinaryTreatmentGaussianModel& base,
                                                  const std::vector<double>& rho_grid,
                                                  std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Shared-error corner: where parity and counterfactual fairness coincide
// ---------------------------------------------------------------------------

struct StrongAssumptionReport {
    // Shared-error world X = A + eps (rho = 1 with matched arms).
    CancellationCoefficients coefficients;  // the fitted X - A predictor
    double dp_gap_shared = 0.0;
    std::vector<double> probe_x;
    std::vector<int> probe_a;
    std::vector<double> cf_gap_shared;  // exactly zero at every probe
    // GP-error world on a two-level grid: same observational laws, different
    // cross-world behavior.
    double gp_cross_world_corr = 0.0;
    std::vector<double> observational_ks_per_level;
    std::vector<double> cf_gap_gp;  // strictly positive at interior probes
    double coin_flip_cf_gap = 0.0;  // zero in either world
    double sigma = 1.0;
    double length_scale = 1.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

/// Builds Y_hat = X - A from covariances in the shared-error world, verifies
/// that demographic parity and counterfactual fairness both hold there, then
/// swaps in the GP-error world with identical observational laws and shows
/// the coincidence break.
StrongAssumptionReport strong_assumption_implication_check(std::size_t n, std::uint64_t seed,
                                                           double sigma = 1.0,
                                                           double length_scale = 1.0);

}  // namespace crossworld
