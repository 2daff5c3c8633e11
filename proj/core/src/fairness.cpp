#include "crossworld/fairness.hpp"

#include <algorithm>
#include <cmath>

#include "crossworld/errors.hpp"

namespace crossworld {

namespace {

double distance_between(std::vector<double> a, std::vector<double> b, DistanceKind kind) {
    if (kind == DistanceKind::kolmogorov_smirnov) {
        return ks_distance(std::move(a), std::move(b));
    }
    return wasserstein1(std::move(a), std::move(b));
}

// Distance between two point masses; values within tol count as equal so the
// |rho| = 1 corner is not at the mercy of last-ulp arithmetic.
double point_vs_point(double t, double m, DistanceKind kind, double tol) {
    const double scale = std::max({1.0, std::abs(t), std::abs(m)});
    if (std::abs(t - m) <= tol * scale) return 0.0;
    return (kind == DistanceKind::kolmogorov_smirnov) ? 1.0 : std::abs(t - m);
}

// Distance between a point mass at t and N(m, s^2), s > 0.
double point_vs_gaussian(double t, double m, double s, DistanceKind kind) {
    const double d = (t - m) / s;
    if (kind == DistanceKind::kolmogorov_smirnov) {
        const double g = normal_cdf(d);
        return std::max(g, 1.0 - g);
    }
    return s * (2.0 * normal_pdf(d) + d * (2.0 * normal_cdf(d) - 1.0));
}

bool has_closed_form(const Predictor& predictor) {
    return predictor.cross_world_invariant() ||
           (predictor.affine_given_arm(0).has_value() && predictor.affine_given_arm(1).has_value());
}

CfGapResult cf_gap_closed_form(const Predictor& predictor,
                               const BinaryTreatmentGaussianModel& model, double x, int a,
                               const CfGapOptions& options) {
    CfGapResult result;
    result.method = GapMethod::closed_form;
    result.seed = options.seed;
    result.distance.kind = options.kind;

    if (predictor.cross_world_invariant()) {
        result.distance.value = 0.0;
        return result;
    }

    const auto factual = predictor.affine_given_arm(a);
    const auto counter = predictor.affine_given_arm(1 - a);
    if (!factual || !counter) {
        throw InputError("cf_gap: no closed form for predictor '" + predictor.name() + "'");
    }

    const double t = factual->at(x);
    const GaussianLaw posterior = counterfactual_posterior(model, a, x);
    const double m = counter->at(posterior.mean);
    const double s = std::abs(counter->slope) * posterior.sd();

    result.distance.value = (s == 0.0) ? point_vs_point(t, m, options.kind, options.point_mass_tol)
                                       : point_vs_gaussian(t, m, s, options.kind);
    return result;
}

// Rejection route: condition on |X_a - x| <= window over the raw cross-world
// joint, then score each accepted unit in both worlds with shared background
// randomness. Shares no conditioning logic with counterfactual_posterior.
CfGapResult cf_gap_monte_carlo(const Predictor& predictor,
                               const BinaryTreatmentGaussianModel& model, double x, int a,
                               const CfGapOptions& options) {
    if (options.n == 0) throw InputError("cf_gap: n must be positive");
    if (!(options.window > 0.0)) throw InputError("cf_gap: window must be positive");

    const auto draws = sample_cross_world(model, options.n, derive_seed(options.seed, 0));
    std::vector<double> factual_scores, counter_scores;
    const std::uint64_t unit_root = derive_seed(options.seed, 1);
    std::size_t accepted = 0;
    for (const auto& d : draws) {
        const double x_factual = (a == 0) ? d.x0 : d.x1;
        if (std::abs(x_factual - x) > options.window) continue;
        const double x_counter = (a == 0) ? d.x1 : d.x0;
        Rng factual_rng(derive_seed(unit_root, accepted));
        Rng counter_rng(derive_seed(unit_root, accepted));
        factual_scores.push_back(predictor.score({a, x_factual, d.x0, d.x1}, factual_rng));
        counter_scores.push_back(predictor.score({1 - a, x_counter, d.x0, d.x1}, counter_rng));
        ++accepted;
    }
    if (accepted < 10) {
        throw InputError("cf_gap: fewer than 10 draws fell in the conditioning window; "
                         "increase n or the window");
    }

    CfGapResult result;
    result.method = GapMethod::monte_carlo;
    result.seed = options.seed;
    result.n_used = accepted;
    result.distance.kind = options.kind;
    result.distance.value =
        distance_between(std::move(factual_scores), std::move(counter_scores), options.kind);
    return result;
}

}  // namespace

const char* to_string(DistanceKind kind) {
    return kind == DistanceKind::kolmogorov_smirnov ? "kolmogorov_smirnov" : "wasserstein1";
}

const char* to_string(GapMethod method) {
    return method == GapMethod::closed_form ? "closed_form" : "monte_carlo";
}

DistributionDistance dp_gap(const Predictor& predictor, const BinaryTreatmentGaussianModel& model,
                            std::size_t n, std::uint64_t seed, DistanceKind kind) {
    model.validate();
    if (n < 2) throw InputError("dp_gap: n must be at least 2");
    if (model.p1 <= 0.0 || model.p1 >= 1.0) {
        throw InputError("dp_gap: p1 pins every unit to one arm; both arms are required");
    }

    for (unsigned attempt = 0; attempt < 8; ++attempt) {
        const auto draws = sample_cross_world(model, n, derive_seed(seed, attempt));
        std::vector<double> arm0, arm1;
        const std::uint64_t unit_root = derive_seed(seed, 1000 + attempt);
        for (std::size_t i = 0; i < draws.size(); ++i) {
            Rng rng(derive_seed(unit_root, i));
            const double s = predictor.score(WorldUnit::factual(draws[i]), rng);
            (draws[i].a == 0 ? arm0 : arm1).push_back(s);
        }
        if (arm0.empty() || arm1.empty()) continue;  // resample on a fresh substream
        return {kind, distance_between(std::move(arm0), std::move(arm1), kind)};
    }
    throw InputError("dp_gap: an arm stayed empty after resampling");
}

CfGapResult cf_gap(const Predictor& predictor, const BinaryTreatmentGaussianModel& model, double x,
                   int a, const CfGapOptions& options) {
    model.validate();
    if (a != 0 && a != 1) throw InputError("cf_gap: a must be 0 or 1");

    if (options.method.has_value()) {
        return (*options.method == GapMethod::closed_form)
                   ? cf_gap_closed_form(predictor, model, x, a, options)
                   : cf_gap_monte_carlo(predictor, model, x, a, options);
    }
    return has_closed_form(predictor) ? cf_gap_closed_form(predictor, model, x, a, options)
                                      : cf_gap_monte_carlo(predictor, model, x, a, options);
}

AggregateCfGap cf_gap_aggregate(const Predictor& predictor,
                                const BinaryTreatmentGaussianModel& model, std::size_t n_points,
                                std::uint64_t seed, const CfGapOptions& per_point) {
    if (n_points == 0) throw InputError("cf_gap_aggregate: n_points must be positive");
    const auto points = sample_cross_world(model, n_points, derive_seed(seed, 0));

    AggregateCfGap out;
    out.n_points = n_points;
    out.seed = seed;
    out.kind = per_point.kind;
    for (std::size_t i = 0; i < points.size(); ++i) {
        CfGapOptions opts = per_point;
        opts.seed = derive_seed(seed, 1 + i);
        const auto r = cf_gap(predictor, model, points[i].x, points[i].a, opts);
        out.mean_gap += r.distance.value;
        out.max_gap = std::max(out.max_gap, r.distance.value);
    }
    out.mean_gap /= static_cast<double>(n_points);
    return out;
}

FairnessReport audit(const Predictor& predictor, const BinaryTreatmentGaussianModel& model,
                     double x, int a, std::size_t n, std::uint64_t seed, DistanceKind kind) {
    FairnessReport report;
    report.x = x;
    report.a = a;
    report.n_samples = n;
    report.seed = seed;
    report.dp_gap = dp_gap(predictor, model, n, derive_seed(seed, 0), kind);
    CfGapOptions opts;
    opts.kind = kind;
    opts.n = n;
    opts.seed = derive_seed(seed, 1);
    const auto cf = cf_gap(predictor, model, x, a, opts);
    report.cf_gap = cf.distance;
    report.cf_method = cf.method;
    return report;
}

AdversarySearch adversary_rho(const Predictor& predictor, BinaryTreatmentGaussianModel base,
                              double x, int a, const std::vector<double>& rho_grid,
                              const CfGapOptions& options) {
    if (rho_grid.empty()) throw InputError("adversary_rho: empty rho grid");
    for (const double rho : rho_grid) {
        if (!(rho >= -1.0 && rho <= 1.0)) {
            throw InputError("adversary_rho: grid value outside [-1, 1]");
        }
    }

    AdversarySearch search;
    search.kind = options.kind;
    search.seed = options.seed;
    bool first = true;
    for (std::size_t i = 0; i < rho_grid.size(); ++i) {
        CfGapOptions opts = options;
        opts.seed = derive_seed(options.seed, i);
        const auto r = cf_gap(predictor, base.with_rho(rho_grid[i]), x, a, opts);
        search.profile.push_back({rho_grid[i], r.distance.value});
        const bool better =
            first || r.distance.value > search.gap_star ||
            (r.distance.value == search.gap_star && std::abs(rho_grid[i]) < std::abs(search.rho_star));
        if (better) {
            search.rho_star = rho_grid[i];
            search.gap_star = r.distance.value;
            search.method = r.method;
            first = false;
        }
    }
    return search;
}

MarginalInvarianceReport observational_invariance(const BinaryTreatmentGaussianModel& base,
                                                  const std::vector<double>& rho_grid,
                                                  std::size_t n, std::uint64_t seed) {
    if (rho_grid.size() < 2) throw InputError("observational_invariance: need at least two worlds");
    if (n < 2) throw InputError("observational_invariance: n must be at least 2");

    struct WorldSample {
        std::vector<double> pooled, arm0, arm1;
        double arm1_share = 0.0;
    };
    std::vector<WorldSample> worlds;
    for (std::size_t i = 0; i < rho_grid.size(); ++i) {
        const auto draws = sample_cross_world(base.with_rho(rho_grid[i]), n, derive_seed(seed, i));
        WorldSample w;
        for (const auto& d : draws) {
            w.pooled.push_back(d.x);
            (d.a == 0 ? w.arm0 : w.arm1).push_back(d.x);
        }
        w.arm1_share = static_cast<double>(w.arm1.size()) / static_cast<double>(n);
        std::sort(w.pooled.begin(), w.pooled.end());
        std::sort(w.arm0.begin(), w.arm0.end());
        std::sort(w.arm1.begin(), w.arm1.end());
        worlds.push_back(std::move(w));
    }

    MarginalInvarianceReport report;
    report.rho_grid = rho_grid;
    report.n = n;
    report.seed = seed;
    for (std::size_t i = 0; i < worlds.size(); ++i) {
        for (std::size_t j = i + 1; j < worlds.size(); ++j) {
            report.max_pairwise_ks_pooled_x =
                std::max(report.max_pairwise_ks_pooled_x,
                         ks_distance_sorted(worlds[i].pooled, worlds[j].pooled));
            report.max_pairwise_ks_arm0 = std::max(
                report.max_pairwise_ks_arm0, ks_distance_sorted(worlds[i].arm0, worlds[j].arm0));
            report.max_pairwise_ks_arm1 = std::max(
                report.max_pairwise_ks_arm1, ks_distance_sorted(worlds[i].arm1, worlds[j].arm1));
            report.max_arm_share_diff = std::max(
                report.max_arm_share_diff, std::abs(worlds[i].arm1_share - worlds[j].arm1_share));
        }
    }
    return report;
}

StrongAssumptionReport strong_assumption_implication_check(std::size_t n, std::uint64_t seed,
                                                           double sigma, double length_scale) {
    if (n < 100) throw InputError("strong_assumption_implication_check: n must be at least 100");

    StrongAssumptionReport report;
    report.sigma = sigma;
    report.length_scale = length_scale;
    report.n = n;
    report.seed = seed;

    // Shared-error world X = A + eps: the rho = 1 corner with matched arms.
    BinaryTreatmentGaussianModel shared;
    shared.mu0 = 0.0;
    shared.mu1 = 1.0;
    shared.sigma0 = sigma;
    shared.sigma1 = sigma;
    shared.rho = 1.0;
    shared.p1 = 0.5;

    // The analyst knows p(a, x): population covariances, not estimates.
    // var(A) = p(1-p); cov(A, X) = (mu1 - mu0) var(A) since X = X0 + A(mu1 - mu0).
    const double var_a = shared.p1 * (1.0 - shared.p1);
    const double cov_ax = (shared.mu1 - shared.mu0) * var_a;
    report.coefficients = linear_cancellation_coefficients(var_a, cov_ax);
    const LinearAxPredictor cancel(report.coefficients.lambda1, report.coefficients.lambda2);

    report.dp_gap_shared = dp_gap(cancel, shared, n, derive_seed(seed, 0)).value;

    // Probe conditioning points sampled from the world itself.
    const auto probes = sample_cross_world(shared, 5, derive_seed(seed, 1));
    for (const auto& p : probes) {
        report.probe_x.push_back(p.x);
        report.probe_a.push_back(p.a);
        report.cf_gap_shared.push_back(cf_gap(cancel, shared, p.x, p.a).distance.value);
    }

    // GP-error world on two levels: observationally identical per level, but
    // the error at level 0 and the error at level 1 are no longer the same
    // random variable.
    GpTreatmentModel gp;
    gp.kernel_variance = sigma * sigma;
    gp.length_scale = length_scale;
    gp.treatment_grid = {0.0, 1.0};
    report.gp_cross_world_corr = gp_cross_world_correlation(gp, 0.0, 1.0);
    report.observational_ks_per_level =
        gp_observational_equivalence_check(gp, n, derive_seed(seed, 2)).ks_per_level;

    BinaryTreatmentGaussianModel gp_world = shared.with_rho(report.gp_cross_world_corr);
    for (std::size_t i = 0; i < report.probe_x.size(); ++i) {
        report.cf_gap_gp.push_back(
            cf_gap(cancel, gp_world, report.probe_x[i], report.probe_a[i]).distance.value);
    }

    const CoinFlipPredictor coin(0.5);
    report.coin_flip_cf_gap =
        cf_gap(coin, gp_world, report.probe_x.front(), report.probe_a.front()).distance.value;
    return report;
}

}  // namespace crossworld
