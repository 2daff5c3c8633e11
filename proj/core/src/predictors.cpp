#include "crossworld/predictors.hpp"

#include <algorithm>
#include <cmath>

#include "crossworld/errors.hpp"

namespace crossworld {

StandardizedPredictor::StandardizedPredictor(const BinaryTreatmentGaussianModel& model)
    : model_(model) {
    model_.validate();
}

double StandardizedPredictor::score(const WorldUnit& unit, Rng&) const {
    return standardized_score(model_, unit.arm, unit.x);
}

std::optional<AffineScore> StandardizedPredictor::affine_given_arm(int arm) const {
    const double s = model_.sigma(arm);
    return AffineScore{-model_.mu(arm) / s, 1.0 / s};
}

LinearAxPredictor::LinearAxPredictor(double lambda1, double lambda2, double lambda3)
    : lambda1_(lambda1), lambda2_(lambda2), lambda3_(lambda3) {
    if (!std::isfinite(lambda1) || !std::isfinite(lambda2) || !std::isfinite(lambda3)) {
        throw InputError("LinearAxPredictor: coefficients must be finite");
    }
}

double LinearAxPredictor::score(const WorldUnit& unit, Rng&) const {
    return lambda1_ * unit.arm + lambda2_ * unit.x + lambda3_;
}

std::optional<AffineScore> LinearAxPredictor::affine_given_arm(int arm) const {
    return AffineScore{lambda1_ * arm + lambda3_, lambda2_};
}

PotentialOutcomeLinearPredictor::PotentialOutcomeLinearPredictor(double lambda1, double lambda2,
                                                                 bool require_positive)
    : lambda1_(lambda1), lambda2_(lambda2) {
    if (!std::isfinite(lambda1) || !std::isfinite(lambda2)) {
        throw InputError("PotentialOutcomeLinearPredictor: coefficients must be finite");
    }
    if (require_positive && (lambda1 <= 0.0 || lambda2 <= 0.0)) {
        throw InputError("PotentialOutcomeLinearPredictor: positive-coefficients mode requires "
                         "lambda1, lambda2 > 0");
    }
}

double PotentialOutcomeLinearPredictor::score(const WorldUnit& unit, Rng&) const {
    return potential_outcome_score(lambda1_, lambda2_, unit.x0, unit.x1);
}

CoinFlipPredictor::CoinFlipPredictor(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("CoinFlipPredictor: p must lie in [0, 1]");
}

double CoinFlipPredictor::score(const WorldUnit&, Rng& rng) const {
    return rng.bernoulli(p_) ? 1.0 : 0.0;
}

EmpiricalArmCdfs::EmpiricalArmCdfs(std::vector<double> arm0, std::vector<double> arm1) {
    if (arm0.empty() || arm1.empty()) throw InputError("EmpiricalArmCdfs: empty arm sample");
    sorted_[0] = std::move(arm0);
    sorted_[1] = std::move(arm1);
    std::sort(sorted_[0].begin(), sorted_[0].end());
    std::sort(sorted_[1].begin(), sorted_[1].end());
}

double EmpiricalArmCdfs::cdf(int arm, double x) const {
    if (arm != 0 && arm != 1) throw InputError("EmpiricalArmCdfs: arm must be 0 or 1");
    const auto& v = sorted_[arm];
    const auto it = std::upper_bound(v.begin(), v.end(), x);
    return static_cast<double>(it - v.begin()) / static_cast<double>(v.size());
}

double EmpiricalArmCdfs::support_min(int arm) const { return sorted_[arm].front(); }
double EmpiricalArmCdfs::support_max(int arm) const { return sorted_[arm].back(); }

RosenblattScore rosenblatt_dp_score(const ArmCdfFamily& cdfs, int arm, double x,
                                    const std::function<double(double)>& h) {
    RosenblattScore out;
    double clamped_x = x;
    if (x < cdfs.support_min(arm)) {
        clamped_x = cdfs.support_min(arm);
        out.clamped = true;
    } else if (x > cdfs.support_max(arm)) {
        clamped_x = cdfs.support_max(arm);
        out.clamped = true;
    }
    const double u = std::clamp(cdfs.cdf(arm, clamped_x), 0.0, 1.0);
    out.value = h(u);
    return out;
}

RosenblattDpPredictor::RosenblattDpPredictor(std::shared_ptr<const ArmCdfFamily> cdfs,
                                             std::function<double(double)> h, std::string h_name)
    : cdfs_(std::move(cdfs)), h_(std::move(h)), h_name_(std::move(h_name)) {
    if (!cdfs_) throw InputError("RosenblattDpPredictor: null cdf family");
}

RosenblattDpPredictor RosenblattDpPredictor::uniform(const BinaryTreatmentGaussianModel& model) {
    return RosenblattDpPredictor(std::make_shared<GaussianArmCdfs>(model),
                                 [](double u) { return u; }, "uniform");
}

RosenblattDpPredictor RosenblattDpPredictor::gaussianized(
    const BinaryTreatmentGaussianModel& model) {
    // Guard the quantile at u in {0, 1}; reachable only through clamping.
    auto h = [](double u) {
        const double eps = 1e-15;
        return normal_quantile(std::clamp(u, eps, 1.0 - eps));
    };
    return RosenblattDpPredictor(std::make_shared<GaussianArmCdfs>(model), h, "gaussian");
}

double RosenblattDpPredictor::score(const WorldUnit& unit, Rng&) const {
    return rosenblatt_dp_score(*cdfs_, unit.arm, unit.x, h_).value;
}

double standardized_score(const BinaryTreatmentGaussianModel& model, int arm, double x) {
    model.validate();
    if (arm != 0 && arm != 1) throw InputError("standardized_score: arm must be 0 or 1");
    return (x - model.mu(arm)) / model.sigma(arm);
}

CancellationCoefficients linear_cancellation_coefficients(double cov_aa, double cov_ax) {
    if (!(cov_aa > 0.0)) {
        throw InputError("linear_cancellation_coefficients: cov_aa must be positive");
    }
    return {-cov_ax / cov_aa, 1.0};
}

double potential_outcome_score(double lambda1, double lambda2, double x0, double x1) {
    return lambda1 * x0 + lambda2 * x1;
}

int coin_flip_score(double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("coin_flip_score: p must lie in [0, 1]");
    Rng rng(seed);
    return rng.bernoulli(p) ? 1 : 0;
}

double PathSpecificModel::f_x_eval(double a, double u_x) const {
    return f_x.intercept + f_x.on_a * a + f_x.on_u * u_x;
}

double PathSpecificModel::f_z_eval(double a, double x, double u_z) const {
    return f_z.intercept + f_z.on_a * a + f_z.on_x * x + f_z.on_u * u_z;
}

double path_specific_score(const PathSpecificModel& model, double a, double u_x, double u_z,
                           double baseline_arm) {
    const double x = model.f_x_eval(a, u_x);                    // A -> X -> Z stays open
    const double z_star = model.f_z_eval(baseline_arm, x, u_z);  // A -> Z pinned to baseline
    return model.weight_x * x + model.weight_z * z_star;
}

std::unique_ptr<Predictor> make_predictor(const KeyVals& spec,
                                          const BinaryTreatmentGaussianModel& model) {
    const std::string kind = spec.get_string("predictor", "");
    if (kind.empty()) throw InputError("predictor spec: missing 'predictor' key");

    if (kind == "standardized") {
        return std::make_unique<StandardizedPredictor>(model);
    }
    if (kind == "linear") {
        return std::make_unique<LinearAxPredictor>(spec.get_double("lambda1", 0.0),
                                                   spec.get_double("lambda2", 1.0),
                                                   spec.get_double("lambda3", 0.0));
    }
    if (kind == "po_linear") {
        return std::make_unique<PotentialOutcomeLinearPredictor>(spec.get_double("lambda1", 1.0),
                                                                 spec.get_double("lambda2", 1.0));
    }
    if (kind == "rosenblatt") {
        const std::string h = spec.get_string("h", "uniform");
        if (h == "uniform") {
            return std::make_unique<RosenblattDpPredictor>(RosenblattDpPredictor::uniform(model));
        }
        if (h == "gaussian") {
            return std::make_unique<RosenblattDpPredictor>(
                RosenblattDpPredictor::gaussianized(model));
        }
        throw InputError("predictor spec: unknown rosenblatt map '" + h + "'");
    }
    if (kind == "coin_flip") {
        return std::make_unique<CoinFlipPredictor>(spec.get_double("p", 0.5));
    }
    throw InputError("predictor spec: unknown kind '" + kind + "'");
}

}  // namespace crossworld
