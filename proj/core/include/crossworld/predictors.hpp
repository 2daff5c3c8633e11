#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crossworld/keyval.hpp"
#include "crossworld/math.hpp"
#include "crossworld/models.hpp"

namespace crossworld {

// ---------------------------------------------------------------------------
// Score-function family
// ---------------------------------------------------------------------------

/// A unit as seen from one world: the treatment in that world, the covariate
/// value under that treatment, and the full potential-outcome pair for
/// predictors that read the cross-world vector directly.
struct WorldUnit {
    int arm = 0;
    double x = 0.0;
    double x0 = 0.0;
    double x1 = 0.0;

    static WorldUnit factual(const PotentialOutcomeDraw& d) { return {d.a, d.x, d.x0, d.x1}; }
    static WorldUnit flipped(const PotentialOutcomeDraw& d) {
        return {1 - d.a, d.a == 0 ? d.x1 : d.x0, d.x0, d.x1};
    }
};

/// score = intercept + slope * x, per arm. Predictors affine in x admit
/// closed-form fairness gaps (Gaussian pushforwards stay Gaussian).
struct AffineScore {
    double intercept = 0.0;
    double slope = 1.0;
    double at(double x) const { return intercept + slope * x; }
};

class Predictor {
  public:
    virtual ~Predictor() = default;
    virtual std::string name() const = 0;

    /// Score the unit in the given world. `rng` carries the unit's background
    /// randomness; evaluating two worlds of one unit with identically seeded
    /// generators shares that randomness across worlds.
    virtual double score(const WorldUnit& unit, Rng& rng) const = 0;

    virtual bool deterministic() const { return true; }

    /// True when the score is a function of the potential-outcome vector (or
    /// of unit-level randomness) alone, so interventions on the treatment
    /// cannot move it: counterfactually fair by construction.
    virtual bool cross_world_invariant() const { return false; }

    /// Affine representation of the score as a function of x for a fixed arm,
    /// when one exists.
    virtual std::optional<AffineScore> affine_given_arm(int arm) const {
        (void)arm;
        return std::nullopt;
    }
};

// ---------------------------------------------------------------------------
// Concrete predictors
// ---------------------------------------------------------------------------

/// (x - mu_a) / sigma_a: equalizes the two arm distributions exactly, so
/// demographic parity holds whatever the cross-world correlation does.
class StandardizedPredictor final : public Predictor {
  public:
    explicit StandardizedPredictor(const BinaryTreatmentGaussianModel& model);
    std::string name() const override { return "standardized"; }
    double score(const WorldUnit& unit, Rng&) const override;
    std::optional<AffineScore> affine_given_arm(int arm) const override;

  private:
    BinaryTreatmentGaussianModel model_;
};

/// lambda1 * a + lambda2 * x + lambda3.
class LinearAxPredictor final : public Predictor {
  public:
    LinearAxPredictor(double lambda1, double lambda2, double lambda3 = 0.0);
    std::string name() const override { return "linear"; }
    double score(const WorldUnit& unit, Rng&) const override;
    std::optional<AffineScore> affine_given_arm(int arm) const override;
    double lambda1() const { return lambda1_; }
    double lambda2() const { return lambda2_; }

  private:
    double lambda1_, lambda2_, lambda3_;
};

/// lambda1 * x0 + lambda2 * x1: reads only the potential-outcome vector.
class PotentialOutcomeLinearPredictor final : public Predictor {
  public:
    /// require_positive enforces lambda1, lambda2 > 0 (the monotone-dominance
    /// setting); violations throw InputError.
    PotentialOutcomeLinearPredictor(double lambda1, double lambda2, bool require_positive = false);
    std::string name() const override { return "po_linear"; }
    double score(const WorldUnit& unit, Rng&) const override;
    bool cross_world_invariant() const override { return true; }

  private:
    double lambda1_, lambda2_;
};

/// Bernoulli(p), independent of everything about the unit.
class CoinFlipPredictor final : public Predictor {
  public:
    explicit CoinFlipPredictor(double p);
    std::string name() const override { return "coin_flip"; }
    double score(const WorldUnit&, Rng& rng) const override;
    bool deterministic() const override { return false; }
    bool cross_world_invariant() const override { return true; }

  private:
    double p_;
};

// ---------------------------------------------------------------------------
// Quantile-transform predictor
// ---------------------------------------------------------------------------

/// Per-arm conditional cdfs F_{x|a}; strictly increasing on their support.
class ArmCdfFamily {
  public:
    virtual ~ArmCdfFamily() = default;
    virtual double cdf(int arm, double x) const = 0;
    virtual double support_min(int) const { return -std::numeric_limits<double>::infinity(); }
    virtual double support_max(int) const { return std::numeric_limits<double>::infinity(); }
};

class GaussianArmCdfs final : public ArmCdfFamily {
  public:
    explicit GaussianArmCdfs(const BinaryTreatmentGaussianModel& model) : model_(model) {
        model_.validate();
    }
    double cdf(int arm, double x) const override {
        return normal_cdf((x - model_.mu(arm)) / model_.sigma(arm));
    }

  private:
    BinaryTreatmentGaussianModel model_;
};

/// Per-arm empirical cdfs over stored samples; support is the sample range.
class EmpiricalArmCdfs final : public ArmCdfFamily {
  public:
    EmpiricalArmCdfs(std::vector<double> arm0, std::vector<double> arm1);
    double cdf(int arm, double x) const override;
    double support_min(int arm) const override;
    double support_max(int arm) const override;

  private:
    std::vector<double> sorted_[2];
};

struct RosenblattScore {
    double value = 0.0;
    bool clamped = false;  // x fell outside the arm's support
};

/// h(F_{x|a}(x)). The intermediate u = F_{x|a}(x) is uniform on [0, 1] and
/// independent of the arm whenever x is drawn from that arm's law, so the
/// output satisfies demographic parity for any monotone h. Out-of-support x
/// clamps u to the nearest endpoint and flags it.
RosenblattScore rosenblatt_dp_score(const ArmCdfFamily& cdfs, int arm, double x,
                                    const std::function<double(double)>& h);

class RosenblattDpPredictor final : public Predictor {
  public:
    RosenblattDpPredictor(std::shared_ptr<const ArmCdfFamily> cdfs,
                          std::function<double(double)> h, std::string h_name = "custom");

    /// h = identity: scores are the per-arm quantile levels.
    static RosenblattDpPredictor uniform(const BinaryTreatmentGaussianModel& model);
    /// h = standard-normal quantile: reproduces the standardized score for
    /// Gaussian arms.
    static RosenblattDpPredictor gaussianized(const BinaryTreatmentGaussianModel& model);

    std::string name() const override { return "rosenblatt_" + h_name_; }
    double score(const WorldUnit& unit, Rng&) const override;

  private:
    std::shared_ptr<const ArmCdfFamily> cdfs_;
    std::function<double(double)> h_;
    std::string h_name_;
};

// ---------------------------------------------------------------------------
// Free-function constructions
// ---------------------------------------------------------------------------

double standardized_score(const BinaryTreatmentGaussianModel& model, int arm, double x);

struct CancellationCoefficients {
    double lambda1 = 0.0;  // coefficient on A
    double lambda2 = 1.0;  // coefficient on X; fixed to 1 to resolve scale
};

/// Coefficients making cov(A, lambda1 A + lambda2 X) vanish: lambda1 =
/// -cov_ax / cov_aa with lambda2 = 1. For X = A + eps this is X - A.
CancellationCoefficients linear_cancellation_coefficients(double cov_aa, double cov_ax);

double potential_outcome_score(double lambda1, double lambda2, double x0, double x1);

/// Bernoulli(p) deterministic in the seed.
int coin_flip_score(double p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Path-specific construction over {A -> X -> Z; A -> Z}
// ---------------------------------------------------------------------------

/// Linear structural equations X = f_X(A, U_x), Z = f_Z(A, X, U_z).
struct PathSpecificModel {
    struct FxCoefficients {
        double intercept = 0.0;
        double on_a = 0.0;
        double on_u = 1.0;
    } f_x;
    struct FzCoefficients {
        double intercept = 0.0;
        double on_a = 0.0;
        double on_x = 0.0;
        double on_u = 1.0;
    } f_z;
    // Aggregation weights for the allowed inputs; summation by default.
    double weight_x = 1.0;
    double weight_z = 1.0;

    double f_x_eval(double a, double u_x) const;
    double f_z_eval(double a, double x, double u_z) const;
};

/// The mediated path A -> X -> Z carries the factual treatment; the direct
/// edge A -> Z is broken, its tail pinned to the baseline arm. Returns
/// weight_x * x + weight_z * z_star.
double path_specific_score(const PathSpecificModel& model, double a, double u_x, double u_z,
                           double baseline_arm);

// ---------------------------------------------------------------------------
// Config-driven construction
// ---------------------------------------------------------------------------

/// Builds a predictor from a flat spec such as `predictor=standardized` or
/// `predictor=po_linear lambda1=1 lambda2=1`. Known kinds: standardized,
/// linear, po_linear, rosenblatt (params h=uniform|gaussian), coin_flip
/// (param p).
std::unique_ptr<Predictor> make_predictor(const KeyVals& spec,
                                          const BinaryTreatmentGaussianModel& model);

}  // namespace crossworld
