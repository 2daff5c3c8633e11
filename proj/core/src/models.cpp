#include "crossworld/models.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <ostream>
#include <sstream>

#include "crossworld/errors.hpp"

namespace crossworld {

void BinaryTreatmentGaussianModel::validate() const {
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0) || !(sigma1 > 0.0) || !std::isfinite(sigma1)) {
        throw ModelError("BinaryTreatmentGaussianModel: sigma0 and sigma1 must be positive");
    }
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw ModelError("BinaryTreatmentGaussianModel: rho must lie in [-1, 1]");
    }
    if (!(p1 >= 0.0 && p1 <= 1.0)) {
        throw ModelError("BinaryTreatmentGaussianModel: p1 must lie in [0, 1]");
    }
    if (!std::isfinite(mu0) || !std::isfinite(mu1)) {
        throw ModelError("BinaryTreatmentGaussianModel: means must be finite");
    }
    // PSD of the implied 2x2 covariance is automatic given the above; keep
    // the determinant assertion as a tripwire.
    const double det = sigma0 * sigma0 * sigma1 * sigma1 * (1.0 - rho * rho);
    if (det < -1e-12) throw ModelError("BinaryTreatmentGaussianModel: covariance not PSD");
}

double BinaryTreatmentGaussianModel::mu(int arm) const { return arm == 0 ? mu0 : mu1; }
double BinaryTreatmentGaussianModel::sigma(int arm) const { return arm == 0 ? sigma0 : sigma1; }

BinaryTreatmentGaussianModel BinaryTreatmentGaussianModel::with_rho(double new_rho) const {
    BinaryTreatmentGaussianModel m = *this;
    m.rho = new_rho;
    return m;
}

BinaryTreatmentGaussianModel BinaryTreatmentGaussianModel::from_keyvals(const KeyVals& kv) {
    BinaryTreatmentGaussianModel m;
    m.mu0 = kv.get_double("mu0", m.mu0);
    m.mu1 = kv.get_double("mu1", m.mu1);
    m.sigma0 = kv.get_double("sigma0", m.sigma0);
    m.sigma1 = kv.get_double("sigma1", m.sigma1);
    m.rho = kv.get_double("rho", m.rho);
    m.p1 = kv.get_double("p1", m.p1);
    m.validate();
    return m;
}

KeyVals BinaryTreatmentGaussianModel::to_keyvals() const {
    KeyVals kv;
    auto put = [&](const char* key, double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        kv.set(key, s.str());
    };
    put("mu0", mu0);
    put("mu1", mu1);
    put("sigma0", sigma0);
    put("sigma1", sigma1);
    put("rho", rho);
    put("p1", p1);
    return kv;
}

std::vector<PotentialOutcomeDraw> sample_cross_world(const BinaryTreatmentGaussianModel& model,
                                                     std::size_t n, std::uint64_t seed) {
    model.validate();
    if (n == 0) throw InputError("sample_cross_world: n must be at least 1");

    Rng rng(seed);
    const double tail = std::sqrt(std::max(0.0, 1.0 - model.rho * model.rho));
    std::vector<PotentialOutcomeDraw> draws(n);
    for (auto& d : draws) {
        d.a = rng.bernoulli(model.p1) ? 1 : 0;
        const double z0 = rng.normal();
        const double z1 = rng.normal();
        d.x0 = model.mu0 + model.sigma0 * z0;
        d.x1 = model.mu1 + model.sigma1 * (model.rho * z0 + tail * z1);
        d.x = (d.a == 1) ? d.x1 : d.x0;
    }
    return draws;
}

GaussianLaw counterfactual_posterior(const BinaryTreatmentGaussianModel& model, int observed_arm,
                                     double x) {
    model.validate();
    if (observed_arm != 0 && observed_arm != 1) {
        throw InputError("counterfactual_posterior: observed_arm must be 0 or 1");
    }
    const int other = 1 - observed_arm;
    const double scale = model.sigma(other) / model.sigma(observed_arm);
    GaussianLaw law;
    law.mean = model.mu(other) + model.rho * scale * (x - model.mu(observed_arm));
    law.variance = model.sigma(other) * model.sigma(other) * (1.0 - model.rho * model.rho);
    if (std::abs(model.rho) == 1.0) law.variance = 0.0;  // exact point mass, not 1e-17 dust
    return law;
}

void write_samples_csv(std::ostream& out, const std::vector<PotentialOutcomeDraw>& draws) {
    out << "a,x0,x1,x\n";
    out.precision(17);
    for (const auto& d : draws) {
        out << d.a << ',' << d.x0 << ',' << d.x1 << ',' << d.x << '\n';
    }
}

void GpTreatmentModel::validate() const {
    if (!(kernel_variance > 0.0) || !std::isfinite(kernel_variance)) {
        throw ModelError("GpTreatmentModel: kernel variance must be positive");
    }
    if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
        throw ModelError("GpTreatmentModel: length scale must be positive");
    }
    if (treatment_grid.empty()) throw ModelError("GpTreatmentModel: empty treatment grid");

    const auto m = static_cast<Eigen::Index>(treatment_grid.size());
    Eigen::MatrixXd gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            gram(i, j) = kernel(treatment_grid[static_cast<std::size_t>(i)],
                                treatment_grid[static_cast<std::size_t>(j)]);
        }
    }
    gram.diagonal().array() += 1e-9;  // jitter tolerance
    if (Eigen::LLT<Eigen::MatrixXd>(gram).info() != Eigen::Success) {
        throw ModelError("GpTreatmentModel: Gram matrix not positive semi-definite");
    }
}

double GpTreatmentModel::kernel(double a, double a_prime) const {
    const double d = a - a_prime;
    return kernel_variance * std::exp(-d * d / (2.0 * length_scale * length_scale));
}

double gp_cross_world_correlation(const GpTreatmentModel& model, double a, double a_prime) {
    model.validate();
    return model.kernel(a, a_prime) / model.kernel(a, a);
}

std::vector<std::vector<double>> sample_gp_errors(const GpTreatmentModel& model, std::size_t n,
                                                  std::uint64_t seed) {
    model.validate();
    if (n == 0) throw InputError("sample_gp_errors: n must be at least 1");

    const auto m = static_cast<Eigen::Index>(model.treatment_grid.size());
    Eigen::MatrixXd gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            gram(i, j) = model.kernel(model.treatment_grid[static_cast<std::size_t>(i)],
                                      model.treatment_grid[static_cast<std::size_t>(j)]);
        }
    }
    gram.diagonal().array() += 1e-9;
    const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(gram).matrixL();

    Rng rng(seed);
    Eigen::VectorXd z(m);
    std::vector<std::vector<double>> out(n, std::vector<double>(static_cast<std::size_t>(m)));
    for (auto& row : out) {
        for (Eigen::Index i = 0; i < m; ++i) z(i) = rng.normal();
        const Eigen::VectorXd eps = chol * z;
        for (Eigen::Index i = 0; i < m; ++i) row[static_cast<std::size_t>(i)] = eps(i);
    }
    return out;
}

GpEquivalenceReport gp_observational_equivalence_check(const GpTreatmentModel& model,
                                                       std::size_t n, std::uint64_t seed) {
    model.validate();
    if (n < 2) throw InputError("gp_observational_equivalence_check: n must be at least 2");

    GpEquivalenceReport report;
    report.grid = model.treatment_grid;
    report.n = n;
    report.seed = seed;
    report.ks_critical_1pct = 1.63 * std::sqrt(2.0 / static_cast<double>(n));

    // Shared-error world: one eps per unit, reused at every level. Same
    // marginal variance as the GP by construction.
    const double sd = std::sqrt(model.kernel_variance);
    Rng shared_rng(derive_seed(seed, 0));
    std::vector<double> shared_eps(n);
    for (auto& e : shared_eps) e = sd * shared_rng.normal();

    const auto gp_eps = sample_gp_errors(model, n, derive_seed(seed, 1));

    for (std::size_t level = 0; level < model.treatment_grid.size(); ++level) {
        const double a = model.treatment_grid[level];
        std::vector<double> one_dim(n), gp(n);
        for (std::size_t i = 0; i < n; ++i) {
            one_dim[i] = a + shared_eps[i];
            gp[i] = a + gp_eps[i][level];
        }
        report.ks_per_level.push_back(ks_distance(std::move(one_dim), std::move(gp)));
    }

    for (std::size_t i = 0; i < model.treatment_grid.size(); ++i) {
        for (std::size_t j = i + 1; j < model.treatment_grid.size(); ++j) {
            const double a = model.treatment_grid[i];
            const double b = model.treatment_grid[j];
            report.cross_world.push_back({a, b, 1.0, gp_cross_world_correlation(model, a, b)});
        }
    }
    return report;
}

Example14Outcome example14_cross_world(int a, double u_x, double u_y) {
    if (a != 0 && a != 1) throw InputError("example14_cross_world: a must be 0 or 1");
    // Y_b = b + X_b + U_y with X_b = -b + U_x. Grouping the b terms first
    // keeps the cancellation exact in IEEE arithmetic, so y0 == y1 holds
    // bitwise and y == y_a by construction.
    auto potential_y = [&](double b) { return (b + -b) + u_x + u_y; };
    Example14Outcome out;
    out.x = -static_cast<double>(a) + u_x;
    out.y0 = potential_y(0.0);
    out.y1 = potential_y(1.0);
    out.y = (a == 1) ? out.y1 : out.y0;
    return out;
}

std::vector<Example14Draw> sample_example14(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InputError("sample_example14: n must be at least 1");
    Rng rng(seed);
    std::vector<Example14Draw> draws(n);
    for (auto& d : draws) {
        d.a = rng.bernoulli(0.5) ? 1 : 0;
        d.u_x = rng.normal();
        d.u_y = rng.normal();
        const Example14Outcome o = example14_cross_world(d.a, d.u_x, d.u_y);
        d.x = o.x;
        d.y = o.y;
        d.y0 = o.y0;
        d.y1 = o.y1;
    }
    return draws;
}

}  // namespace crossworld
