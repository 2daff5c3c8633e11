#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace crossworld {

// ---------------------------------------------------------------------------
// Gaussian primitives
// ---------------------------------------------------------------------------

double normal_pdf(double z);
double normal_cdf(double z);

/// Inverse standard normal cdf (Wichura's AS241, double precision).
/// Throws InputError unless 0 < p < 1.
double normal_quantile(double p);

/// A univariate Gaussian law, possibly degenerate (variance == 0 is a point
/// mass; |rho| = 1 posteriors land here).
struct GaussianLaw {
    double mean = 0.0;
    double variance = 1.0;

    bool point_mass() const { return variance == 0.0; }
    double sd() const;
    double cdf(double y) const;
    double quantile(double u) const;
};

// ---------------------------------------------------------------------------
// Seeded randomness
// ---------------------------------------------------------------------------

/// Deterministic substream derivation (splitmix64 over root ^ stream index).
/// Grid points, replicates and worker shards each get their own stream so
/// results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// mt19937_64 with inverse-cdf normal sampling. The normal draw consumes
/// exactly one uniform, so sample streams are reproducible bit-for-bit for a
/// given seed within a build.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on the open interval (0, 1).
    double uniform01();

    /// Standard normal via normal_quantile(uniform01()).
    double normal();

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 gen_;
};

// ---------------------------------------------------------------------------
// Distances between distributions
// ---------------------------------------------------------------------------

/// Two-sample Kolmogorov-Smirnov distance; samples need not share a size.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// Same, but both inputs must already be sorted ascending.
double ks_distance_sorted(const std::vector<double>& a, const std::vector<double>& b);

/// One-sample KS distance between a sample and an exact cdf.
double ks_distance_vs_cdf(std::vector<double> sample, const std::function<double(double)>& cdf);

/// KS distance between a point mass at t and a continuous law with cdf G:
/// max(G(t), 1 - G(t)).
double ks_point_mass_vs_cdf(double t, const std::function<double(double)>& cdf);

/// Empirical 1-Wasserstein distance, computed exactly as the integral of
/// |F_a - F_b| over the merged support. Sizes may differ.
double wasserstein1(std::vector<double> a, std::vector<double> b);

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // denominator n - 1
double covariance(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace crossworld
