#include "crossworld/math.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "crossworld/errors.hpp"

namespace crossworld {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;
}  // namespace

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// Wichura (1988), algorithm AS241, PPND16. Relative error below 1e-15 over
// the full open interval.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InputError("normal_quantile: p must lie strictly inside (0, 1)");
    }
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) *
                        r +
                    4.5921953931549871457e4) *
                       r +
                   1.3731693765509461125e4) *
                      r +
                  1.9715909503065514427e3) *
                     r +
                 1.3314166789178437745e2) *
                    r +
                3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) *
                        r +
                    2.1213794301586595867e4) *
                       r +
                   5.3941960214247511077e3) *
                      r +
                  6.8718700749205790830e2) *
                     r +
                 4.2313330701600911252e1) *
                    r +
                1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) *
                         r +
                     1.27045825245236838258e0) *
                        r +
                    3.64784832476320460504e0) *
                       r +
                   5.76949722146069140550e0) *
                      r +
                  4.63033784615654529590e0) *
                     r +
                 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) *
                         r +
                     1.48103976427480074590e-1) *
                        r +
                    6.89767334985100004550e-1) *
                       r +
                   1.67638483018380384940e0) *
                      r +
                  2.05319162663775882187e0) *
                     r +
                 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) *
                         r +
                     2.65321895265761230930e-2) *
                        r +
                    2.96560571828504891230e-1) *
                       r +
                   1.78482653991729133580e0) *
                      r +
                  5.46378491116411436990e0) *
                     r +
                 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) *
                         r +
                     7.86869131145613259100e-4) *
                        r +
                    1.48753612908506148525e-2) *
                       r +
                   1.36929880922735805310e-1) *
                      r +
                  5.99832206555887937690e-1) *
                     r +
                 1.0);
    }
    return (q < 0.0) ? -value : value;
}

double GaussianLaw::sd() const { return std::sqrt(variance); }

double GaussianLaw::cdf(double y) const {
    if (point_mass()) return (y >= mean) ? 1.0 : 0.0;
    return normal_cdf((y - mean) / sd());
}

double GaussianLaw::quantile(double u) const {
    if (point_mass()) {
        if (!(u >= 0.0 && u <= 1.0)) throw InputError("GaussianLaw::quantile: u outside [0, 1]");
        return mean;
    }
    return mean + sd() * normal_quantile(u);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    // splitmix64 finalizer over the stream-offset root.
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() {
    // 53-bit mantissa, shifted into the open interval.
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() { return normal_quantile(uniform01()); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw InputError("Rng::below: n must be positive");
    // Rejection against the largest multiple of n, unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return ks_distance_sorted(a, b);
}

double ks_distance_sorted(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw InputError("ks_distance: empty sample");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        // Advance both ecdfs past every copy of v before comparing.
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_distance_vs_cdf(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw InputError("ks_distance_vs_cdf: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

double ks_point_mass_vs_cdf(double t, const std::function<double(double)>& cdf) {
    const double g = cdf(t);
    return std::max(g, 1.0 - g);
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InputError("wasserstein1: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double total = 0.0;
    double prev = std::min(a[0], b[0]);
    while (i < a.size() || j < b.size()) {
        const double va = (i < a.size()) ? a[i] : std::numeric_limits<double>::infinity();
        const double vb = (j < b.size()) ? b[j] : std::numeric_limits<double>::infinity();
        const double v = std::min(va, vb);
        total += std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb) * (v - prev);
        prev = v;
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
    }
    return total;
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw InputError("mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw InputError("variance: need at least two values");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

double covariance(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw InputError("covariance: length mismatch");
    if (xs.size() < 2) throw InputError("covariance: need at least two values");
    const double mx = mean(xs);
    const double my = mean(ys);
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
    return s / static_cast<double>(xs.size() - 1);
}

}  // namespace crossworld
