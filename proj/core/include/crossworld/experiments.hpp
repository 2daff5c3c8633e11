#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace crossworld {

// ---------------------------------------------------------------------------
// Law-school style dataset
// ---------------------------------------------------------------------------

struct LawRow {
    std::string race;
    std::string sex;
    double lsat = 0.0;
    double ugpa = 0.0;
    double zfya = 0.0;
};

struct Dataset {
    std::vector<LawRow> rows;
    std::size_t size() const { return rows.size(); }
};

/// Requires columns race, sex, LSAT, UGPA, ZFYA (extra columns are ignored).
/// Missing columns raise a schema error naming the column; bad numerics raise
/// a row error with the line number.
Dataset load_csv(const std::filesystem::path& path);
Dataset read_dataset(std::istream& in);
void save_csv(const Dataset& data, const std::filesystem::path& path);
void write_dataset(std::ostream& out, const Dataset& data);

/// Synthetic stand-in for the real admissions data: categorical race/sex,
/// LSAT and UGPA correlated through a latent aptitude, and an outcome that is
/// exactly affine in the one-hot design plus Gaussian noise. The default
/// noise level is calibrated so an in-sample OLS fit lands at R^2 ~ 0.22
/// (between 0.1 and 0.3), a deliberately weak signal.
inline constexpr double kSynthDefaultNoiseSd = 0.6;
Dataset synth_lawschool(std::size_t n, std::uint64_t seed,
                        double noise_sd = kSynthDefaultNoiseSd);

// ---------------------------------------------------------------------------
// Ordinary least squares on the fixed design
// ---------------------------------------------------------------------------

/// Affine model over the design: one-hot race and sex (first level
/// alphabetically is the reference) plus LSAT and UGPA.
struct LinearModel {
    double intercept = 0.0;
    std::vector<std::string> column_names;  // design order
    std::vector<double> coefficients;       // aligned with column_names
    std::vector<std::string> race_levels;   // sorted; first is reference
    std::vector<std::string> sex_levels;

    double predict(const LawRow& row) const;
    double r_squared = 0.0;  // in-sample
};

/// ZFYA ~ race + sex + LSAT + UGPA. Throws InputError when the design is
/// rank-deficient (listing the collinear columns) or the data has fewer rows
/// than design columns plus one.
LinearModel ols_fit(const Dataset& data);

// ---------------------------------------------------------------------------
// Rank statistics
// ---------------------------------------------------------------------------

/// Spearman rank correlation: Pearson over average ranks (ties averaged).
/// Throws InputError on length mismatch, length < 2, or constant input.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

/// 1-based ranks with ties broken by first occurrence; always a permutation
/// of 1..n.
std::vector<int> first_occurrence_ranks(const std::vector<double>& values);

struct RankGrid {
    std::vector<std::string> method_names;  // bottom row first
    std::vector<std::vector<int>> ranks;    // per method, columns in display order
};

void write_ranks_csv(std::ostream& out, const RankGrid& grid);

/// Self-contained SVG: one circle per (unit, method) point, one segment per
/// equal-rank link between consecutive rows. No timestamps, byte-stable.
std::string render_rank_plot_svg(const RankGrid& grid);
void emit_rank_plot(const RankGrid& grid, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// End-to-end rank experiment
// ---------------------------------------------------------------------------

struct RankExperimentResult {
    RankGrid grid;  // rows bottom-to-top: True, Listing2T, Listing2F, Full
    double spearman_full_vs_true = 0.0;
    double spearman_l2f_vs_true = 0.0;
    double spearman_l2t_vs_true = 0.0;
    double spearman_l2f_vs_full = 0.0;
    std::size_t n_rows = 0;
    std::size_t n_train = 0;
    std::size_t n_subgroup_test = 0;  // pool the subsample came from
    std::size_t n_test = 0;
    std::uint64_t seed = 0;
};

/// Half/half train-test split; OLS on train; two quantile-repair models fit
/// on train (one over fitted values, one over true outcomes); a subsample of
/// n_test subgroup rows scored four ways: raw OLS (Full), repaired OLS
/// (Listing2F), repaired truth (Listing2T), observed outcome (True). Grid
/// columns are sorted by the True ranks. subgroup_column is "race" or "sex".
RankExperimentResult rank_experiment(const Dataset& data, const std::string& subgroup_column,
                                     const std::string& subgroup_value, std::size_t n_test,
                                     std::uint64_t seed);

}  // namespace crossworld
