#include "crossworld/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "crossworld/errors.hpp"
#include "crossworld/math.hpp"
#include "crossworld/repair.hpp"

namespace crossworld {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        // strip surrounding whitespace and simple quoting
        const auto b = field.find_first_not_of(" \t\"");
        const auto e = field.find_last_not_of(" \t\r\"");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_number(const std::string& text, const char* column, std::size_t lineno) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError("dataset line " + std::to_string(lineno) + ": column " + column +
                         " has bad numeric value '" + text + "'");
    }
}

}  // namespace

Dataset read_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("dataset: empty input");
    const auto header = split_csv_line(line);
    auto column = [&](const char* name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw InputError(std::string("dataset: missing column '") + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_race = column("race");
    const std::size_t c_sex = column("sex");
    const std::size_t c_lsat = column("LSAT");
    const std::size_t c_ugpa = column("UGPA");
    const std::size_t c_zfya = column("ZFYA");

    Dataset data;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < header.size()) {
            throw InputError("dataset line " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        LawRow row;
        row.race = fields[c_race];
        row.sex = fields[c_sex];
        if (row.race.empty() || row.sex.empty()) {
            throw InputError("dataset line " + std::to_string(lineno) + ": empty categorical value");
        }
        row.lsat = parse_number(fields[c_lsat], "LSAT", lineno);
        row.ugpa = parse_number(fields[c_ugpa], "UGPA", lineno);
        row.zfya = parse_number(fields[c_zfya], "ZFYA", lineno);
        data.rows.push_back(std::move(row));
    }
    return data;
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open dataset '" + path.string() + "'");
    return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& data) {
    out << "race,sex,LSAT,UGPA,ZFYA\n";
    out.precision(17);
    for (const auto& r : data.rows) {
        out << r.race << ',' << r.sex << ',' << r.lsat << ',' << r.ugpa << ',' << r.zfya << '\n';
    }
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write dataset '" + path.string() + "'");
    write_dataset(out, data);
}

Dataset synth_lawschool(std::size_t n, std::uint64_t seed, double noise_sd) {
    if (n < 10) throw InputError("synth_lawschool: n must be at least 10");
    if (!(noise_sd >= 0.0)) throw InputError("synth_lawschool: noise_sd must be nonnegative");

    struct RaceSpec {
        const char* name;
        double prob;
        double lsat_shift;
        double ugpa_shift;
        double zfya_effect;
    };
    // Alphabetical level order; "Asian" is the OLS reference level.
    static const RaceSpec kRaces[] = {
        {"Asian", 0.06, 1.0, 0.05, 0.05},   {"Black", 0.15, -2.5, -0.20, -0.15},
        {"Hispanic", 0.09, -1.5, -0.10, -0.10}, {"Other", 0.10, -0.5, -0.05, 0.0},
        {"White", 0.60, 0.5, 0.05, 0.10},
    };
    // Sex coded as in the admissions data.
    static const struct {
        const char* name;
        double prob;
        double lsat_shift;
        double zfya_effect;
    } kSexes[] = {{"1", 0.44, -0.3, 0.08}, {"2", 0.56, 0.3, -0.02}};

    // Outcome is exactly affine in the one-hot design; the latent aptitude t
    // enters only through LSAT and UGPA, keeping them correlated.
    constexpr double kZfyaOnLsat = 0.04;
    constexpr double kZfyaOnUgpa = 0.30;
    constexpr double kZfyaBase = -2.5;

    Rng rng(seed);
    Dataset data;
    data.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ur = rng.uniform01();
        double acc = 0.0;
        const RaceSpec* race = &kRaces[0];
        for (const auto& r : kRaces) {
            acc += r.prob;
            if (ur < acc) {
                race = &r;
                break;
            }
        }
        const auto& sex = rng.bernoulli(kSexes[1].prob) ? kSexes[1] : kSexes[0];

        const double t = rng.normal();
        LawRow row;
        row.race = race->name;
        row.sex = sex.name;
        row.lsat = 36.0 + race->lsat_shift + sex.lsat_shift + 4.0 * t + 2.5 * rng.normal();
        row.ugpa = 3.1 + race->ugpa_shift + 0.25 * t + 0.35 * rng.normal();
        row.zfya = kZfyaBase + race->zfya_effect + sex.zfya_effect + kZfyaOnLsat * row.lsat +
                   kZfyaOnUgpa * row.ugpa + noise_sd * rng.normal();
        data.rows.push_back(std::move(row));
    }
    return data;
}

namespace {

std::vector<std::string> sorted_levels(const Dataset& data, bool sex) {
    std::set<std::string> s;
    for (const auto& r : data.rows) s.insert(sex ? r.sex : r.race);
    return {s.begin(), s.end()};
}

// One-hot features in design order, excluding the intercept.
std::vector<double> design_features(const LinearModel& model, const LawRow& row) {
    std::vector<double> f;
    f.reserve(model.column_names.size());
    auto level_index = [](const std::vector<std::string>& levels, const std::string& v,
                          const char* what) {
        const auto it = std::find(levels.begin(), levels.end(), v);
        if (it == levels.end()) {
            throw InputError(std::string("predict: unseen ") + what + " level '" + v + "'");
        }
        return it - levels.begin();
    };
    const auto ri = level_index(model.race_levels, row.race, "race");
    for (std::size_t k = 1; k < model.race_levels.size(); ++k) {
        f.push_back(static_cast<std::ptrdiff_t>(k) == ri ? 1.0 : 0.0);
    }
    const auto si = level_index(model.sex_levels, row.sex, "sex");
    for (std::size_t k = 1; k < model.sex_levels.size(); ++k) {
        f.push_back(static_cast<std::ptrdiff_t>(k) == si ? 1.0 : 0.0);
    }
    f.push_back(row.lsat);
    f.push_back(row.ugpa);
    return f;
}

}  // namespace

double LinearModel::predict(const LawRow& row) const {
    const auto f = design_features(*this, row);
    double y = intercept;
    for (std::size_t k = 0; k < f.size(); ++k) y += coefficients[k] * f[k];
    return y;
}

LinearModel ols_fit(const Dataset& data) {
    if (data.rows.empty()) throw InputError("ols_fit: empty dataset");

    LinearModel model;
    model.race_levels = sorted_levels(data, false);
    model.sex_levels = sorted_levels(data, true);
    for (std::size_t k = 1; k < model.race_levels.size(); ++k) {
        model.column_names.push_back("race=" + model.race_levels[k]);
    }
    for (std::size_t k = 1; k < model.sex_levels.size(); ++k) {
        model.column_names.push_back("sex=" + model.sex_levels[k]);
    }
    model.column_names.push_back("LSAT");
    model.column_names.push_back("UGPA");

    const std::size_t p = model.column_names.size() + 1;  // with intercept
    const std::size_t n = data.rows.size();
    if (n < p + 1) {
        throw InputError("ols_fit: need at least " + std::to_string(p + 1) + " rows, got " +
                         std::to_string(n));
    }

    Eigen::MatrixXd design(n, p);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        design(static_cast<Eigen::Index>(i), 0) = 1.0;
        const auto f = design_features(model, data.rows[i]);
        for (std::size_t k = 0; k < f.size(); ++k) {
            design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + 1)) = f[k];
        }
        y(static_cast<Eigen::Index>(i)) = data.rows[i].zfya;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < static_cast<Eigen::Index>(p)) {
        // The rejected pivots name the collinear columns.
        std::string victims;
        const auto perm = qr.colsPermutation().indices();
        for (Eigen::Index k = qr.rank(); k < static_cast<Eigen::Index>(p); ++k) {
            const Eigen::Index col = perm(k);
            if (!victims.empty()) victims += ", ";
            victims += (col == 0) ? "(intercept)" : model.column_names[col - 1];
        }
        throw InputError("ols_fit: rank-deficient design; collinear columns: " + victims);
    }

    const Eigen::VectorXd beta = qr.solve(y);
    model.intercept = beta(0);
    model.coefficients.assign(beta.data() + 1, beta.data() + p);

    const double sst = (y.array() - y.mean()).square().sum();
    const double ssr = (y - design * beta).squaredNorm();
    model.r_squared = (sst > 0.0) ? 1.0 - ssr / sst : 0.0;
    return model;
}

namespace {

/// Average ranks (ties share the mean of their positions), 1-based.
std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw InputError("spearman: length mismatch");
    if (xs.size() < 2) throw InputError("spearman: need at least two pairs");
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    // Pearson over ranks via centered sums of squares: tie-free ranks are
    // integers, so small cases come out exact.
    const double mx = mean(rx);
    const double my = mean(ry);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mx;
        const double dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw InputError("spearman: constant input");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<int> first_occurrence_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    // Stable sort: among ties, the earlier row keeps the smaller rank.
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<int> ranks(n);
    for (std::size_t k = 0; k < n; ++k) ranks[idx[k]] = static_cast<int>(k + 1);
    return ranks;
}

void write_ranks_csv(std::ostream& out, const RankGrid& grid) {
    out << "unit";
    for (const auto& name : grid.method_names) out << ',' << name;
    out << '\n';
    if (grid.ranks.empty()) return;
    const std::size_t n = grid.ranks.front().size();
    for (std::size_t c = 0; c < n; ++c) {
        out << (c + 1);
        for (const auto& row : grid.ranks) out << ',' << row[c];
        out << '\n';
    }
}

std::string render_rank_plot_svg(const RankGrid& grid) {
    if (grid.method_names.empty() || grid.ranks.size() != grid.method_names.size()) {
        throw InputError("render_rank_plot_svg: malformed grid");
    }
    const std::size_t m = grid.method_names.size();
    const std::size_t n = grid.ranks.front().size();
    for (const auto& row : grid.ranks) {
        if (row.size() != n) throw InputError("render_rank_plot_svg: ragged grid");
    }

    const int left = 110, right = 30, top = 30, bottom = 50;
    const int col_step = 18, row_step = 70;
    const int width = left + right + col_step * static_cast<int>(n - 1);
    const int height = top + bottom + row_step * static_cast<int>(m - 1);

    auto x_of = [&](int rank) { return left + col_step * (rank - 1); };
    // Bottom row is method 0.
    auto y_of = [&](std::size_t method) {
        return height - bottom - row_step * static_cast<int>(method);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // Links first so the points sit on top: unit at display column c moves
    // from its rank in row i to its rank in row i+1.
    for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t c = 0; c < n; ++c) {
            svg << "<line x1=\"" << x_of(grid.ranks[i][c]) << "\" y1=\"" << y_of(i) << "\" x2=\""
                << x_of(grid.ranks[i + 1][c]) << "\" y2=\"" << y_of(i + 1)
                << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < n; ++c) {
            svg << "<circle cx=\"" << x_of(grid.ranks[i][c]) << "\" cy=\"" << y_of(i)
                << "\" r=\"3\" fill=\"white\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        svg << "<text x=\"" << (left - 12) << "\" y=\"" << (y_of(i) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\">"
            << grid.method_names[i] << "</text>\n";
    }
    svg << "<text x=\"" << (left + (width - left - right) / 2) << "\" y=\"" << (height - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">rank</text>\n";
    svg << "<text x=\"" << x_of(1) << "\" y=\"" << (height - 30)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1</text>\n";
    svg << "<text x=\"" << x_of(static_cast<int>(n)) << "\" y=\"" << (height - 30)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << n
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void emit_rank_plot(const RankGrid& grid, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write plot '" + path.string() + "'");
    out << render_rank_plot_svg(grid);
    if (!out) throw InputError("failed writing plot '" + path.string() + "'");
}

RankExperimentResult rank_experiment(const Dataset& data, const std::string& subgroup_column,
                                     const std::string& subgroup_value, std::size_t n_test,
                                     std::uint64_t seed) {
    if (n_test < 2) throw InputError("rank_experiment: n_test must be at least 2");
    if (subgroup_column != "race" && subgroup_column != "sex") {
        throw InputError("rank_experiment: subgroup column must be race or sex");
    }
    const std::size_t n = data.rows.size();
    if (n < 4) throw InputError("rank_experiment: dataset too small");

    auto arm_of = [&](const LawRow& r) { return subgroup_column == "race" ? r.race : r.sex; };

    // Uniform half/half split.
    Rng rng(seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t n_train = static_cast<std::size_t>(std::llround(static_cast<double>(n) / 2.0));
    for (std::size_t i = 0; i < n_train; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }

    Dataset train;
    for (std::size_t i = 0; i < n_train; ++i) train.rows.push_back(data.rows[idx[i]]);
    const LinearModel model = ols_fit(train);

    std::vector<std::pair<std::string, double>> fitted_by_arm, truth_by_arm;
    for (const auto& row : train.rows) {
        fitted_by_arm.emplace_back(arm_of(row), model.predict(row));
        truth_by_arm.emplace_back(arm_of(row), row.zfya);
    }
    const RepairModel listing2f = fit_repair(fitted_by_arm, RepairMode::empirical);
    const RepairModel listing2t = fit_repair(truth_by_arm, RepairMode::empirical);

    std::vector<std::size_t> pool;
    for (std::size_t i = n_train; i < n; ++i) {
        if (arm_of(data.rows[idx[i]]) == subgroup_value) pool.push_back(idx[i]);
    }
    if (pool.size() < n_test) {
        throw InputError("rank_experiment: subgroup '" + subgroup_value + "' has only " +
                         std::to_string(pool.size()) + " test rows; " + std::to_string(n_test) +
                         " required");
    }
    for (std::size_t i = 0; i < n_test; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }

    std::vector<double> full, l2f, l2t, truth;
    for (std::size_t i = 0; i < n_test; ++i) {
        const LawRow& row = data.rows[pool[i]];
        const double prediction = model.predict(row);
        full.push_back(prediction);
        l2f.push_back(listing2f.repair(arm_of(row), prediction));
        l2t.push_back(listing2t.repair(arm_of(row), row.zfya));
        truth.push_back(row.zfya);
    }

    RankExperimentResult result;
    result.n_rows = n;
    result.n_train = n_train;
    result.n_subgroup_test = pool.size();
    result.n_test = n_test;
    result.seed = seed;
    result.spearman_full_vs_true = spearman(full, truth);
    result.spearman_l2f_vs_true = spearman(l2f, truth);
    result.spearman_l2t_vs_true = spearman(l2t, truth);
    result.spearman_l2f_vs_full = spearman(l2f, full);

    const auto r_true = first_occurrence_ranks(truth);
    const auto r_l2t = first_occurrence_ranks(l2t);
    const auto r_l2f = first_occurrence_ranks(l2f);
    const auto r_full = first_occurrence_ranks(full);

    // Display columns sorted by the True ranks.
    std::vector<std::size_t> order(n_test);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return r_true[a] < r_true[b]; });

    result.grid.method_names = {"True", "Listing2T", "Listing2F", "Full"};
    for (const auto* ranks : {&r_true, &r_l2t, &r_l2f, &r_full}) {
        std::vector<int> row;
        row.reserve(n_test);
        for (const std::size_t u : order) row.push_back((*ranks)[u]);
        result.grid.ranks.push_back(std::move(row));
    }
    return result;
}

}  // namespace crossworld
