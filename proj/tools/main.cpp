// crossworld: cross-world causal models, parity/counterfactual fairness gaps,
// adversarial world-search, quantile repair, and the rank experiment, behind
// one seeded command-line tool.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crossworld/admg.hpp"
#include "crossworld/errors.hpp"
#include "crossworld/experiments.hpp"
#include "crossworld/fairness.hpp"
#include "crossworld/keyval.hpp"
#include "crossworld/math.hpp"
#include "crossworld/models.hpp"
#include "crossworld/predictors.hpp"
#include "crossworld/repair.hpp"

namespace cw = crossworld;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240817;

struct ModelFlags {
    double mu0 = 0.0, mu1 = 0.0, sigma0 = 1.0, sigma1 = 1.0, rho = 0.0, p1 = 0.5;

    void attach(CLI::App* cmd, bool with_rho = true) {
        cmd->add_option("--mu0", mu0, "Mean of X0");
        cmd->add_option("--mu1", mu1, "Mean of X1");
        cmd->add_option("--sigma0", sigma0, "Std dev of X0");
        cmd->add_option("--sigma1", sigma1, "Std dev of X1");
        if (with_rho) cmd->add_option("--rho", rho, "Cross-world correlation");
        cmd->add_option("--p1", p1, "P(A = 1)");
    }

    cw::BinaryTreatmentGaussianModel build() const {
        cw::BinaryTreatmentGaussianModel m;
        m.mu0 = mu0;
        m.mu1 = mu1;
        m.sigma0 = sigma0;
        m.sigma1 = sigma1;
        m.rho = rho;
        m.p1 = p1;
        m.validate();
        return m;
    }

    json to_json(bool with_rho = true) const {
        json j{{"mu0", mu0}, {"mu1", mu1}, {"sigma0", sigma0}, {"sigma1", sigma1}, {"p1", p1}};
        if (with_rho) j["rho"] = rho;
        return j;
    }
};

// Accepts either the flat key=value form (`predictor=po_linear lambda1=1`)
// or a bare kind as the first token (`po_linear lambda1=1`).
cw::KeyVals parse_predictor_spec(const std::string& text) {
    std::istringstream in(text);
    std::string first;
    in >> first;
    std::string normalized = text;
    if (!first.empty() && first.find('=') == std::string::npos) {
        normalized = "predictor=" + first + text.substr(first.size());
    }
    return cw::KeyVals::parse(normalized);
}

std::vector<double> parse_grid(const std::string& text) {
    // start:stop:step, inclusive of stop up to a half-step tolerance.
    std::vector<double> values;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw cw::InputError("grid: expected start:stop:step, got '" + text + "'");
    }
    const double start = std::stod(text.substr(0, c1));
    const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (!(step > 0.0)) throw cw::InputError("grid: step must be positive");
    for (double v = start; v <= stop + step / 2.0; v += step) {
        values.push_back(std::min(v, stop));
    }
    return values;
}

std::vector<double> parse_level_list(const std::string& text) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (!token.empty()) values.push_back(std::stod(token));
    }
    if (values.empty()) throw cw::InputError("levels: empty list '" + text + "'");
    return values;
}

cw::DistanceKind parse_distance(const std::string& name) {
    if (name == "ks") return cw::DistanceKind::kolmogorov_smirnov;
    if (name == "w1") return cw::DistanceKind::wasserstein1;
    throw cw::InputError("distance: expected ks or w1, got '" + name + "'");
}

void emit(const json& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw cw::InputError("cannot write '" + out_path + "'");
    out << payload.dump(2) << '\n';
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (!token.empty()) parts.push_back(token);
    }
    return parts;
}

int run(int argc, char** argv) {
    CLI::App app{"cross-world fairness workbench"};
    app.require_subcommand(1);

    // ---- dsep ----------------------------------------------------------
    auto* dsep = app.add_subcommand("dsep", "d-separation query over an edge-list graph");
    std::string graph_path, src, dst, given;
    dsep->add_option("--graph", graph_path, "edge-list file: `A -> X` / `A <-> U` lines")
        ->required();
    dsep->add_option("--src", src)->required();
    dsep->add_option("--dst", dst)->required();
    dsep->add_option("--given", given, "comma-separated conditioning set");
    dsep->callback([&] {
        const auto g = cw::Admg::load(graph_path);
        std::set<std::string> conditioning;
        for (const auto& name : split_commas(given)) conditioning.insert(name);
        std::cout << (cw::d_separated(g, src, dst, conditioning) ? "true" : "false") << '\n';
    });

    // ---- sample ---------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "draw cross-world units as CSV (a,x0,x1,x)");
    ModelFlags sample_model;
    sample_model.attach(sample);
    std::size_t sample_n = 1000;
    std::uint64_t sample_seed = kDefaultSeed;
    std::string sample_out;
    sample->add_option("--n", sample_n, "number of draws");
    sample->add_option("--seed", sample_seed, "rng seed");
    sample->add_option("--out", sample_out, "CSV path (stdout when omitted)");
    sample->callback([&] {
        const auto draws = cw::sample_cross_world(sample_model.build(), sample_n, sample_seed);
        if (sample_out.empty()) {
            cw::write_samples_csv(std::cout, draws);
            return;
        }
        std::ofstream out(sample_out);
        if (!out) throw cw::InputError("cannot write '" + sample_out + "'");
        cw::write_samples_csv(out, draws);
        json config{{"subcommand", "sample"}, {"model", sample_model.to_json()},
                    {"n", sample_n},          {"seed", sample_seed},
                    {"out", sample_out}};
        emit(json{{"config", config}, {"rows", draws.size()}}, "");
    });

    // ---- posterior ------------------------------------------------------
    auto* posterior = app.add_subcommand("posterior", "law of the unobserved arm given (a, x)");
    ModelFlags post_model;
    post_model.attach(posterior);
    int post_arm = 0;
    double post_x = 0.0;
    std::string post_out;
    posterior->add_option("--a", post_arm, "observed arm")->required();
    posterior->add_option("--x", post_x, "observed value")->required();
    posterior->add_option("--out", post_out, "JSON path (stdout when omitted)");
    posterior->callback([&] {
        const auto law = cw::counterfactual_posterior(post_model.build(), post_arm, post_x);
        json config{{"subcommand", "posterior"}, {"model", post_model.to_json()},
                    {"a", post_arm},             {"x", post_x}};
        emit(json{{"config", config},
                  {"mean", law.mean},
                  {"variance", law.variance},
                  {"point_mass", law.point_mass()}},
             post_out);
    });

    // ---- dp-gap ---------------------------------------------------------
    auto* dp = app.add_subcommand("dp-gap", "distance between the arm-conditional score laws");
    ModelFlags dp_model;
    dp_model.attach(dp);
    std::string dp_pred = "standardized", dp_distance = "ks", dp_out;
    std::size_t dp_n = 100000;
    std::uint64_t dp_seed = kDefaultSeed;
    dp->add_option("--predictor", dp_pred, "flat predictor spec");
    dp->add_option("--n", dp_n);
    dp->add_option("--seed", dp_seed);
    dp->add_option("--distance", dp_distance, "ks or w1");
    dp->add_option("--out", dp_out);
    dp->callback([&] {
        const auto model = dp_model.build();
        const auto predictor = cw::make_predictor(parse_predictor_spec(dp_pred), model);
        const auto gap = cw::dp_gap(*predictor, model, dp_n, dp_seed, parse_distance(dp_distance));
        json config{{"subcommand", "dp-gap"}, {"model", dp_model.to_json()},
                    {"predictor", dp_pred},   {"n", dp_n},
                    {"seed", dp_seed},        {"distance", dp_distance}};
        emit(json{{"config", config},
                  {"metric", "dp_gap"},
                  {"value", gap.value},
                  {"method", "monte_carlo"},
                  {"n_samples", dp_n},
                  {"seed", dp_seed}},
             dp_out);
    });

    // ---- cf-gap ---------------------------------------------------------
    auto* cf = app.add_subcommand("cf-gap", "factual vs counterfactual score law at (x, a)");
    ModelFlags cf_model;
    cf_model.attach(cf);
    std::string cf_pred = "standardized", cf_distance = "ks", cf_method = "auto", cf_out;
    double cf_x = 0.0, cf_window = 0.01;
    int cf_a = 0;
    std::size_t cf_n = 1000000, cf_aggregate_points = 50;
    std::uint64_t cf_seed = kDefaultSeed;
    cf->add_option("--x", cf_x)->required();
    cf->add_option("--a", cf_a)->required();
    cf->add_option("--predictor", cf_pred);
    cf->add_option("--method", cf_method, "auto, closed or mc");
    cf->add_option("--n", cf_n, "joint draws for the mc route");
    cf->add_option("--window", cf_window, "|X_a - x| acceptance window (mc route)");
    cf->add_option("--seed", cf_seed);
    cf->add_option("--distance", cf_distance);
    cf->add_option("--aggregate-points", cf_aggregate_points,
                   "conditioning points for the aggregate report (0 disables)");
    cf->add_option("--out", cf_out);
    cf->callback([&] {
        const auto model = cf_model.build();
        const auto predictor = cw::make_predictor(parse_predictor_spec(cf_pred), model);
        cw::CfGapOptions options;
        options.kind = parse_distance(cf_distance);
        options.n = cf_n;
        options.window = cf_window;
        options.seed = cf_seed;
        if (cf_method == "closed") {
            options.method = cw::GapMethod::closed_form;
        } else if (cf_method == "mc") {
            options.method = cw::GapMethod::monte_carlo;
        } else if (cf_method != "auto") {
            throw cw::InputError("method: expected auto, closed or mc");
        }
        const auto result = cw::cf_gap(*predictor, model, cf_x, cf_a, options);
        json config{{"subcommand", "cf-gap"}, {"model", cf_model.to_json()},
                    {"predictor", cf_pred},   {"x", cf_x},
                    {"a", cf_a},              {"method", cf_method},
                    {"n", cf_n},              {"window", cf_window},
                    {"seed", cf_seed},        {"distance", cf_distance},
                    {"aggregate_points", cf_aggregate_points}};
        json payload{{"config", config},
                     {"metric", "cf_gap"},
                     {"value", result.distance.value},
                     {"method", cw::to_string(result.method)},
                     {"n_samples", result.n_used},
                     {"seed", cf_seed},
                     {"conditioning_point", json{{"x", cf_x}, {"a", cf_a}}}};
        if (cf_aggregate_points > 0) {
            const auto agg = cw::cf_gap_aggregate(*predictor, model, cf_aggregate_points,
                                                  cw::derive_seed(cf_seed, 999), options);
            payload["aggregate"] = json{{"mean_gap", agg.mean_gap},
                                        {"max_gap", agg.max_gap},
                                        {"n_points", agg.n_points}};
        }
        emit(payload, cf_out);
    });

    // ---- adversary ------------------------------------------------------
    auto* adv = app.add_subcommand("adversary",
                                   "sweep the unidentified correlation for the worst world");
    ModelFlags adv_model;
    adv_model.attach(adv, /*with_rho=*/false);
    std::string adv_pred = "standardized", adv_grid = "-0.99:0.99:0.11", adv_distance = "ks";
    std::string adv_out, adv_profile_csv, adv_method = "auto";
    double adv_x = 0.0;
    int adv_a = 0;
    std::size_t adv_n = 1000000;
    std::uint64_t adv_seed = kDefaultSeed;
    adv->add_option("--x", adv_x)->required();
    adv->add_option("--a", adv_a)->required();
    adv->add_option("--grid", adv_grid, "rho grid as start:stop:step");
    adv->add_option("--predictor", adv_pred);
    adv->add_option("--method", adv_method);
    adv->add_option("--n", adv_n);
    adv->add_option("--seed", adv_seed);
    adv->add_option("--distance", adv_distance);
    adv->add_option("--profile-csv", adv_profile_csv, "write the rho -> gap profile as CSV");
    adv->add_option("--out", adv_out);
    adv->callback([&] {
        const auto base = adv_model.build();
        const auto predictor = cw::make_predictor(parse_predictor_spec(adv_pred), base);
        cw::CfGapOptions options;
        options.kind = parse_distance(adv_distance);
        options.n = adv_n;
        options.seed = adv_seed;
        if (adv_method == "closed") {
            options.method = cw::GapMethod::closed_form;
        } else if (adv_method == "mc") {
            options.method = cw::GapMethod::monte_carlo;
        } else if (adv_method != "auto") {
            throw cw::InputError("method: expected auto, closed or mc");
        }
        const auto grid = parse_grid(adv_grid);
        const auto search = cw::adversary_rho(*predictor, base, adv_x, adv_a, grid, options);

        json profile = json::array();
        for (const auto& point : search.profile) {
            profile.push_back(json{{"rho", point.rho}, {"gap", point.gap}});
        }
        json config{{"subcommand", "adversary"},
                    {"model", adv_model.to_json(false)},
                    {"predictor", adv_pred},
                    {"x", adv_x},
                    {"a", adv_a},
                    {"grid", adv_grid},
                    {"method", adv_method},
                    {"n", adv_n},
                    {"seed", adv_seed},
                    {"distance", adv_distance}};
        emit(json{{"config", config},
                  {"metric", "cf_gap"},
                  {"rho_star", search.rho_star},
                  {"gap_star", search.gap_star},
                  {"method", cw::to_string(search.method)},
                  {"seed", adv_seed},
                  {"conditioning_point", json{{"x", adv_x}, {"a", adv_a}}},
                  {"rho_profile", profile}},
             adv_out);
        if (!adv_profile_csv.empty()) {
            std::ofstream csv(adv_profile_csv);
            if (!csv) throw cw::InputError("cannot write '" + adv_profile_csv + "'");
            csv << "rho,gap\n";
            csv.precision(17);
            for (const auto& point : search.profile) csv << point.rho << ',' << point.gap << '\n';
        }
    });

    // ---- strong-assumption ----------------------------------------------
    auto* strong = app.add_subcommand(
        "strong-assumption", "shared-error world vs gp-error world comparison");
    std::size_t strong_n = 100000;
    std::uint64_t strong_seed = kDefaultSeed;
    double strong_sigma = 1.0, strong_ls = 1.0;
    std::string strong_out;
    strong->add_option("--n", strong_n);
    strong->add_option("--seed", strong_seed);
    strong->add_option("--sigma", strong_sigma, "error std dev in both worlds");
    strong->add_option("--length-scale", strong_ls, "gp kernel length scale");
    strong->add_option("--out", strong_out);
    strong->callback([&] {
        const auto report =
            cw::strong_assumption_implication_check(strong_n, strong_seed, strong_sigma, strong_ls);
        json config{{"subcommand", "strong-assumption"},
                    {"n", strong_n},
                    {"seed", strong_seed},
                    {"sigma", strong_sigma},
                    {"length_scale", strong_ls}};
        emit(json{{"config", config},
                  {"cancellation", json{{"lambda1", report.coefficients.lambda1},
                                        {"lambda2", report.coefficients.lambda2}}},
                  {"shared_error_world",
                   json{{"dp_gap", report.dp_gap_shared},
                        {"probe_x", report.probe_x},
                        {"probe_a", report.probe_a},
                        {"cf_gap", report.cf_gap_shared}}},
                  {"gp_world", json{{"cross_world_corr", report.gp_cross_world_corr},
                                    {"observational_ks_per_level",
                                     report.observational_ks_per_level},
                                    {"cf_gap", report.cf_gap_gp}}},
                  {"coin_flip_cf_gap", report.coin_flip_cf_gap}},
             strong_out);
    });

    // ---- gp-demo ----------------------------------------------------------
    auto* gpd = app.add_subcommand("gp-demo",
                                   "per-level observational equivalence of shared vs gp errors");
    double gp_variance = 1.0, gp_ls = 1.0;
    std::string gp_grid = "0,1", gp_out;
    std::size_t gp_n = 100000;
    std::uint64_t gp_seed = kDefaultSeed;
    gpd->add_option("--variance", gp_variance, "kernel variance");
    gpd->add_option("--length-scale", gp_ls);
    gpd->add_option("--grid", gp_grid, "comma-separated treatment levels");
    gpd->add_option("--n", gp_n);
    gpd->add_option("--seed", gp_seed);
    gpd->add_option("--out", gp_out);
    gpd->callback([&] {
        cw::GpTreatmentModel gp;
        gp.kernel_variance = gp_variance;
        gp.length_scale = gp_ls;
        gp.treatment_grid = parse_level_list(gp_grid);
        const auto report = cw::gp_observational_equivalence_check(gp, gp_n, gp_seed);
        json cross = json::array();
        for (const auto& pair : report.cross_world) {
            cross.push_back(json{{"a", pair.a},
                                 {"a_prime", pair.a_prime},
                                 {"shared_error_corr", pair.shared_error_corr},
                                 {"gp_corr", pair.gp_corr}});
        }
        json config{{"subcommand", "gp-demo"}, {"variance", gp_variance},
                    {"length_scale", gp_ls},   {"grid", gp_grid},
                    {"n", gp_n},               {"seed", gp_seed}};
        emit(json{{"config", config},
                  {"levels", report.grid},
                  {"ks_per_level", report.ks_per_level},
                  {"ks_critical_1pct", report.ks_critical_1pct},
                  {"cross_world", cross},
                  {"n_samples", report.n},
                  {"seed", report.seed}},
             gp_out);
    });

    // ---- repair -----------------------------------------------------------
    auto* rep = app.add_subcommand("repair", "quantile-map scores onto the pooled marginal");
    std::string rep_train, rep_scores, rep_mode = "empirical", rep_out;
    rep->add_option("--train", rep_train, "training CSV (a,y_bar)")->required();
    rep->add_option("--scores", rep_scores, "CSV of scores to repair (defaults to --train)");
    rep->add_option("--mode", rep_mode, "empirical or gaussian");
    rep->add_option("--out", rep_out, "output CSV (stdout when omitted)");
    rep->callback([&] {
        cw::RepairMode mode;
        if (rep_mode == "empirical") {
            mode = cw::RepairMode::empirical;
        } else if (rep_mode == "gaussian") {
            mode = cw::RepairMode::gaussian;
        } else {
            throw cw::InputError("mode: expected empirical or gaussian");
        }
        std::ifstream train_in(rep_train);
        if (!train_in) throw cw::InputError("cannot open '" + rep_train + "'");
        const auto train = cw::read_arm_scores_csv(train_in);
        const auto model = cw::fit_repair(train, mode);

        auto rows = train;
        if (!rep_scores.empty()) {
            std::ifstream scores_in(rep_scores);
            if (!scores_in) throw cw::InputError("cannot open '" + rep_scores + "'");
            rows = cw::read_arm_scores_csv(scores_in);
        }
        const auto repaired = cw::repair_batch(model, rows);
        if (rep_out.empty()) {
            cw::write_repaired_csv(std::cout, rows, repaired);
        } else {
            std::ofstream out(rep_out);
            if (!out) throw cw::InputError("cannot write '" + rep_out + "'");
            cw::write_repaired_csv(out, rows, repaired);
        }
    });

    // ---- rank-experiment ---------------------------------------------------
    auto* rank = app.add_subcommand("rank-experiment",
                                    "train/test split, OLS, repair, rank grid and plot");
    std::string rank_data, rank_subgroup = "race=Black", rank_dir = ".";
    std::size_t rank_synth_n = 0, rank_n_test = 40;
    double rank_noise = cw::kSynthDefaultNoiseSd;
    std::uint64_t rank_seed = kDefaultSeed;
    rank->add_option("--data", rank_data, "dataset CSV (race,sex,LSAT,UGPA,ZFYA)");
    rank->add_option("--synth", rank_synth_n, "generate a synthetic dataset of this size instead");
    rank->add_option("--noise-sd", rank_noise, "synthetic outcome noise");
    rank->add_option("--subgroup", rank_subgroup, "column=value, e.g. race=Black");
    rank->add_option("--n-test", rank_n_test);
    rank->add_option("--seed", rank_seed);
    rank->add_option("--out-dir", rank_dir);
    rank->callback([&] {
        if (rank_data.empty() == (rank_synth_n == 0)) {
            throw cw::InputError("rank-experiment: pass exactly one of --data or --synth");
        }
        const auto eq = rank_subgroup.find('=');
        if (eq == std::string::npos) {
            throw cw::InputError("subgroup: expected column=value");
        }
        const std::string column = rank_subgroup.substr(0, eq);
        const std::string value = rank_subgroup.substr(eq + 1);

        const cw::Dataset data = rank_data.empty()
                                     ? cw::synth_lawschool(rank_synth_n,
                                                           cw::derive_seed(rank_seed, 777),
                                                           rank_noise)
                                     : cw::load_csv(rank_data);
        const auto result = cw::rank_experiment(data, column, value, rank_n_test, rank_seed);

        const std::filesystem::path dir(rank_dir);
        std::filesystem::create_directories(dir);
        {
            std::ofstream csv(dir / "ranks.csv");
            if (!csv) throw cw::InputError("cannot write ranks.csv");
            cw::write_ranks_csv(csv, result.grid);
        }
        cw::emit_rank_plot(result.grid, dir / "rankplot.svg");

        json config{{"subcommand", "rank-experiment"},
                    {"data", rank_data},
                    {"synth", rank_synth_n},
                    {"noise_sd", rank_noise},
                    {"subgroup", rank_subgroup},
                    {"n_test", rank_n_test},
                    {"seed", rank_seed},
                    {"out_dir", rank_dir}};
        const json payload{{"config", config},
                           {"n_rows", result.n_rows},
                           {"n_train", result.n_train},
                           {"n_subgroup_test", result.n_subgroup_test},
                           {"seed", result.seed},
                           {"spearman", json{{"full_vs_true", result.spearman_full_vs_true},
                                             {"listing2f_vs_true", result.spearman_l2f_vs_true},
                                             {"listing2t_vs_true", result.spearman_l2t_vs_true},
                                             {"listing2f_vs_full", result.spearman_l2f_vs_full}}}};
        {
            std::ofstream js(dir / "spearman.json");
            if (!js) throw cw::InputError("cannot write spearman.json");
            js << payload.dump(2) << '\n';
        }
        emit(payload, "");
    });

    // ---- synth-data ---------------------------------------------------------
    auto* synth = app.add_subcommand("synth-data", "emit a synthetic admissions dataset");
    std::size_t synth_n = 10000;
    std::uint64_t synth_seed = kDefaultSeed;
    double synth_noise = cw::kSynthDefaultNoiseSd;
    std::string synth_out;
    synth->add_option("--n", synth_n);
    synth->add_option("--seed", synth_seed);
    synth->add_option("--noise-sd", synth_noise);
    synth->add_option("--out", synth_out, "CSV path (stdout when omitted)");
    synth->callback([&] {
        const auto data = cw::synth_lawschool(synth_n, synth_seed, synth_noise);
        if (synth_out.empty()) {
            cw::write_dataset(std::cout, data);
            return;
        }
        cw::save_csv(data, synth_out);
        json config{{"subcommand", "synth-data"},
                    {"n", synth_n},
                    {"seed", synth_seed},
                    {"noise_sd", synth_noise},
                    {"out", synth_out}};
        emit(json{{"config", config}, {"rows", data.size()}}, "");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help requested: text to stdout, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cw::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const cw::ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
