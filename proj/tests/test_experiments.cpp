#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "crossworld/errors.hpp"
#include "crossworld/experiments.hpp"
#include "crossworld/math.hpp"

using namespace crossworld;

TEST_CASE("dataset reader: happy path, schema error, row error") {
    std::istringstream good("race,sex,LSAT,UGPA,ZFYA\nBlack,1,36.5,3.1,0.2\nWhite,2,40,3.8,-0.1\n"
                            "Asian,1,38,3.5,0.9\n");
    const auto data = read_dataset(good);
    REQUIRE(data.size() == 3);
    CHECK(data.rows[0].race == "Black");
    CHECK(data.rows[2].zfya == doctest::Approx(0.9));

    std::istringstream missing("race,sex,LSAT,UGPA\nBlack,1,36.5,3.1\n");
    CHECK_THROWS_WITH_AS(read_dataset(missing), doctest::Contains("ZFYA"), InputError);

    std::istringstream bad_row("race,sex,LSAT,UGPA,ZFYA\nBlack,1,36.5,oops,0.2\n");
    CHECK_THROWS_WITH_AS(read_dataset(bad_row), doctest::Contains("line 2"), InputError);

    // Extra columns are tolerated and located by name.
    std::istringstream extra("id,ZFYA,race,sex,LSAT,UGPA\n7,0.5,Black,1,36,3.2\n");
    CHECK(read_dataset(extra).rows[0].lsat == 36.0);
}

TEST_CASE("synthetic dataset round-trips through csv io") {
    const auto data = synth_lawschool(200, 61);
    std::ostringstream out;
    write_dataset(out, data);
    std::istringstream in(out.str());
    const auto back = read_dataset(in);
    REQUIRE(back.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(back.rows[i].race == data.rows[i].race);
        CHECK(back.rows[i].lsat == data.rows[i].lsat);
        CHECK(back.rows[i].zfya == data.rows[i].zfya);
    }
}

TEST_CASE("synthetic dataset is deterministic in the seed") {
    const auto a = synth_lawschool(500, 62);
    const auto b = synth_lawschool(500, 62);
    const auto c = synth_lawschool(500, 63);
    REQUIRE(a.size() == b.size());
    bool all_equal = true, any_diff_c = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        all_equal = all_equal && a.rows[i].zfya == b.rows[i].zfya && a.rows[i].race == b.rows[i].race;
        any_diff_c = any_diff_c || a.rows[i].zfya != c.rows[i].zfya;
    }
    CHECK(all_equal);
    CHECK(any_diff_c);
    CHECK_THROWS_AS(synth_lawschool(5, 1), InputError);
}

TEST_CASE("noiseless synthetic data is fit exactly") {
    const auto data = synth_lawschool(5000, 64, 0.0);
    const auto model = ols_fit(data);
    CHECK(model.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& row : data.rows) {
        REQUIRE(std::abs(model.predict(row) - row.zfya) < 1e-6);
    }
    // Generator coefficients on the numeric columns.
    REQUIRE(model.column_names[model.column_names.size() - 2] == "LSAT");
    CHECK(model.coefficients[model.coefficients.size() - 2] == doctest::Approx(0.04).epsilon(1e-6));
    CHECK(model.coefficients.back() == doctest::Approx(0.30).epsilon(1e-6));
}

TEST_CASE("default noise hits the calibrated weak-signal window") {
    for (const unsigned seed : {65u, 66u}) {
        const auto model = ols_fit(synth_lawschool(10000, seed));
        CHECK(model.r_squared > 0.1);
        CHECK(model.r_squared < 0.3);
    }
}

TEST_CASE("ols on a hand-built orthogonal design") {
    // Two races, two sexes, orthogonalized numeric columns.
    Dataset data;
    const double beta_race = 0.5, beta_sex = -0.25, beta_lsat = 0.1, beta_ugpa = 2.0;
    int k = 0;
    for (const char* race : {"a", "b"}) {
        for (const char* sex : {"1", "2"}) {
            for (const double lsat : {30.0, 40.0}) {
                for (const double ugpa : {2.0, 4.0}) {
                    LawRow row;
                    row.race = race;
                    row.sex = sex;
                    row.lsat = lsat;
                    row.ugpa = ugpa;
                    row.zfya = 1.0 + beta_race * (race[0] == 'b') + beta_sex * (sex[0] == '2') +
                               beta_lsat * lsat + beta_ugpa * ugpa;
                    data.rows.push_back(row);
                    ++k;
                }
            }
        }
    }
    const auto model = ols_fit(data);
    CHECK(model.intercept == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(model.column_names ==
            std::vector<std::string>{"race=b", "sex=2", "LSAT", "UGPA"});
    CHECK(model.coefficients[0] == doctest::Approx(beta_race).epsilon(1e-9));
    CHECK(model.coefficients[1] == doctest::Approx(beta_sex).epsilon(1e-9));
    CHECK(model.coefficients[2] == doctest::Approx(beta_lsat).epsilon(1e-9));
    CHECK(model.coefficients[3] == doctest::Approx(beta_ugpa).epsilon(1e-9));
    for (const auto& row : data.rows) {
        REQUIRE(std::abs(model.predict(row) - row.zfya) < 1e-9);
    }
}

TEST_CASE("ols recovers generator coefficients within three standard errors") {
    const auto data = synth_lawschool(10000, 67);
    const auto model = ols_fit(data);
    // Residual sd ~ 0.6; LSAT column sd ~ 4.8 over n = 1e4 draws puts the
    // standard error near 0.6 / (4.8 sqrt(1e4)) ~ 1.3e-3.
    CHECK(model.coefficients[model.coefficients.size() - 2] ==
          doctest::Approx(0.04).epsilon(0.15));
    CHECK(model.coefficients.back() == doctest::Approx(0.30).epsilon(0.15));
}

TEST_CASE("ols is invariant to row order") {
    auto data = synth_lawschool(2000, 68);
    const auto model = ols_fit(data);
    std::reverse(data.rows.begin(), data.rows.end());
    const auto reversed = ols_fit(data);
    CHECK(model.intercept == doctest::Approx(reversed.intercept).epsilon(1e-9));
    for (std::size_t i = 0; i < model.coefficients.size(); ++i) {
        REQUIRE(std::abs(model.coefficients[i] - reversed.coefficients[i]) < 1e-9);
    }
}

TEST_CASE("ols rejects a rank-deficient design naming the columns") {
    auto data = synth_lawschool(100, 69);
    for (auto& row : data.rows) row.ugpa = 2.0 * row.lsat;  // collinear with LSAT
    CHECK_THROWS_WITH_AS(ols_fit(data), doctest::Contains("collinear"), InputError);
}

TEST_CASE("spearman basics and the worked micro-example") {
    CHECK(spearman({1, 2, 3, 4}, {1, 2, 3, 4}) == doctest::Approx(1.0));
    CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == doctest::Approx(0.8));
    CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == 0.8);  // exact rank arithmetic

    CHECK_THROWS_AS(spearman({1, 2}, {1}), InputError);
    CHECK_THROWS_AS(spearman({1, 1, 1}, {1, 2, 3}), InputError);

    // Invariant under strictly increasing transforms.
    Rng rng(70);
    std::vector<double> xs(200), exp_xs(200);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = rng.normal();
        exp_xs[i] = std::exp(xs[i]);
    }
    CHECK(spearman(xs, exp_xs) == doctest::Approx(1.0));
}

TEST_CASE("first-occurrence ranks form a permutation and break ties by position") {
    const auto ranks = first_occurrence_ranks({3.0, 1.0, 3.0, 2.0});
    CHECK(ranks == std::vector<int>{3, 1, 4, 2});
    auto sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("rank grid rendering counts points and segments") {
    RankGrid grid;
    grid.method_names = {"True", "Listing2T", "Listing2F", "Full"};
    grid.ranks = {{1, 2, 3}, {1, 2, 3}, {3, 2, 1}, {2, 1, 3}};
    const std::string svg = render_rank_plot_svg(grid);
    std::size_t circles = 0, lines = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) { ++circles; ++pos; }
    pos = 0;
    while ((pos = svg.find("<line", pos)) != std::string::npos) { ++lines; ++pos; }
    CHECK(circles == 12);
    CHECK(lines == 9);

    // Identical consecutive rows produce vertical segments: x1 == x2.
    RankGrid flat;
    flat.method_names = {"r0", "r1"};
    flat.ranks = {{1, 2}, {1, 2}};
    const std::string flat_svg = render_rank_plot_svg(flat);
    CHECK(flat_svg.find("x1=\"110\" y1") != std::string::npos);
    CHECK(flat_svg.find("x2=\"110\" y2") != std::string::npos);
}

TEST_CASE("ranks csv layout") {
    RankGrid grid;
    grid.method_names = {"True", "Full"};
    grid.ranks = {{1, 2}, {2, 1}};
    std::ostringstream out;
    write_ranks_csv(out, grid);
    CHECK(out.str() == "unit,True,Full\n1,1,2\n2,2,1\n");
}

TEST_CASE("rank experiment end to end on the synthetic dataset") {
    const auto data = synth_lawschool(10000, 71);
    const auto result = rank_experiment(data, "race", "Black", 40, 72);

    CHECK(result.n_train == 5000);
    CHECK(result.n_test == 40);
    CHECK(result.grid.method_names ==
          std::vector<std::string>{"True", "Listing2T", "Listing2F", "Full"});
    REQUIRE(result.grid.ranks.size() == 4);
    for (const auto& row : result.grid.ranks) {
        REQUIRE(row.size() == 40);
        auto sorted = row;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted.front() == 1);
        CHECK(sorted.back() == 40);
    }
    // Display columns sorted by the True row.
    CHECK(std::is_sorted(result.grid.ranks[0].begin(), result.grid.ranks[0].end()));

    // Invertible mappings preserve ranks; chasing a weak predictor does not.
    CHECK(result.spearman_l2f_vs_full >= 0.99);
    CHECK(result.spearman_l2t_vs_true >= 0.99);
    CHECK(result.spearman_l2f_vs_true <= 0.8);
    CHECK(result.spearman_l2f_vs_true ==
          doctest::Approx(result.spearman_full_vs_true).epsilon(0.1));
}

TEST_CASE("rank experiment is deterministic given the seed") {
    const auto data = synth_lawschool(6000, 73);
    const auto a = rank_experiment(data, "race", "Black", 40, 74);
    const auto b = rank_experiment(data, "race", "Black", 40, 74);
    CHECK(a.grid.ranks == b.grid.ranks);
    CHECK(a.spearman_l2f_vs_true == b.spearman_l2f_vs_true);

    std::ostringstream csv_a, csv_b;
    write_ranks_csv(csv_a, a.grid);
    write_ranks_csv(csv_b, b.grid);
    CHECK(csv_a.str() == csv_b.str());

    const auto c = rank_experiment(data, "race", "Black", 40, 75);
    CHECK(a.grid.ranks != c.grid.ranks);
}

TEST_CASE("rank experiment validates the subgroup size") {
    const auto data = synth_lawschool(200, 76);
    CHECK_THROWS_WITH_AS(rank_experiment(data, "race", "Black", 190, 77),
                         doctest::Contains("test rows"), InputError);
    CHECK_THROWS_AS(rank_experiment(data, "height", "tall", 10, 78), InputError);
}

TEST_CASE("listing2f stays monotone in the full predictions within the stratum") {
    const auto data = synth_lawschool(8000, 79);
    const auto result = rank_experiment(data, "race", "Black", 40, 80);
    CHECK(result.spearman_l2f_vs_full >= 0.99);
    // Display ranks mostly coincide; collapsed output ties perturb a few.
    const auto& l2f = result.grid.ranks[2];
    const auto& full = result.grid.ranks[3];
    std::size_t agreements = 0;
    for (std::size_t i = 0; i < l2f.size(); ++i) agreements += (l2f[i] == full[i]);
    CHECK(agreements >= 30);
}
