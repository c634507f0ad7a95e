#include "oracles.hpp"
#include "support.hpp"

#include "sharpkit/statistics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sharpkit;

namespace {

// Quantized draws so that ties are common.
std::vector<double> tied_vector(std::mt19937_64& rng, std::size_t n, int levels)
{
    std::uniform_int_distribution<int> u(0, levels - 1);
    std::vector<double> v(n);
    for (auto& x : v)
        x = u(rng) * 0.5;
    return v;
}

} // namespace

TEST_SUITE("correlation")
{
    TEST_CASE("hand-computed correlations")
    {
        const std::vector<double> x{1, 2, 3}, y{1, 3, 2};
        CHECK(plcc(x, y) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(srcc(x, y) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(krcc(x, y) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

        const std::vector<double> a{0.3, 1.0, 2.5, 7.0};
        std::vector<double> lin, neg, cube;
        for (double v : a) {
            lin.push_back(2 * v + 1);
            neg.push_back(-v);
            cube.push_back(v * v * v);
        }
        CHECK(plcc(a, lin) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(plcc(a, neg) == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(srcc(a, cube) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(srcc(a, neg) == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(krcc(a, cube) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(krcc(a, neg) == doctest::Approx(-1.0).epsilon(1e-14));
    }

    TEST_CASE("rmse")
    {
        const std::vector<double> z{0, 0}, p{3, 4}, q{5, 6}, q2{7, 8};
        CHECK(rmse(z, z) == 0.0);
        CHECK(rmse(q, q2) == doctest::Approx(2.0));
        CHECK(rmse(z, p) == doctest::Approx(std::sqrt(12.5)));
    }

    TEST_CASE("average ranks share ties")
    {
        const std::vector<double> x{10, 20, 20, 5};
        CHECK(average_ranks(x) == std::vector<double>{2.0, 3.5, 3.5, 1.0});
    }

    TEST_CASE("agreement with brute force on 100 random pairs")
    {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<std::size_t> len(3, 60);
        for (int trial = 0; trial < 100; ++trial) {
            const auto n = len(rng);
            const bool ties = trial % 2 == 1;
            const auto x = ties ? tied_vector(rng, n, 6) : oracle::random_vector(rng, n);
            auto y = ties ? tied_vector(rng, n, 5) : oracle::random_vector(rng, n);
            for (std::size_t i = 0; i < n; ++i)
                y[i] += 0.5 * x[i];
            CAPTURE(trial);
            try {
                const double ref = static_cast<double>(oracle::pearson(x, y));
                CHECK(std::abs(plcc(x, y) - ref) <= 1e-12);
                CHECK(std::abs(srcc(x, y) - static_cast<double>(oracle::spearman(x, y))) <= 1e-12);
                CHECK(std::abs(krcc(x, y) - static_cast<double>(oracle::kendall_tau_b(x, y))) <= 1e-12);
            } catch (const Error&) {
                // Constant draws are legitimately rejected; the oracle would give NaN.
                CHECK(std::isnan(static_cast<double>(oracle::pearson(x, y))));
            }
            CHECK(std::abs(rmse(x, y) - static_cast<double>(oracle::rmse(x, y))) <= 1e-12);
        }
    }

    TEST_CASE("input validation")
    {
        const std::vector<double> a{1, 2, 3}, b{1, 2}, c{1, 1, 1};
        CHECK(code_of([&] { plcc(a, b); }) == Errc::invalid_argument);
        CHECK(code_of([&] { plcc(a, c); }) == Errc::invalid_argument);
        CHECK(code_of([&] { krcc(c, c); }) == Errc::invalid_argument);
        const std::vector<double> bad{1, NAN, 3};
        CHECK(code_of([&] { srcc(a, bad); }) == Errc::invalid_argument);
    }
}

TEST_SUITE("logistic")
{
    TEST_CASE("map special cases")
    {
        CHECK(logistic_map(3.7, LogisticParams{{0, 5, 1, 1, 0}}) == 3.7);
        CHECK(logistic_map(2.0, LogisticParams{{1, 3, 2, 0, 0}}) == 1.0);
        const double inf = std::numeric_limits<double>::infinity();
        CHECK(logistic_map(-1.0, LogisticParams{{1, inf, 0, 0, 0}}) == 1.5);
        CHECK(logistic_map(1.0, LogisticParams{{1, inf, 0, 0, 0}}) == 0.5);
        CHECK(logistic_map(0.0, LogisticParams{{1, inf, 0, 0, 0}}) == 1.0);
    }

    TEST_CASE("exact recovery of a generated logistic curve")
    {
        std::mt19937_64 rng(1);
        const auto x = oracle::random_vector(rng, 80, 10, 70);
        const LogisticParams truth{{4.0, 0.2, 40.0, -0.01, 3.0}};
        const auto y = logistic_map(x, truth);
        const auto fit = fit_logistic(x, y);
        const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
        CHECK(fit.rmse <= 1e-6 * (*hi - *lo));
        CHECK(fit.rmse == doctest::Approx(rmse(logistic_map(x, fit.params), y)).epsilon(1e-9));
    }

    TEST_CASE("identity and constant targets")
    {
        std::mt19937_64 rng(2);
        const auto x = oracle::random_vector(rng, 30, 0, 5);
        CHECK(fit_logistic(x, x).rmse <= 1e-9);
        const std::vector<double> c(30, 2.5);
        CHECK(fit_logistic(x, c).rmse <= 1e-9);
    }

    TEST_CASE("affine fit is the least-squares line")
    {
        std::mt19937_64 rng(3);
        const auto x = oracle::random_vector(rng, 50);
        auto y = oracle::random_vector(rng, 50);
        for (std::size_t i = 0; i < 50; ++i)
            y[i] += 2 * x[i];
        std::vector<std::vector<double>> a;
        for (double v : x)
            a.push_back({v, 1.0});
        const auto ref = oracle::least_squares(a, y);
        const auto fit = fit_affine(x, y);
        CHECK(fit.params.k[0] == 0.0);
        CHECK(fit.params.k[3] == doctest::Approx(ref[0]).epsilon(1e-10));
        CHECK(fit.params.k[4] == doctest::Approx(ref[1]).epsilon(1e-10));
    }

    TEST_CASE("logistic fit is never worse than the affine fit")
    {
        std::mt19937_64 rng(4);
        std::normal_distribution<double> noise(0.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = oracle::random_vector(rng, 40, -3, 3);
            std::vector<double> y;
            for (double v : x)
                y.push_back(std::sin(2 * v) + noise(rng));
            CHECK(fit_logistic(x, y).rmse <= fit_affine(x, y).rmse + 1e-12);
        }
    }

    TEST_CASE("fit input validation")
    {
        const std::vector<double> x{1, 2, 3, 4, 5}, y{1, 2, 3, 4, 5};
        CHECK(code_of([&] { fit_logistic(x, y); }) == Errc::invalid_argument);
        const std::vector<double> x6{1, 2, 3, 4, 5, 6}, y5{1, 2, 3, 4, 5};
        CHECK(code_of([&] { fit_logistic(x6, y5); }) == Errc::invalid_argument);
    }

    TEST_CASE("combination fit")
    {
        std::mt19937_64 rng(5);
        const auto c1 = oracle::random_vector(rng, 60, 0, 10);
        const auto c2 = oracle::random_vector(rng, 60, 0, 10);

        SUBCASE("duplicated column matches the single-column fit")
        {
            std::vector<std::array<double, 2>> m;
            std::vector<double> y;
            for (std::size_t i = 0; i < 60; ++i) {
                m.push_back({c1[i], c1[i]});
                y.push_back(logistic_map(c1[i], LogisticParams{{2, 1.2, 5, 0.1, 1}}) + 0.05 * std::sin(i * 1.0));
            }
            CHECK(fit_combo(m, y).final_rmse <= fit_logistic(c1, y).rmse + 1e-9);
        }
        SUBCASE("generated data is recovered")
        {
            std::vector<std::array<double, 2>> m;
            std::vector<double> y;
            const LogisticParams truth{{3, 0.8, 4, 0.05, -1}};
            for (std::size_t i = 0; i < 60; ++i) {
                m.push_back({c1[i], c2[i]});
                y.push_back(logistic_map(0.7 * c1[i] + 0.3 * c2[i], truth));
            }
            const auto fit = fit_combo(m, y);
            const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
            CHECK(fit.final_rmse <= 1e-6 * (*hi - *lo));
        }
        SUBCASE("a pure-noise column adds little")
        {
            std::vector<std::array<double, 2>> m;
            std::vector<double> y;
            for (std::size_t i = 0; i < 60; ++i) {
                m.push_back({c1[i], c2[i]});
                y.push_back(c1[i]);
            }
            const auto single = fit_logistic(c1, y).rmse;
            const auto combo = fit_combo(m, y).final_rmse;
            const double var = static_cast<double>(oracle::rmse(y, std::vector<double>(60, static_cast<double>(oracle::mean(y)))));
            CHECK(single * single - combo * combo <= 0.05 * var * var);
        }
        const std::vector<std::array<double, 2>> few(5, {1.0, 2.0});
        const std::vector<double> yf(5, 1.0);
        CHECK(code_of([&] { fit_combo(few, yf); }) == Errc::invalid_argument);
    }
}

TEST_SUITE("pair_auc")
{
    TEST_CASE("significance rules")
    {
        ScorePairs p{{0, 0}, {1.0, 1.0}, std::nullopt, std::nullopt};
        CHECK_FALSE(pair_significance(p)[0].significant);
        p.subjective = {1.0, 2.0};
        p.subjective_std = std::vector<double>{0.0, 0.0};
        auto l = pair_significance(p);
        CHECK(l[0].significant);
        CHECK(l[0].better == -1);
        CHECK(l[0].reversed().better == 1);
        p.subjective_std = std::vector<double>{1.0, 1.0};
        CHECK_FALSE(pair_significance(p)[0].significant);
        p.subjective_std.reset();
        CHECK(pair_significance(p, {0.5, 1.96, false})[0].significant);
        CHECK_FALSE(pair_significance(p, {1.0, 1.96, false})[0].significant);
    }

    TEST_CASE("within-group pairing")
    {
        ScorePairs p{{0, 0, 0}, {1, 2, 3}, std::nullopt, std::vector<std::string>{"a", "a", "b"}};
        CHECK(pair_significance(p).size() == 3);
        const auto l = pair_significance(p, {0.0, 1.96, true});
        REQUIRE(l.size() == 1);
        CHECK(l[0].i == 0);
        CHECK(l[0].j == 1);
        p.groups.reset();
        CHECK(code_of([&] { pair_significance(p, {0.0, 1.96, true}); }) == Errc::invalid_argument);
    }

    TEST_CASE("Mann-Whitney examples")
    {
        const std::vector<double> s1{3, 2}, n1{1}, s2{3, 1}, n2{2};
        CHECK(mann_whitney_auc(s1, n1) == 1.0);
        CHECK(mann_whitney_auc(s2, n2) == 0.5);
        const std::vector<double> t{1, 1}, u{1};
        CHECK(mann_whitney_auc(t, u) == 0.5);
        // 2 beats all three, 1 beats two and ties one, -1 beats one and ties one.
        const std::vector<double> pos{2, 1, -1}, neg{-2, -1, 1};
        CHECK(mann_whitney_auc(pos, neg) == doctest::Approx(7.0 / 9.0));
    }

    TEST_CASE("AUC and C0 on small configurations")
    {
        // Y: 0 < 1 < 2 < 3 with threshold 0.5 -> all pairs significant.
        ScorePairs p{{10, 20, 30, 40}, {0, 1, 2, 3}, std::nullopt, std::nullopt};
        const auto l = pair_significance(p);
        CHECK(auc_bw(p.objective, l) == 1.0);
        CHECK(c0(p.objective, l) == 1.0);
        CHECK(auc_bw(p.objective, l, ScoreOrientation::higher_is_worse) == 0.0);
        CHECK(c0(p.objective, l, ScoreOrientation::higher_is_worse) == 0.0);
        const std::vector<double> flat(4, 1.0);
        CHECK(c0(flat, l) == 0.0);
        CHECK(auc_bw(flat, l) == 0.5);
        const std::vector<double> three_of_four{10, 20, 30, 25};
        // pairs: (0,1) ok (0,2) ok (0,3) ok (1,2) ok (1,3) ok (2,3) wrong -> 5/6
        CHECK(c0(three_of_four, l) == doctest::Approx(5.0 / 6.0));

        ScorePairs q{{0, 1, 5, 6}, {0, 0.1, 5, 5.1}, std::nullopt, std::nullopt};
        const auto lq = pair_significance(q, {1.0, 1.96, false});
        CHECK(auc_ds(q.objective, lq) == 1.0);
        CHECK(auc_ds(std::vector<double>(4, 3.0), lq) == 0.5);
        CHECK(code_of([&] { auc_ds(q.objective, l); }) == Errc::invalid_argument);
    }

    TEST_CASE("AUCs agree with a threshold-sweep ROC on every small pair set")
    {
        std::mt19937_64 rng(77);
        std::normal_distribution<double> g(0.0, 1.0);
        int checked = 0;
        for (std::size_t n = 3; n <= 10; ++n) { // up to 45 pairs
            for (int rep = 0; rep < 40; ++rep) {
                ScorePairs p;
                for (std::size_t i = 0; i < n; ++i) {
                    const double y = std::round(g(rng) * 2) / 2;
                    p.subjective.push_back(y);
                    p.objective.push_back(rep % 3 == 0 ? std::round(y + g(rng)) : y + g(rng));
                }
                if (rep % 2)
                    p.subjective_std = oracle::random_vector(rng, n, 0.0, 0.4);
                const auto labels = pair_significance(p, {0.25, 1.96, false});

                // Oracle labels by enumeration.
                std::vector<double> diff, sim, margin, neg;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j) {
                        const double dy = p.subjective[i] - p.subjective[j];
                        const double bound = p.subjective_std
                                                 ? 1.96 * std::hypot((*p.subjective_std)[i], (*p.subjective_std)[j])
                                                 : 0.25;
                        const double dc = p.objective[i] - p.objective[j];
                        if (std::abs(dy) > bound) {
                            diff.push_back(std::abs(dc));
                            const double m = dy > 0 ? dc : -dc;
                            margin.push_back(m);
                            neg.push_back(-m);
                        } else {
                            sim.push_back(std::abs(dc));
                        }
                    }
                if (!diff.empty() && !sim.empty()) {
                    CHECK(std::abs(auc_ds(p.objective, labels) - oracle::roc_sweep_auc(diff, sim)) <= 1e-12);
                    ++checked;
                }
                if (!margin.empty()) {
                    CHECK(std::abs(auc_bw(p.objective, labels) - oracle::roc_sweep_auc(margin, neg)) <= 1e-12);
                    const auto right = std::count_if(margin.begin(), margin.end(), [](double m) { return m > 0; });
                    CHECK(c0(p.objective, labels) ==
                          doctest::Approx(static_cast<double>(right) / static_cast<double>(margin.size())));
                }
            }
        }
        CHECK(checked > 100);
    }
}
