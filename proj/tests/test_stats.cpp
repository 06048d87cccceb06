#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sciflow/error.hpp"
#include "sciflow/stats.hpp"

using namespace sciflow;

namespace {

// exhaustive Youden scan used as the oracle for roc_youden
struct BruteCut {
    double threshold;
    double j;
};

BruteCut brute_youden(std::vector<std::pair<double, bool>> scored) {
    std::size_t pos = 0, neg = 0;
    for (const auto& [score, label] : scored) (label ? pos : neg)++;
    std::vector<double> thresholds;
    for (const auto& [score, label] : scored) thresholds.push_back(score);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    BruteCut best{std::numeric_limits<double>::infinity(), 0.0};
    for (double t : thresholds) {
        std::size_t tp = 0, fp = 0;
        for (const auto& [score, label] : scored) {
            if (score >= t) (label ? tp : fp)++;
        }
        double j = static_cast<double>(tp) / static_cast<double>(pos) -
                   static_cast<double>(fp) / static_cast<double>(neg);
        if (j > best.j + 1e-15 || (std::abs(j - best.j) <= 1e-15 && t < best.threshold)) {
            best = {t, j};
        }
    }
    return best;
}

} // namespace

TEST_CASE("welch t matches an independently computed fixture") {
    std::vector<double> a = {27.5, 21.0, 19.0, 23.6, 17.0, 17.9};
    std::vector<double> b = {27.1, 22.0, 20.8, 23.4, 23.4, 23.5};
    TestResult r = welch_t(a, b);
    CHECK(r.statistic == doctest::Approx(-1.28963075183578).epsilon(1e-10));
    CHECK(*r.dof == doctest::Approx(7.63656214414442).epsilon(1e-10));
    CHECK(r.p_value == doctest::Approx(0.234861751989111).epsilon(1e-9));
    CHECK(r.n_a == 6);
    CHECK(r.n_b == 6);
}

TEST_CASE("welch t is antisymmetric with identical p") {
    std::vector<double> a = {1.0, 2.5, 3.5, 7.0, 2.2};
    std::vector<double> b = {2.0, 4.5, 5.5, 9.0};
    TestResult ab = welch_t(a, b);
    TestResult ba = welch_t(b, a);
    CHECK(ab.statistic == doctest::Approx(-ba.statistic).epsilon(1e-14));
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-14));
}

TEST_CASE("welch t degenerate conventions") {
    std::vector<double> same = {3.0, 3.0, 3.0};
    std::vector<double> other = {4.0, 4.0, 4.0};
    TestResult eq = welch_t(same, same);
    CHECK(eq.statistic == 0.0);
    CHECK(eq.p_value == 1.0);
    TestResult ne = welch_t(same, other);
    CHECK(ne.p_value == 0.0);
    CHECK(std::isinf(ne.statistic));
}

TEST_CASE("welch t separates jittered constant groups") {
    std::vector<double> a = {0.0, 1e-9, 0.0, -1e-9};
    std::vector<double> b = {1.0, 1.0 + 1e-9, 1.0, 1.0 - 1e-9};
    TestResult r = welch_t(a, b);
    CHECK(r.p_value < 1e-6);
}

TEST_CASE("student t two-sided tail matches table values") {
    CHECK(student_t_two_sided_p(2.0, 10.0) ==
          doctest::Approx(0.073388034770740366).epsilon(1e-12));
    CHECK(student_t_two_sided_p(1.55, 37.25) ==
          doctest::Approx(0.12959696701976999).epsilon(1e-12));
    CHECK(student_t_two_sided_p(0.5, 3.75) ==
          doctest::Approx(0.64498051713635734).epsilon(1e-12));
    CHECK(student_t_two_sided_p(12.3, 4.0) ==
          doctest::Approx(0.00025097574104189656).epsilon(1e-12));
    CHECK(student_t_two_sided_p(3.0, 100.0) ==
          doctest::Approx(0.0034079153433294495).epsilon(1e-12));
    CHECK(student_t_two_sided_p(-3.0, 100.0) ==
          doctest::Approx(0.0034079153433294495).epsilon(1e-12));
}

TEST_CASE("incomplete beta and gamma match reference values") {
    CHECK(regularized_beta(0.4, 2.0, 3.0) == doctest::Approx(0.5248).epsilon(1e-12));
    CHECK(regularized_beta(0.7, 0.5, 0.5) ==
          doctest::Approx(0.63098988043445462).epsilon(1e-12));
    CHECK(regularized_gamma_q(0.5, 2.3) ==
          doctest::Approx(0.03197195617764871).epsilon(1e-12));
    CHECK(regularized_gamma_q(5.0, 1.2) ==
          doctest::Approx(0.99225421172355859).epsilon(1e-12));
}

TEST_CASE("chi-square survival function matches table values") {
    CHECK(chi2_1dof_sf(3.841458820694124) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi2_1dof_sf(6.634896601021214) == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(chi2_1dof_sf(0.5) == doctest::Approx(0.47950012218695346).epsilon(1e-12));
}

TEST_CASE("chi-square goodness of fit on the stance contingency fixture") {
    TestResult r = chi_square_1dof({295.0, 11.0}, {89.0, 217.0});
    CHECK(r.statistic == doctest::Approx(672.366592450681).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(3.0545312730109314e-148).epsilon(1e-8));
    CHECK(*r.effect_phi == doctest::Approx(1.48232130319889).epsilon(1e-12));
    CHECK(*r.dof == 1.0);
}

TEST_CASE("chi-square basics and invariances") {
    CHECK(chi_square_1dof({50.0, 50.0}, {50.0, 50.0}).statistic == 0.0);
    CHECK(chi_square_1dof({90.0, 10.0}, {50.0, 50.0}).statistic ==
          doctest::Approx(64.0).epsilon(1e-14));
    TestResult a = chi_square_1dof({30.0, 12.0}, {20.0, 22.0});
    TestResult b = chi_square_1dof({12.0, 30.0}, {22.0, 20.0});
    CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-14));
    CHECK_THROWS_AS(chi_square_1dof({1.0, 2.0}, {0.0, 3.0}), Error);
}

TEST_CASE("kendall tau-b handles ties like the reference implementation") {
    std::vector<double> x = {1, 2, 2, 3, 3, 3, 4, 5};
    std::vector<double> y = {2, 1, 3, 3, 5, 4, 4, 6};
    TestResult r = kendall_tau_b(x, y);
    CHECK(r.statistic == doctest::Approx(0.720576692122892).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(0.019060446724388).epsilon(1e-9));
}

TEST_CASE("kendall tau-b endpoints and monotone invariance") {
    std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> rev = {5, 4, 3, 2, 1};
    CHECK(kendall_tau_b(x, x).statistic == doctest::Approx(1.0));
    CHECK(kendall_tau_b(x, rev).statistic == doctest::Approx(-1.0));
    std::vector<double> y = {3, 1, 4, 1, 5};
    std::vector<double> y_scaled;
    for (double v : y) y_scaled.push_back(std::exp(v));  // strictly monotone map
    CHECK(kendall_tau_b(x, y).statistic ==
          doctest::Approx(kendall_tau_b(x, y_scaled).statistic).epsilon(1e-14));
}

TEST_CASE("percentile interval with linear interpolation") {
    std::vector<double> uniform;
    for (int i = 0; i <= 100; ++i) uniform.push_back(i);
    auto [lo, hi] = percentile_ci(uniform, 0.95);
    CHECK(lo == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(hi == doctest::Approx(97.5).epsilon(1e-12));
    auto [mn, mx] = percentile_ci(uniform, 1.0);
    CHECK(mn == 0.0);
    CHECK(mx == 100.0);
    std::vector<double> constant = {4.0, 4.0, 4.0};
    auto [c1, c2] = percentile_ci(constant, 0.9);
    CHECK(c1 == 4.0);
    CHECK(c2 == 4.0);
}

TEST_CASE("gini of extreme concentration and its invariances") {
    std::vector<double> onehot = {0.0, 0.0, 0.0, 10.0};
    CHECK(gini(onehot) == doctest::Approx(0.75).epsilon(1e-12));
    std::vector<double> constant = {3.0, 3.0, 3.0, 3.0};
    CHECK(gini(constant) == 0.0);
    std::vector<double> values = {1.0, 4.0, 0.0, 2.5, 7.0};
    std::vector<double> scaled;
    for (double v : values) scaled.push_back(7.0 * v);
    CHECK(gini(values) == doctest::Approx(gini(scaled)).epsilon(1e-12));
    CHECK_THROWS_AS(gini(std::vector<double>{}), Error);
    CHECK_THROWS_AS(gini(std::vector<double>{0.0, 0.0}), Error);
    CHECK_THROWS_AS(gini(std::vector<double>{1.0, -1.0}), Error);
}

TEST_CASE("roc youden finds the perfect separator") {
    std::vector<std::pair<double, bool>> scored = {
        {0.1, false}, {0.2, false}, {0.3, false}, {0.7, true}, {0.8, true}, {0.95, true}};
    RocCut cut = roc_youden(scored);
    CHECK(cut.youden_j == doctest::Approx(1.0));
    CHECK(cut.threshold > 0.3);
    CHECK(cut.threshold <= 0.7);
    CHECK(cut.f1 == doctest::Approx(1.0));
    REQUIRE(!cut.roc.empty());
    CHECK(cut.roc.front().fpr == 0.0);
    CHECK(cut.roc.front().tpr == 0.0);
    CHECK(cut.roc.back().fpr == 1.0);
    CHECK(cut.roc.back().tpr == 1.0);
}

TEST_CASE("roc youden equals the exhaustive threshold scan") {
    std::mt19937_64 rng(411);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<std::pair<double, bool>> scored;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 10; ++i) {
            double score = std::round(u(rng) * 20.0) / 20.0;  // force some tied scores
            scored.emplace_back(score, u(rng) < 0.5);
        }
        bool has_pos = false, has_neg = false;
        for (auto& [s, l] : scored) (l ? has_pos : has_neg) = true;
        if (!has_pos || !has_neg) continue;
        RocCut cut = roc_youden(scored);
        BruteCut oracle = brute_youden(scored);
        CHECK(cut.threshold == doctest::Approx(oracle.threshold).epsilon(1e-14));
        CHECK(cut.youden_j == doctest::Approx(oracle.j).epsilon(1e-12));
    }
}

TEST_CASE("roc youden rejects single-class input") {
    std::vector<std::pair<double, bool>> scored = {{0.4, true}, {0.6, true}};
    CHECK_THROWS_AS(roc_youden(scored), Error);
}

TEST_CASE("roc curve is monotone in both rates") {
    std::vector<std::pair<double, bool>> scored;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 40; ++i) scored.emplace_back(u(rng), u(rng) < 0.4);
    RocCut cut = roc_youden(scored);
    for (std::size_t i = 1; i < cut.roc.size(); ++i) {
        CHECK(cut.roc[i].fpr >= cut.roc[i - 1].fpr);
        CHECK(cut.roc[i].tpr >= cut.roc[i - 1].tpr);
    }
}

TEST_CASE("normal survival function at familiar quantiles") {
    CHECK(normal_sf(1.959963984540054) == doctest::Approx(0.025).epsilon(1e-9));
    CHECK(normal_sf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_sf(-1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
}

TEST_CASE("mean, variance and median helpers") {
    std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
    CHECK(mean(v) == doctest::Approx(2.5));
    CHECK(sample_variance(v) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(median(v) == doctest::Approx(2.5));
    CHECK(median(std::vector<double>{5.0, 1.0, 3.0}) == doctest::Approx(3.0));
}
