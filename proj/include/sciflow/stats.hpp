#ifndef SCIFLOW_STATS_HPP
#define SCIFLOW_STATS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sciflow::stats {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::optional<double> dof;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    std::optional<double> effect_phi;  // chi-square only
};

// Welch's two-sample t-test, two-sided p from the t distribution with
// Welch-Satterthwaite degrees of freedom. Degenerate inputs (both variances
// zero) fall back to p = 1 for equal means, p = 0 otherwise.
TestResult welch_t(std::span<const double> a, std::span<const double> b);

// Goodness-of-fit chi-square over two cells, 1 dof, no continuity correction.
// Attaches phi = sqrt(chi2 / n) with n = sum of observed counts.
TestResult chi_square_1dof(std::pair<double, double> observed, std::pair<double, double> expected);

// Tie-aware Kendall tau-b over paired scores, normal-approximation p-value.
TestResult kendall_tau_b(std::span<const double> x, std::span<const double> y);

// Empirical percentile interval with linear interpolation between order
// statistics (quantile positions q * (n - 1)).
std::pair<double, double> percentile_ci(std::span<const double> samples, double level = 0.95);
double quantile(std::span<const double> sorted_samples, double q);

// Mean-difference Gini via the exact pairwise formula
// G = sum_ij |x_i - x_j| / (2 n^2 mu). Nonnegative values, at least one
// positive; constant lists give 0.
double gini(std::span<const double> values);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

struct RocCut {
    double threshold = 0.0;  // score >= threshold predicts positive
    double youden_j = 0.0;   // max over thresholds of (tpr - fpr)
    double f1 = 0.0;         // at the chosen threshold
    std::vector<RocPoint> roc;  // starts at (0,0) with +inf threshold, ends at (1,1)
};

// ROC sweep over all distinct score thresholds; ties in J resolved toward the
// lower threshold. Both classes must be present.
RocCut roc_youden(std::span<const std::pair<double, bool>> scored);  // (score, is_positive)

// Regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_q(double a, double x);
// Regularized incomplete beta I_x(a, b).
double regularized_beta(double x, double a, double b);
// Two-sided tail probability of Student's t with dof nu.
double student_t_two_sided_p(double t, double nu);
// Survival function of chi-square with 1 dof.
double chi2_1dof_sf(double x);
// Standard normal survival function.
double normal_sf(double z);

double mean(std::span<const double> v);
double sample_variance(std::span<const double> v);  // ddof = 1
double median(std::vector<double> v);

} // namespace sciflow::stats

namespace sciflow {
using stats::chi2_1dof_sf;
using stats::chi_square_1dof;
using stats::gini;
using stats::kendall_tau_b;
using stats::mean;
using stats::median;
using stats::normal_sf;
using stats::percentile_ci;
using stats::quantile;
using stats::regularized_beta;
using stats::regularized_gamma_q;
using stats::roc_youden;
using stats::RocCut;
using stats::RocPoint;
using stats::sample_variance;
using stats::student_t_two_sided_p;
using stats::TestResult;
using stats::welch_t;
} // namespace sciflow

#endif
