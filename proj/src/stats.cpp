#include "sciflow/stats.hpp"
#include "sciflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace sciflow::stats {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

// Lower incomplete gamma P(a, x) by power series.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma Q(a, x) by Lentz continued fraction.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Continued fraction for the incomplete beta function (Lentz).
double beta_cf(double x, double a, double b) {
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double regularized_gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw Error("regularized_gamma_q: domain error");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double regularized_beta(double x, double a, double b) {
    if (x < 0.0 || x > 1.0 || a <= 0.0 || b <= 0.0)
        throw Error("regularized_beta: domain error");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(x, a, b) / a;
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double student_t_two_sided_p(double t, double nu) {
    if (nu <= 0.0) throw Error("student_t_two_sided_p: dof must be positive");
    if (std::isinf(t)) return 0.0;
    double x = nu / (nu + t * t);
    return regularized_beta(x, nu / 2.0, 0.5);
}

double chi2_1dof_sf(double x) {
    if (x < 0.0) throw Error("chi2_1dof_sf: negative statistic");
    return regularized_gamma_q(0.5, x / 2.0);
}

double normal_sf(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double mean(std::span<const double> v) {
    if (v.empty()) throw Error("mean of empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
    if (v.size() < 2) throw Error("variance needs at least 2 observations");
    double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

double median(std::vector<double> v) {
    if (v.empty()) throw Error("median of empty sample");
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TestResult welch_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw Error("welch_t: both samples need at least 2 observations");
    double ma = mean(a), mb = mean(b);
    double va = sample_variance(a), vb = sample_variance(b);
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());

    TestResult r;
    r.n_a = a.size();
    r.n_b = b.size();
    if (va == 0.0 && vb == 0.0) {
        if (ma == mb) {
            r.statistic = 0.0;
            r.p_value = 1.0;
        } else {
            r.statistic = ma > mb ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
            r.p_value = 0.0;
        }
        return r;
    }
    double sa = va / na, sb = vb / nb;
    double se = std::sqrt(sa + sb);
    double t = (ma - mb) / se;
    double dof = (sa + sb) * (sa + sb) /
                 (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    r.statistic = t;
    r.dof = dof;
    r.p_value = student_t_two_sided_p(t, dof);
    return r;
}

TestResult chi_square_1dof(std::pair<double, double> observed, std::pair<double, double> expected) {
    if (expected.first <= 0.0 || expected.second <= 0.0)
        throw Error("chi_square_1dof: expected counts must be positive");
    double chi2 = (observed.first - expected.first) * (observed.first - expected.first) / expected.first +
                  (observed.second - expected.second) * (observed.second - expected.second) / expected.second;
    TestResult r;
    r.statistic = chi2;
    r.dof = 1.0;
    r.p_value = chi2_1dof_sf(chi2);
    r.n_a = static_cast<std::size_t>(observed.first + 0.5);
    r.n_b = static_cast<std::size_t>(observed.second + 0.5);
    double n = observed.first + observed.second;
    if (n > 0.0) r.effect_phi = std::sqrt(chi2 / n);
    return r;
}

TestResult kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error("kendall_tau_b: length mismatch");
    std::size_t n = x.size();
    if (n < 2) throw Error("kendall_tau_b: need at least 2 pairs");

    long long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            double prod = dx * dy;
            if (prod > 0) ++concordant;
            else if (prod < 0) ++discordant;
        }
    }
    auto tie_stats = [n](std::span<const double> v, double& t1, double& t2, double& t3) {
        std::map<double, long long> counts;
        for (std::size_t i = 0; i < n; ++i) ++counts[v[i]];
        t1 = t2 = t3 = 0.0;
        for (auto& [val, c] : counts) {
            (void)val;
            double cd = static_cast<double>(c);
            t1 += cd * (cd - 1.0) / 2.0;
            t2 += cd * (cd - 1.0) * (2.0 * cd + 5.0);
            t3 += cd * (cd - 1.0) * (cd - 2.0);
        }
    };
    double xt1, xt2, xt3, yt1, yt2, yt3;
    tie_stats(x, xt1, xt2, xt3);
    tie_stats(y, yt1, yt2, yt3);

    double nd = static_cast<double>(n);
    double n0 = nd * (nd - 1.0) / 2.0;
    double denom = std::sqrt((n0 - xt1) * (n0 - yt1));
    double s = static_cast<double>(concordant - discordant);

    TestResult r;
    r.n_a = r.n_b = n;
    if (denom == 0.0) {
        // at least one ranking is constant
        r.statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }
    r.statistic = s / denom;

    // Normal approximation with tie correction for var(S).
    double v0 = nd * (nd - 1.0) * (2.0 * nd + 5.0);
    double var_s = (v0 - xt2 - yt2) / 18.0;
    if (n > 2) {
        var_s += xt3 * yt3 / (9.0 * nd * (nd - 1.0) * (nd - 2.0));
        var_s += 2.0 * xt1 * yt1 / (nd * (nd - 1.0));
    }
    if (var_s <= 0.0) {
        r.p_value = 1.0;
        return r;
    }
    double z = s / std::sqrt(var_s);
    r.p_value = std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
    return r;
}

double quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw Error("quantile of empty sample");
    if (q <= 0.0) return sorted.front();
    if (q >= 1.0) return sorted.back();
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

std::pair<double, double> percentile_ci(std::span<const double> samples, double level) {
    if (samples.size() < 2) throw Error("percentile_ci: need at least 2 samples");
    if (level < 0.0 || level > 1.0) throw Error("percentile_ci: level must be in [0,1]");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    double alpha = (1.0 - level) / 2.0;
    return {quantile(sorted, alpha), quantile(sorted, 1.0 - alpha)};
}

double gini(std::span<const double> values) {
    if (values.empty()) throw Error("gini of empty list");
    double total = 0.0;
    for (double v : values) {
        if (v < 0.0) throw Error("gini: negative value");
        total += v;
    }
    if (total == 0.0) throw Error("gini: all values zero");
    std::size_t n = values.size();
    double diff_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            diff_sum += std::fabs(values[i] - values[j]);
    double mu = total / static_cast<double>(n);
    return diff_sum / (2.0 * static_cast<double>(n) * static_cast<double>(n) * mu);
}

RocCut roc_youden(std::span<const std::pair<double, bool>> scored) {
    std::size_t pos = 0, neg = 0;
    for (const auto& [score, is_pos] : scored) {
        (void)score;
        if (is_pos) ++pos;
        else ++neg;
    }
    if (pos == 0 || neg == 0)
        throw Error("roc_youden: both classes must be present");

    std::vector<std::pair<double, bool>> pts(scored.begin(), scored.end());
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });

    RocCut cut;
    cut.roc.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});

    double best_j = -1.0;
    double best_threshold = 0.0;
    std::size_t best_tp = 0, best_fp = 0;
    // J compared as the exact integer tp*neg - fp*pos so equal J values tie
    // reliably; the descending sweep then lets the lower threshold win
    std::int64_t best_score = std::numeric_limits<std::int64_t>::min();

    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < pts.size()) {
        double threshold = pts[i].first;
        // consume the whole tie group: predictions flip together
        while (i < pts.size() && pts[i].first == threshold) {
            if (pts[i].second) ++tp;
            else ++fp;
            ++i;
        }
        double tpr = static_cast<double>(tp) / static_cast<double>(pos);
        double fpr = static_cast<double>(fp) / static_cast<double>(neg);
        cut.roc.push_back({fpr, tpr, threshold});
        std::int64_t score = static_cast<std::int64_t>(tp) * static_cast<std::int64_t>(neg) -
                             static_cast<std::int64_t>(fp) * static_cast<std::int64_t>(pos);
        if (score >= best_score) {
            best_score = score;
            best_j = tpr - fpr;
            best_threshold = threshold;
            best_tp = tp;
            best_fp = fp;
        }
    }

    cut.youden_j = best_j;
    cut.threshold = best_threshold;
    std::size_t fn = pos - best_tp;
    double denom = 2.0 * static_cast<double>(best_tp) + static_cast<double>(best_fp) +
                   static_cast<double>(fn);
    cut.f1 = denom > 0.0 ? 2.0 * static_cast<double>(best_tp) / denom : 0.0;
    return cut;
}

} // namespace sciflow::stats
