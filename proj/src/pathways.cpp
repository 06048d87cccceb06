#include "sciflow/pathways.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sciflow/error.hpp"
#include "sciflow/util.hpp"

namespace sciflow {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double silverman_bandwidth(const std::vector<double>& sample) {
    double sd = std::sqrt(sample_variance(sample));
    if (sd == 0.0) throw Error("bandwidth undefined for a constant sample");
    double iqr = quantile(sample, 0.75) - quantile(sample, 0.25);
    double width = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 0.9 * width *
           std::pow(static_cast<double>(sample.size()), -0.2);
}

// prefix trapezoid masses: cum[k] = integral of density over [grid[0], grid[k]]
std::vector<double> prefix_mass(const Kde& kde) {
    std::vector<double> cum(kde.grid.size(), 0.0);
    for (std::size_t k = 1; k < kde.grid.size(); ++k)
        cum[k] = cum[k - 1] + 0.5 * (kde.density[k - 1] + kde.density[k]) *
                                  (kde.grid[k] - kde.grid[k - 1]);
    return cum;
}

double region_mass(const DensityRegion& region) {
    const Kde& kde = region.kde;
    if (region.degenerate) return 1.0;
    std::vector<double> cum = prefix_mass(kde);
    double g0 = kde.grid.front();
    double step = kde.grid[1] - kde.grid[0];

    auto grid_index = [&](double x) {
        auto it = std::lower_bound(kde.grid.begin(), kde.grid.end(), x);
        return static_cast<std::size_t>(it - kde.grid.begin());
    };
    std::size_t j = grid_index(region.end_hours);

    if (region.start_hours >= g0 &&
        region.start_hours == kde.grid[std::min(grid_index(region.start_hours),
                                                kde.grid.size() - 1)]) {
        return cum[j] - cum[grid_index(region.start_hours)];
    }
    // off-grid start: partial trapezoid on the containing segment
    double s = region.start_hours;
    std::size_t k = static_cast<std::size_t>((s - g0) / step);
    k = std::min(k, kde.grid.size() - 2);
    double t = (s - kde.grid[k]) / step;
    double ds = kde.density[k] + (kde.density[k + 1] - kde.density[k]) * t;
    double partial = 0.5 * (ds + kde.density[k + 1]) * (kde.grid[k + 1] - s);
    return partial + (cum[j] - cum[k + 1]);
}

} // namespace

const char* to_string(PathwayClass c) {
    switch (c) {
        case PathwayClass::PSP: return "PSP";
        case PathwayClass::ASP: return "ASP";
        case PathwayClass::LC: return "LC";
        case PathwayClass::HC: return "HC";
    }
    return "?";
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    if (points < 2) throw Error("grid needs at least 2 points");
    if (!(hi > lo)) throw Error("grid span must be positive");
    std::vector<double> grid(points);
    double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k)
        grid[k] = lo + static_cast<double>(k) * step;
    grid.back() = hi;
    return grid;
}

Kde gaussian_kde(const std::vector<double>& sample_hours, std::vector<double> grid,
                 std::optional<double> bandwidth_hours) {
    if (sample_hours.empty()) throw Error("KDE of an empty sample");
    if (grid.size() < 2) throw Error("KDE grid needs at least 2 points");

    Kde kde;
    kde.bandwidth_hours =
        bandwidth_hours ? *bandwidth_hours : silverman_bandwidth(sample_hours);
    if (!(kde.bandwidth_hours > 0.0)) throw Error("bandwidth must be positive");

    const double h = kde.bandwidth_hours;
    const double scale =
        kInvSqrt2Pi / (h * static_cast<double>(sample_hours.size()));
    kde.density.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double sum = 0.0;
        for (double x : sample_hours) {
            double z = (grid[k] - x) / h;
            sum += std::exp(-0.5 * z * z);
        }
        kde.density[k] = scale * sum;
    }
    kde.grid = std::move(grid);

    double integral = 0.0;
    for (std::size_t k = 1; k < kde.grid.size(); ++k)
        integral += 0.5 * (kde.density[k - 1] + kde.density[k]) *
                    (kde.grid[k] - kde.grid[k - 1]);
    if (!(integral > 0.0)) throw Error("KDE mass vanished on the grid");
    for (double& d : kde.density) d /= integral;
    return kde;
}

DensityRegion density_region(const std::vector<Timestamp>& mentions,
                             std::size_t grid_points,
                             std::optional<double> bandwidth_hours,
                             double min_mass) {
    if (mentions.size() < 2) throw Error("density region needs at least 2 mentions");
    if (!(min_mass > 0.0 && min_mass <= 1.0)) throw Error("min_mass must lie in (0,1]");

    auto [lo_it, hi_it] = std::minmax_element(mentions.begin(), mentions.end());
    DensityRegion region;
    if (*lo_it == *hi_it) {
        double t = to_hours(*lo_it);
        region.kde.grid = {t};
        region.kde.density = {0.0};
        region.start_hours = t;
        region.end_hours = t;
        region.mass = 1.0;
        region.degenerate = true;
        return region;
    }

    std::vector<double> sample;
    sample.reserve(mentions.size());
    for (Timestamp t : mentions) sample.push_back(to_hours(t));
    region.kde = gaussian_kde(
        sample, uniform_grid(to_hours(*lo_it), to_hours(*hi_it), grid_points),
        bandwidth_hours);

    std::vector<double> cum = prefix_mass(region.kde);
    const std::size_t n = cum.size();
    std::size_t best_i = 0, best_j = n - 1;
    std::size_t best_len = n;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (j < i) j = i;
        while (j < n && cum[j] - cum[i] < min_mass - kMassEps) ++j;
        if (j == n) break;
        if (j - i < best_len) {
            best_len = j - i;
            best_i = i;
            best_j = j;
        }
    }
    region.start_hours = region.kde.grid[best_i];
    region.end_hours = region.kde.grid[best_j];
    region.mass = cum[best_j] - cum[best_i];
    return region;
}

DensityRegion apply_lookback(const DensityRegion& region,
                             const std::vector<Timestamp>& mentions,
                             std::int64_t lookback_seconds) {
    if (lookback_seconds < 0) throw Error("lookback must be >= 0");
    DensityRegion out = region;
    out.lookback_seconds = lookback_seconds;
    if (lookback_seconds == 0 || region.degenerate) return out;

    double lb_hours = static_cast<double>(lookback_seconds) / 3600.0;
    double window_lo = region.start_hours - lb_hours;
    double earliest = region.start_hours;
    for (Timestamp t : mentions) {
        double x = to_hours(t);
        if (x >= window_lo && x < region.start_hours) earliest = std::min(earliest, x);
    }
    if (earliest >= region.start_hours) return out;
    out.start_hours = std::max(earliest, region.kde.grid.front());
    out.mass = region_mass(out);
    return out;
}

ClassPeaks class_peaks(const std::string& doi, const DensityRegion& region,
                       const std::array<std::vector<Timestamp>, kPathwayClassCount>& class_mentions,
                       std::int64_t min_class_mentions, PeakMode mode) {
    ClassPeaks peaks;
    peaks.doi = doi;

    // global grid points inside the region
    std::vector<double> grid;
    for (double g : region.kde.grid)
        if (g >= region.start_hours && g <= region.end_hours) grid.push_back(g);

    for (int c = 0; c < kPathwayClassCount; ++c) {
        std::vector<double> inside;
        for (Timestamp t : class_mentions[static_cast<std::size_t>(c)]) {
            double x = to_hours(t);
            if (x >= region.start_hours && x <= region.end_hours) inside.push_back(x);
        }
        peaks.mentions_in_region[static_cast<std::size_t>(c)] =
            static_cast<std::int64_t>(inside.size());
        if (static_cast<std::int64_t>(inside.size()) < min_class_mentions) continue;

        auto [lo, hi] = std::minmax_element(inside.begin(), inside.end());
        if (*lo == *hi || grid.size() < 2) {
            peaks.peak_hours[static_cast<std::size_t>(c)] = *lo;
            continue;
        }
        std::optional<double> bw;
        if (mode == PeakMode::global_bandwidth)
            bw = region.kde.bandwidth_hours;
        Kde kde = gaussian_kde(inside, grid, bw);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < kde.density.size(); ++k)
            if (kde.density[k] > kde.density[arg]) arg = k;
        peaks.peak_hours[static_cast<std::size_t>(c)] = kde.grid[arg];
    }
    return peaks;
}

PrecedenceGraph precedence_graph(const std::vector<ClassPeaks>& peaks) {
    PrecedenceGraph g;
    std::array<std::array<std::vector<double>, kPathwayClassCount>, kPathwayClassCount> gaps;
    for (const auto& p : peaks) {
        for (int a = 0; a < kPathwayClassCount; ++a) {
            for (int b = a + 1; b < kPathwayClassCount; ++b) {
                const auto& pa = p.peak_hours[static_cast<std::size_t>(a)];
                const auto& pb = p.peak_hours[static_cast<std::size_t>(b)];
                if (!pa || !pb || *pa == *pb) continue;
                if (*pa < *pb) {
                    ++g.raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                    gaps[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                        .push_back(*pb - *pa);
                } else {
                    ++g.raw[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
                    gaps[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]
                        .push_back(*pa - *pb);
                }
            }
        }
    }
    for (int a = 0; a < kPathwayClassCount; ++a) {
        std::int64_t row = 0;
        for (int b = 0; b < kPathwayClassCount; ++b)
            row += g.raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        for (int b = 0; b < kPathwayClassCount; ++b) {
            auto& cell = gaps[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (!cell.empty()) {
                g.median_dt_hours[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    median(cell);
                g.has_median[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
            }
            if (row > 0)
                g.normalized[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    100.0 *
                    static_cast<double>(
                        g.raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) /
                    static_cast<double>(row);
        }
    }
    return g;
}

std::vector<PrecedencePair> precedence_tests(
    const PrecedenceGraph& graph,
    const std::array<double, kPathwayClassCount>& base_rates) {
    std::vector<PrecedencePair> out;
    for (int a = 0; a < kPathwayClassCount; ++a) {
        for (int b = a + 1; b < kPathwayClassCount; ++b) {
            PrecedencePair pair;
            pair.a = static_cast<PathwayClass>(a);
            pair.b = static_cast<PathwayClass>(b);
            pair.wins_a = graph.raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            pair.wins_b = graph.raw[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
            std::int64_t total = pair.wins_a + pair.wins_b;
            if (total == 0) continue;
            double ra = base_rates[static_cast<std::size_t>(a)];
            double rb = base_rates[static_cast<std::size_t>(b)];
            if (!(ra > 0.0) || !(rb > 0.0))
                throw Error("precedence test needs positive base rates");
            double ea = static_cast<double>(total) * ra / (ra + rb);
            double eb = static_cast<double>(total) * rb / (ra + rb);
            pair.chi2 = chi_square_1dof(
                {static_cast<double>(pair.wins_a), static_cast<double>(pair.wins_b)},
                {ea, eb});
            out.push_back(pair);
        }
    }
    return out;
}

std::set<std::string> eligible_dois(const Corpus& corpus,
                                    std::int64_t min_media_mentions,
                                    std::int64_t min_social_mentions) {
    std::set<std::string> out;
    for (const auto& [doi, refs] : corpus.doi_index) {
        if (static_cast<std::int64_t>(refs.news_idx.size()) >= min_media_mentions &&
            static_cast<std::int64_t>(refs.post_idx.size()) >= min_social_mentions)
            out.insert(doi);
    }
    return out;
}

PathwayResult analyze_pathways(const Corpus& corpus,
                               const std::set<std::string>& psp,
                               const std::set<std::string>& asp,
                               const std::map<std::string, OutletClass>& outlet_classes,
                               const PathwayOptions& options) {
    PathwayResult result;
    std::set<std::string> dois = eligible_dois(corpus, options.min_media_mentions,
                                               options.min_social_mentions);
    std::vector<std::string> ordered(dois.begin(), dois.end());

    struct PerDoi {
        DensityRegion region;
        ClassPeaks peaks;
        bool has_region = false;
        bool has_peaks = false;
        std::array<std::int64_t, kPathwayClassCount> totals{};
    };
    std::vector<PerDoi> slots(ordered.size());

    parallel_for(ordered.size(), options.threads, [&](std::size_t i) {
        const std::string& doi = ordered[i];
        const DoiRefs& refs = corpus.doi_index.at(doi);
        PerDoi& slot = slots[i];

        std::vector<Timestamp> all;
        std::array<std::vector<Timestamp>, kPathwayClassCount> by_class;
        for (std::size_t idx : refs.post_idx) {
            const PostEvent& p = corpus.posts[idx];
            all.push_back(p.timestamp);
            if (psp.count(p.author_id))
                by_class[static_cast<std::size_t>(PathwayClass::PSP)].push_back(p.timestamp);
            else if (asp.count(p.author_id))
                by_class[static_cast<std::size_t>(PathwayClass::ASP)].push_back(p.timestamp);
        }
        for (std::size_t idx : refs.news_idx) {
            const NewsMention& m = corpus.news[idx];
            all.push_back(m.timestamp);
            auto it = outlet_classes.find(m.outlet_domain);
            if (it == outlet_classes.end()) continue;
            if (it->second == OutletClass::LC)
                by_class[static_cast<std::size_t>(PathwayClass::LC)].push_back(m.timestamp);
            else if (it->second == OutletClass::HC)
                by_class[static_cast<std::size_t>(PathwayClass::HC)].push_back(m.timestamp);
        }
        for (int c = 0; c < kPathwayClassCount; ++c)
            slot.totals[static_cast<std::size_t>(c)] =
                static_cast<std::int64_t>(by_class[static_cast<std::size_t>(c)].size());

        if (all.size() < 2) return;
        DensityRegion region = density_region(all, options.grid_points,
                                              options.bandwidth_hours, options.min_mass);
        region.doi = doi;
        if (options.lookback_seconds > 0)
            region = apply_lookback(region, all, options.lookback_seconds);
        slot.region = std::move(region);
        slot.has_region = true;

        ClassPeaks peaks = class_peaks(doi, slot.region, by_class,
                                       options.min_class_mentions, options.peak_mode);
        for (const auto& p : peaks.peak_hours)
            if (p) slot.has_peaks = true;
        slot.peaks = std::move(peaks);
    });

    for (std::size_t i = 0; i < slots.size(); ++i) {
        PerDoi& slot = slots[i];
        for (int c = 0; c < kPathwayClassCount; ++c)
            result.base_rates[static_cast<std::size_t>(c)] +=
                static_cast<double>(slot.totals[static_cast<std::size_t>(c)]);
        if (!slot.has_region) {
            ++result.dois_without_peaks;
            continue;
        }
        result.regions.push_back(std::move(slot.region));
        if (slot.has_peaks)
            result.peaks.push_back(std::move(slot.peaks));
        else
            ++result.dois_without_peaks;
    }

    result.graph = precedence_graph(result.peaks);
    result.tests = precedence_tests(result.graph, result.base_rates);
    return result;
}

std::string precedence_dot(const PrecedenceGraph& graph) {
    std::ostringstream os;
    os << "digraph precedence {\n";
    for (int c = 0; c < kPathwayClassCount; ++c)
        os << "  " << to_string(static_cast<PathwayClass>(c)) << ";\n";
    char buf[96];
    for (int a = 0; a < kPathwayClassCount; ++a) {
        for (int b = 0; b < kPathwayClassCount; ++b) {
            auto raw = graph.raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (raw == 0) continue;
            double pct = graph.normalized[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            double med =
                graph.median_dt_hours[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            std::snprintf(buf, sizeof(buf), "%.1f%% (median %.1fh)", pct, med);
            os << "  " << to_string(static_cast<PathwayClass>(a)) << " -> "
               << to_string(static_cast<PathwayClass>(b)) << " [label=\"" << buf
               << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace sciflow
