#ifndef SCIFLOW_PATHWAYS_HPP
#define SCIFLOW_PATHWAYS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sciflow/model.hpp"
#include "sciflow/stats.hpp"

namespace sciflow {

// All pathway computations run in hours since the Unix epoch.
inline double to_hours(Timestamp t) { return static_cast<double>(t) / 3600.0; }

enum class OutletClass { LC, HC, unclassified };

// PSP: pro-consensus superspreaders, ASP: anti-consensus superspreaders,
// LC/HC: low/high-credibility outlets.
enum class PathwayClass { PSP, ASP, LC, HC };
inline constexpr int kPathwayClassCount = 4;
const char* to_string(PathwayClass c);

// mass comparisons tolerate this much rounding slack
inline constexpr double kMassEps = 1e-9;

struct Kde {
    std::vector<double> grid;     // hours, uniform spacing
    std::vector<double> density;  // per hour, trapezoid integral 1 over grid
    double bandwidth_hours = 0;
};

// Gaussian KDE evaluated on a fixed uniform grid. Bandwidth defaults to
// Silverman's rule on the sample in hours (0.9 min(sd, IQR/1.34) n^-1/5,
// falling back to sd when the IQR is zero); the result is renormalized so the
// trapezoid integral over the grid equals 1.
Kde gaussian_kde(const std::vector<double>& sample_hours, std::vector<double> grid,
                 std::optional<double> bandwidth_hours = std::nullopt);

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

struct DensityRegion {
    std::string doi;
    Kde kde;                 // over [first mention, last mention]
    double start_hours = 0;  // grid-aligned until a lookback moves it
    double end_hours = 0;
    double mass = 0;
    std::int64_t lookback_seconds = 0;
    bool degenerate = false;  // all mentions at one instant
};

// Smallest grid-aligned interval whose trapezoid mass reaches min_mass, ties
// resolved toward the earliest start.
DensityRegion density_region(const std::vector<Timestamp>& mentions,
                             std::size_t grid_points = 512,
                             std::optional<double> bandwidth_hours = std::nullopt,
                             double min_mass = 0.5);

// Moves the region start to the earliest mention inside
// [start - lookback, start), when one exists, and recomputes the mass.
DensityRegion apply_lookback(const DensityRegion& region,
                             const std::vector<Timestamp>& mentions,
                             std::int64_t lookback_seconds);

enum class PeakMode {
    class_conditional,  // per-class KDE with its own Silverman bandwidth
    global_bandwidth    // per-class KDE using the all-mention bandwidth
};

struct ClassPeaks {
    std::string doi;
    std::array<std::optional<double>, kPathwayClassCount> peak_hours;
    std::array<std::int64_t, kPathwayClassCount> mentions_in_region{};
};

// Per-class density peak inside the region; classes with fewer than
// min_class_mentions mentions in the region are omitted. Grid-point ties go
// to the earlier point.
ClassPeaks class_peaks(const std::string& doi, const DensityRegion& region,
                       const std::array<std::vector<Timestamp>, kPathwayClassCount>& class_mentions,
                       std::int64_t min_class_mentions = 3,
                       PeakMode mode = PeakMode::class_conditional);

struct PrecedenceGraph {
    // raw[a][b]: DOIs where class a's peak strictly precedes class b's
    std::array<std::array<std::int64_t, kPathwayClassCount>, kPathwayClassCount> raw{};
    // row-normalized percentages over each class's outgoing wins
    std::array<std::array<double, kPathwayClassCount>, kPathwayClassCount> normalized{};
    // median peak gap in hours for DOIs counted in raw[a][b]
    std::array<std::array<double, kPathwayClassCount>, kPathwayClassCount> median_dt_hours{};
    std::array<std::array<bool, kPathwayClassCount>, kPathwayClassCount> has_median{};
};

PrecedenceGraph precedence_graph(const std::vector<ClassPeaks>& peaks);

struct PrecedencePair {
    PathwayClass a;
    PathwayClass b;
    std::int64_t wins_a = 0;
    std::int64_t wins_b = 0;
    TestResult chi2;  // observed wins vs base-rate-proportional expectation
};

// Base rates are per-class mention totals across eligible DOIs; the expected
// win split of each pair is proportional to them.
std::vector<PrecedencePair> precedence_tests(
    const PrecedenceGraph& graph,
    const std::array<double, kPathwayClassCount>& base_rates);

struct PathwayOptions {
    std::size_t grid_points = 512;
    std::optional<double> bandwidth_hours;
    double min_mass = 0.5;
    std::int64_t lookback_seconds = 0;
    std::int64_t min_media_mentions = 100;
    std::int64_t min_social_mentions = 100;
    std::int64_t min_class_mentions = 3;
    PeakMode peak_mode = PeakMode::class_conditional;
    int threads = 1;
};

std::set<std::string> eligible_dois(const Corpus& corpus,
                                    std::int64_t min_media_mentions = 100,
                                    std::int64_t min_social_mentions = 100);

struct PathwayResult {
    std::vector<DensityRegion> regions;  // per eligible DOI, id-sorted
    std::vector<ClassPeaks> peaks;
    PrecedenceGraph graph;
    std::vector<PrecedencePair> tests;
    std::array<double, kPathwayClassCount> base_rates{};
    std::size_t dois_without_peaks = 0;
};

// Full per-DOI pipeline: eligibility, KDE region, lookback, class peaks,
// precedence aggregation in DOI lexicographic order.
PathwayResult analyze_pathways(const Corpus& corpus,
                               const std::set<std::string>& psp,
                               const std::set<std::string>& asp,
                               const std::map<std::string, OutletClass>& outlet_classes,
                               const PathwayOptions& options = {});

std::string precedence_dot(const PrecedenceGraph& graph);

} // namespace sciflow

#endif
