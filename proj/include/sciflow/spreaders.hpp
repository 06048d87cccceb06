#ifndef SCIFLOW_SPREADERS_HPP
#define SCIFLOW_SPREADERS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sciflow/model.hpp"
#include "sciflow/stats.hpp"

namespace sciflow {

struct SpreaderScore {
    std::string user_id;
    std::int64_t h_index = 0;
    std::int64_t original_post_count = 0;
    std::vector<std::int64_t> retweet_counts;  // descending per-post tallies

    bool operator==(const SpreaderScore&) const = default;
};

// Largest h such that at least h entries are >= h.
std::int64_t h_index(std::vector<std::int64_t> retweet_counts);

struct SpreaderSelection {
    std::vector<SpreaderScore> scores;  // users with >= 1 original post, ranked
    std::set<std::string> selected;     // top ceil(percentile * |scores|)
    double percentile = 0;
};

// Ranking order: h_index descending, then original_post_count descending,
// then user_id ascending. Retweet tallies count only retweets present in the
// corpus.
SpreaderSelection select_superspreaders(const Corpus& corpus, double percentile = 0.01);

struct GroupComparison {
    std::string metric;
    std::string group_a;
    std::string group_b;
    double t_statistic = 0;
    double p_value = 0;
    std::size_t iterations = 0;
    double mean_a = 0;
    double mean_b = 0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    std::size_t excluded = 0;  // users lacking the metric
};

// Repeatedly samples |target| users without replacement from the population
// and runs Welch's t-test of target vs sample; reports mean t and mean p
// across iterations. The per-iteration RNG stream is seeded with
// seed ^ iteration, so results do not depend on worker count or population
// iteration order (users are processed in id order).
GroupComparison bootstrap_profile_test(const std::set<std::string>& target,
                                       const std::set<std::string>& population,
                                       const std::map<std::string, double>& metric,
                                       std::size_t iterations, std::uint64_t seed,
                                       const std::string& metric_name = "",
                                       int threads = 1);

struct StanceContingency {
    TestResult test;
    std::int64_t observed_contrarian = 0;
    std::int64_t observed_conformist = 0;
    std::int64_t expected_contrarian = 0;
    std::int64_t expected_conformist = 0;
};

// Expected counts scale the reference population's stance proportions down to
// the observed group's labeled size, rounded to nearest integer.
StanceContingency stance_contingency(const std::set<std::string>& observed_group,
                                     const std::set<std::string>& reference_population,
                                     const Corpus& corpus);

struct AmplificationReport {
    bool empty = false;
    // raw retweet counts by amplified-account class
    std::int64_t contrarian_superspreader = 0;
    std::int64_t other_contrarian = 0;
    std::int64_t conformist_superspreader = 0;
    std::int64_t other_conformist = 0;
    std::int64_t unlabeled = 0;
    // percentage shares over the four labeled classes, summing to 100
    double share_contrarian_superspreader = 0;
    double share_other_contrarian = 0;
    double share_conformist_superspreader = 0;
    double share_other_conformist = 0;
    // fraction of each superspreader class retweeted at least once
    double coverage_contrarian_superspreaders = 0;
    double coverage_conformist_superspreaders = 0;
};

AmplificationReport amplification_crossover(const std::set<std::string>& coordinated,
                                            const std::set<std::string>& superspreaders,
                                            const Corpus& corpus);

// Kendall tau-b over the intersection of two ranked item lists.
TestResult rank_correlation(const std::vector<std::string>& ranking_a,
                            const std::vector<std::string>& ranking_b);

} // namespace sciflow

#endif
