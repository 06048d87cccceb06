#ifndef SCIFLOW_PROFILING_HPP
#define SCIFLOW_PROFILING_HPP

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sciflow/model.hpp"
#include "sciflow/spreaders.hpp"

namespace sciflow {

// Which posts feed a group's topic-attention distribution.
enum class EventBase { retweets, originals, all };

struct TopicDistribution {
    std::string group;
    std::map<std::string, std::int64_t> counts;  // over the corpus vocabulary
    std::map<std::string, double> shares;        // sum to 1
    double gini_coefficient = 0;
    std::int64_t labeled_events = 0;
};

// Counts topic labels of the group's posts (topic of a retweet falls back to
// the retweeted post's label) over the corpus-wide topic vocabulary, so
// distributions of different groups are comparable. Throws when the group has
// no topic-labeled events in the chosen base.
TopicDistribution topic_distribution(const std::string& label,
                                     const std::set<std::string>& group,
                                     const Corpus& corpus,
                                     EventBase base = EventBase::retweets);

struct GiniComparison {
    std::string group_a;
    std::string group_b;
    double gini_a = 0;
    double mean_diff = 0;        // gini(group) - gini(sample), averaged
    double standard_error = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::size_t iterations = 0;
};

// Per iteration, draws |group| users without replacement from the population
// and compares topic-concentration Gini values. CI is the percentile interval
// of the bootstrap differences.
GiniComparison bootstrap_gini_diff(const std::set<std::string>& group,
                                   const std::set<std::string>& population,
                                   const Corpus& corpus, std::size_t iterations,
                                   std::uint64_t seed,
                                   EventBase base = EventBase::retweets,
                                   double ci_level = 0.95, int threads = 1);

enum class TermField { terms, hashtags };

struct TermFrequency {
    std::string term;
    std::int64_t count = 0;
    double relative_frequency = 0;
};

// Token frequencies over the group's original posts, stoplist removed
// (case-insensitive), descending with lexicographic tie order.
std::vector<TermFrequency> term_frequencies(const std::set<std::string>& group,
                                            const Corpus& corpus, TermField field,
                                            const std::set<std::string>& stoplist,
                                            std::size_t top_k);

struct EmotionRow {
    std::string group;
    std::array<double, kEmotionCount> share_pct{};  // sums to 100 when available
    std::int64_t labeled_posts = 0;
    bool available = false;
};

// Percentage of each group's emotion-labeled original posts per label.
std::vector<EmotionRow> emotion_shares(
    const std::vector<std::pair<std::string, std::set<std::string>>>& groups,
    const Corpus& corpus);

// Welch t-test on bot scores of two partitions, restricted to users with at
// least min_posts posts and a recorded score. Bootstrapped mode delegates to
// bootstrap_profile_test with partition_b as the population.
GroupComparison botscore_comparison(const std::set<std::string>& partition_a,
                                    const std::set<std::string>& partition_b,
                                    const Corpus& corpus, bool bootstrapped,
                                    std::uint64_t seed,
                                    std::size_t iterations = 10000,
                                    std::int64_t min_posts = 10, int threads = 1);

extern const std::vector<std::string> kDefaultBotMarkers;

// Fraction of names containing any marker substring, case-insensitive.
double overt_bot_name_share(const std::set<std::string>& names,
                            const std::vector<std::string>& markers = kDefaultBotMarkers);

} // namespace sciflow

#endif
