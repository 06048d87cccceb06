#include "sciflow/profiling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sciflow/error.hpp"
#include "sciflow/stats.hpp"
#include "sciflow/util.hpp"

namespace sciflow {

namespace {

std::set<std::string> topic_vocabulary(const Corpus& corpus) {
    std::set<std::string> vocab;
    for (const auto& p : corpus.posts)
        if (p.topic_label) vocab.insert(*p.topic_label);
    return vocab;
}

bool in_base(const PostEvent& p, EventBase base) {
    switch (base) {
        case EventBase::retweets: return p.is_retweet();
        case EventBase::originals: return !p.is_retweet();
        case EventBase::all: return true;
    }
    return false;
}

// topic of the event, falling back to the retweeted post's label
std::optional<std::string> event_topic(const Corpus& corpus,
                                       const std::map<std::string, std::size_t>& post_index,
                                       const PostEvent& p) {
    if (p.topic_label) return p.topic_label;
    if (p.is_retweet()) {
        auto it = post_index.find(*p.retweeted_post_id);
        if (it != post_index.end()) return corpus.posts[it->second].topic_label;
    }
    return std::nullopt;
}

std::map<std::string, std::int64_t> topic_counts(
    const Corpus& corpus, const std::map<std::string, std::size_t>& post_index,
    const std::set<std::string>& vocab, const std::set<std::string>& group,
    EventBase base, std::int64_t* labeled) {
    std::map<std::string, std::int64_t> counts;
    for (const auto& t : vocab) counts.emplace(t, 0);
    std::int64_t n = 0;
    for (const auto& p : corpus.posts) {
        if (!in_base(p, base) || !group.count(p.author_id)) continue;
        auto topic = event_topic(corpus, post_index, p);
        if (!topic) continue;
        auto it = counts.find(*topic);
        if (it != counts.end()) {
            ++it->second;
            ++n;
        }
    }
    if (labeled) *labeled = n;
    return counts;
}

double gini_of_counts(const std::map<std::string, std::int64_t>& counts) {
    std::vector<double> values;
    values.reserve(counts.size());
    for (const auto& [topic, c] : counts) values.push_back(static_cast<double>(c));
    return gini(values);
}

} // namespace

TopicDistribution topic_distribution(const std::string& label,
                                     const std::set<std::string>& group,
                                     const Corpus& corpus, EventBase base) {
    TopicDistribution d;
    d.group = label;
    auto post_index = build_post_index(corpus);
    auto vocab = topic_vocabulary(corpus);
    if (vocab.empty()) throw Error("corpus carries no topic labels");
    d.counts = topic_counts(corpus, post_index, vocab, group, base, &d.labeled_events);
    if (d.labeled_events == 0)
        throw Error("group '" + label + "' has no topic-labeled events");
    for (const auto& [topic, c] : d.counts)
        d.shares[topic] = static_cast<double>(c) / static_cast<double>(d.labeled_events);
    d.gini_coefficient = gini_of_counts(d.counts);
    return d;
}

GiniComparison bootstrap_gini_diff(const std::set<std::string>& group,
                                   const std::set<std::string>& population,
                                   const Corpus& corpus, std::size_t iterations,
                                   std::uint64_t seed, EventBase base,
                                   double ci_level, int threads) {
    if (iterations < 2) throw Error("iterations must be >= 2");
    if (population.size() < group.size())
        throw Error("population smaller than the target group");

    auto post_index = build_post_index(corpus);
    auto vocab = topic_vocabulary(corpus);
    if (vocab.empty()) throw Error("corpus carries no topic labels");

    GiniComparison cmp;
    cmp.iterations = iterations;
    std::int64_t labeled = 0;
    auto group_counts = topic_counts(corpus, post_index, vocab, group, base, &labeled);
    if (labeled == 0) throw Error("target group has no topic-labeled events");
    cmp.gini_a = gini_of_counts(group_counts);

    std::vector<std::string> pool(population.begin(), population.end());
    std::vector<double> diffs(iterations);
    parallel_for(iterations, threads, [&](std::size_t i) {
        std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(i));
        auto idx = sample_indices_without_replacement(pool.size(), group.size(), rng);
        std::set<std::string> sample;
        for (std::size_t j : idx) sample.insert(pool[j]);
        std::int64_t sample_labeled = 0;
        auto counts =
            topic_counts(corpus, post_index, vocab, sample, base, &sample_labeled);
        if (sample_labeled == 0)
            throw Error("bootstrap sample has no topic-labeled events");
        diffs[i] = cmp.gini_a - gini_of_counts(counts);
    });

    cmp.mean_diff = mean(diffs);
    cmp.standard_error = std::sqrt(sample_variance(diffs));
    auto [lo, hi] = percentile_ci(diffs, ci_level);
    cmp.ci_low = lo;
    cmp.ci_high = hi;
    return cmp;
}

std::vector<TermFrequency> term_frequencies(const std::set<std::string>& group,
                                            const Corpus& corpus, TermField field,
                                            const std::set<std::string>& stoplist,
                                            std::size_t top_k) {
    std::set<std::string> stop;
    for (const auto& s : stoplist) stop.insert(to_lower(s));

    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;
    bool any_original = false;
    for (const auto& p : corpus.posts) {
        if (p.is_retweet() || !group.count(p.author_id)) continue;
        any_original = true;
        const auto& tokens = field == TermField::terms ? p.terms : p.hashtags;
        for (const auto& tok : tokens) {
            if (stop.count(to_lower(tok))) continue;
            ++counts[tok];
            ++total;
        }
    }
    if (!any_original) throw Error("group has no original posts");

    std::vector<TermFrequency> out;
    out.reserve(counts.size());
    for (const auto& [term, c] : counts) {
        TermFrequency t;
        t.term = term;
        t.count = c;
        t.relative_frequency = static_cast<double>(c) / static_cast<double>(total);
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const TermFrequency& a, const TermFrequency& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.term < b.term;
    });
    if (out.size() > top_k) out.resize(top_k);
    return out;
}

std::vector<EmotionRow> emotion_shares(
    const std::vector<std::pair<std::string, std::set<std::string>>>& groups,
    const Corpus& corpus) {
    std::vector<EmotionRow> rows;
    rows.reserve(groups.size());
    for (const auto& [label, members] : groups) {
        EmotionRow row;
        row.group = label;
        std::array<std::int64_t, kEmotionCount> counts{};
        for (const auto& p : corpus.posts) {
            if (p.is_retweet() || !p.emotion_label || !members.count(p.author_id))
                continue;
            ++counts[static_cast<std::size_t>(*p.emotion_label)];
            ++row.labeled_posts;
        }
        if (row.labeled_posts > 0) {
            row.available = true;
            for (int e = 0; e < kEmotionCount; ++e)
                row.share_pct[static_cast<std::size_t>(e)] =
                    100.0 * static_cast<double>(counts[static_cast<std::size_t>(e)]) /
                    static_cast<double>(row.labeled_posts);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

GroupComparison botscore_comparison(const std::set<std::string>& partition_a,
                                    const std::set<std::string>& partition_b,
                                    const Corpus& corpus, bool bootstrapped,
                                    std::uint64_t seed, std::size_t iterations,
                                    std::int64_t min_posts, int threads) {
    std::map<std::string, std::int64_t> activity;
    for (const auto& p : corpus.posts) ++activity[p.author_id];

    std::map<std::string, double> metric;
    auto eligible = [&](const std::string& u) {
        const UserRecord* rec = corpus.find_user(u);
        if (!rec || !rec->bot_score) return false;
        auto it = activity.find(u);
        return it != activity.end() && it->second >= min_posts;
    };
    std::set<std::string> a, b;
    for (const auto& u : partition_a)
        if (eligible(u)) {
            a.insert(u);
            metric[u] = *corpus.find_user(u)->bot_score;
        }
    for (const auto& u : partition_b)
        if (eligible(u)) {
            b.insert(u);
            metric[u] = *corpus.find_user(u)->bot_score;
        }
    if (a.size() < 2 || b.size() < 2)
        throw Error("fewer than 2 scored users in a partition");

    if (bootstrapped)
        return bootstrap_profile_test(a, b, metric, iterations, seed, "bot_score",
                                      threads);

    std::vector<double> va, vb;
    for (const auto& u : a) va.push_back(metric.at(u));
    for (const auto& u : b) vb.push_back(metric.at(u));
    TestResult r = welch_t(va, vb);
    GroupComparison cmp;
    cmp.metric = "bot_score";
    cmp.t_statistic = r.statistic;
    cmp.p_value = r.p_value;
    cmp.iterations = 1;
    cmp.mean_a = mean(va);
    cmp.mean_b = mean(vb);
    cmp.n_a = va.size();
    cmp.n_b = vb.size();
    return cmp;
}

const std::vector<std::string> kDefaultBotMarkers = {
    "bot", "science", "paper", "hub", "medrxiv", "biorxiv", "preprint", "article"};

double overt_bot_name_share(const std::set<std::string>& names,
                            const std::vector<std::string>& markers) {
    if (names.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& name : names) {
        for (const auto& m : markers) {
            if (contains_ci(name, m)) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(names.size());
}

} // namespace sciflow
