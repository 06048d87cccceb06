#ifndef SCIFLOW_INGEST_HPP
#define SCIFLOW_INGEST_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sciflow/graph.hpp"
#include "sciflow/model.hpp"

namespace sciflow {

struct LoadReport {
    std::size_t post_records = 0;
    std::size_t news_records = 0;
    std::size_t user_records = 0;
    std::size_t synthesized_users = 0;
    std::size_t excluded_aggregator_mentions = 0;

    std::string to_json() const;
};

struct LoadOptions {
    // outlet domains (lowercase) dropped from the news stream
    std::set<std::string> excluded_outlets;
};

// Reads the three JSONL files (an empty path skips that stream), validates
// every record, sorts posts and news chronologically, and indexes DOIs.
// Author references with no user record
// are synthesized as unlabeled users and counted in the report.
Corpus load_corpus(const std::string& posts_path, const std::string& news_path,
                   const std::string& users_path, LoadReport* report = nullptr,
                   const LoadOptions& options = {});

// Single-stream loaders used by load_corpus and the synth round-trip tests.
std::vector<PostEvent> load_posts(const std::string& path);
std::vector<NewsMention> load_news(const std::string& path);
std::map<std::string, UserRecord> load_users(const std::string& path);

// JSONL writers; field order and number formatting are fixed so identical
// data always produces identical bytes.
void write_posts(const std::string& path, const std::vector<PostEvent>& posts);
void write_news(const std::string& path, const std::vector<NewsMention>& news);
void write_users(const std::string& path, const std::map<std::string, UserRecord>& users);

// Duplicate-title resolution: keeps the earliest mention of each normalized
// title; exact-timestamp ties keep the highest daily_visits (missing ranks
// lowest), then the lexicographically smallest outlet_domain, then the
// smallest article_id. Input order is preserved among survivors.
std::vector<NewsMention> dedup_syndication(const std::vector<NewsMention>& news,
                                           std::size_t* removed = nullptr);

// Outlet graph: one edge increment per pair of articles from two different
// outlets carrying the same normalized title within `window_seconds`.
WeightedGraph build_syndication_graph(const std::vector<NewsMention>& news,
                                      std::int64_t window_seconds = 3600);

struct MediaDay {
    Timestamp day;            // UTC midnight
    double outlet_count = 0;  // trailing means over window_days
    double total_visits = 0;
    double mean_trust = 0;
    bool trust_defined = false;
};

// Daily distinct-outlet counts, visit sums, and trust means between the first
// and last mention day, smoothed by a trailing mean over window_days. Days
// without mentions contribute zero counts and are skipped by the trust mean.
std::vector<MediaDay> rolling_media_series(const std::vector<NewsMention>& news,
                                           int window_days = 7);

} // namespace sciflow

#endif
