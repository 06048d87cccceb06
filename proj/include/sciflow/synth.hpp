#ifndef SCIFLOW_SYNTH_HPP
#define SCIFLOW_SYNTH_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sciflow/model.hpp"

namespace sciflow {

struct RingSpec {
    int size = 10;
    int shared_posts = 15;
    double jitter_minutes = 5;
    Stance stance = Stance::contrarian;
    // when set, ring members also retweet the seed pool like background users
    bool background_activity = false;
};

struct SpreaderSpec {
    int count = 1;
    std::int64_t h = 12;  // exact h-index, built as h posts with h retweets
    Stance stance = Stance::contrarian;
};

struct PathwaySpec {
    int dois = 0;
    int sp_mentions = 60;        // per DOI, original posts by planted spreaders
    int news_per_class = 60;     // per DOI and outlet class
    int scatter_mentions = 120;  // per DOI, diffuse background posts
    double lag_hours = 6.0;      // news bump offset behind the spreader bump
    double sigma_hours = 1.0;
    double scatter_before_hours = 30.0;
    double scatter_span_hours = 100.0;
};

struct Scenario {
    std::uint64_t seed = 1;
    Timestamp start = 1609459200;  // 2021-01-01T00:00:00Z
    double duration_hours = 24.0 * 60;
    int background_users = 500;
    double background_rate_per_hour = 0.02;   // retweets
    double background_post_rate_per_hour = 0; // originals
    double contrarian_share = 0.5;
    int seed_posts = 200;  // retweet-target pool
    int seed_authors = 20;
    int topic_count = 6;
    std::vector<RingSpec> rings;
    std::vector<SpreaderSpec> spreaders;
    PathwaySpec pathways;
    int lc_outlets = 0;
    int hc_outlets = 0;
    int syndicated_clones = 0;  // duplicate-title articles for dedup exercises
    // per-segment emotion mixes for original posts; empty means all neutral
    std::map<std::string, double> background_emotions;
    std::map<std::string, double> spreader_emotions;
};

Scenario scenario_from_json(const std::string& json_text);

struct GroundTruth {
    std::vector<std::set<std::string>> rings;
    std::set<std::string> ring_members;  // union over rings
    std::map<std::string, std::int64_t> spreader_h;
    std::set<std::string> psp;  // conformist planted spreaders
    std::set<std::string> asp;  // contrarian planted spreaders
    std::map<std::string, double> doi_lag_hours;
    std::map<std::string, double> doi_anchor_hours;  // spreader bump center
    std::map<std::string, std::string> outlet_labels;  // domain -> low|mixed|high

    std::string to_json() const;
};

// Seed-deterministic corpus construction; every record passes ingest
// validation and identical scenarios produce byte-identical files.
std::pair<Corpus, GroundTruth> generate(const Scenario& scenario);

// Writes posts.jsonl, news.jsonl, users.jsonl, groundtruth.json and
// factuality.csv (domain,label) into the directory.
void emit_scenario(const Scenario& scenario, const std::string& out_dir);

struct DetectionScore {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

DetectionScore score_detection(const std::set<std::string>& truth,
                               const std::set<std::string>& detected);

} // namespace sciflow

#endif
