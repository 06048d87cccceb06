#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sciflow/alignment.hpp"
#include "sciflow/coactivity.hpp"
#include "sciflow/error.hpp"
#include "sciflow/ingest.hpp"
#include "sciflow/pathways.hpp"
#include "sciflow/profiling.hpp"
#include "sciflow/spreaders.hpp"
#include "sciflow/synth.hpp"
#include "sciflow/time.hpp"
#include "sciflow/util.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sciflow;

constexpr const char* kVersion = "0.1.0";

struct Opts {
    std::string posts, news, users;
    std::string out = "out";
    std::string config_path;
    double window_min = 30.0;
    std::int64_t min_user_rt = 5;
    std::int64_t min_post_rt = 10;
    bool include_self_retweets = false;
    double centrality_pct = 0.01;
    std::string centrality_base = "graph";  // graph | positive
    std::size_t refine_above = 50;
    double spreader_pct = 0.01;
    std::vector<int> knn = {1, 5, 10};
    std::size_t grid = 512;
    double bandwidth = 0.0;  // hours; 0 selects the Silverman rule
    double min_mass = 0.5;
    std::vector<double> lookback = {0.0, 3.0, 6.0, 12.0};  // hours
    std::int64_t min_media_mentions = 100;
    std::int64_t min_social_mentions = 100;
    std::int64_t min_class_mentions = 3;
    std::string peaks = "class";  // class | global
    std::size_t boot_iters = 10000;
    std::uint64_t seed = 42;
    std::string exclude_aggregators;
    std::string stoplist;
    std::string factuality;
    double trust_cut = -1.0;  // explicit threshold when no factuality labels
    std::string unit = "superspreader";  // superspreader | neighbor
    std::string gini_base = "retweets";  // retweets | originals | all
    std::size_t top_terms = 50;
    double synd_window_min = 60.0;
    int threads = 1;
    std::string scenario;
};

std::string fmt(double v) { return format_double(v); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::set<std::string> read_word_list(const std::string& path) {
    std::set<std::string> out;
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string word = to_lower(normalize_whitespace(line));
        if (word.empty() || word[0] == '#') continue;
        out.insert(word);
    }
    return out;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

struct RunState {
    const Opts& o;
    std::string out_dir;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;
    std::map<std::string, std::string> inputs;  // path -> content digest

    explicit RunState(const Opts& opts) : o(opts), out_dir(opts.out) {}

    void track_input(const std::string& path) {
        if (path.empty()) return;
        inputs[path] = "fnv1a64:" + hex64(fnv1a64(read_file(path)));
    }
    void save(const std::string& name, const std::string& content) {
        std::ofstream f(out_dir + "/" + name, std::ios::binary);
        if (!f) throw Error("cannot write '" + out_dir + "/" + name + "'");
        f << content;
        outputs.push_back(name);
    }
    void record_output(const std::string& name) { outputs.push_back(name); }
    void note(const std::string& text) {
        notes.push_back(text);
        std::cerr << "sciflow: " << text << "\n";
    }
};

std::map<std::string, std::string> resolved_config(const Opts& o) {
    std::map<std::string, std::string> c;
    c["posts"] = o.posts;
    c["news"] = o.news;
    c["users"] = o.users;
    c["out"] = o.out;
    c["window-min"] = fmt(o.window_min);
    c["min-user-rt"] = std::to_string(o.min_user_rt);
    c["min-post-rt"] = std::to_string(o.min_post_rt);
    c["include-self-retweets"] = o.include_self_retweets ? "1" : "0";
    c["centrality-pct"] = fmt(o.centrality_pct);
    c["centrality-base"] = o.centrality_base;
    c["refine-above"] = std::to_string(o.refine_above);
    c["spreader-pct"] = fmt(o.spreader_pct);
    {
        std::string k;
        for (int v : o.knn) k += (k.empty() ? "" : ",") + std::to_string(v);
        c["knn"] = k;
    }
    c["grid"] = std::to_string(o.grid);
    c["bandwidth"] = fmt(o.bandwidth);
    c["min-mass"] = fmt(o.min_mass);
    {
        std::string l;
        for (double v : o.lookback) l += (l.empty() ? "" : ",") + fmt(v);
        c["lookback"] = l;
    }
    c["min-media-mentions"] = std::to_string(o.min_media_mentions);
    c["min-social-mentions"] = std::to_string(o.min_social_mentions);
    c["min-class-mentions"] = std::to_string(o.min_class_mentions);
    c["peaks"] = o.peaks;
    c["boot-iters"] = std::to_string(o.boot_iters);
    c["seed"] = std::to_string(o.seed);
    c["exclude-aggregators"] = o.exclude_aggregators;
    c["stoplist"] = o.stoplist;
    c["factuality"] = o.factuality;
    c["trust-cut"] = fmt(o.trust_cut);
    c["unit"] = o.unit;
    c["gini-base"] = o.gini_base;
    c["top-terms"] = std::to_string(o.top_terms);
    c["synd-window-min"] = fmt(o.synd_window_min);
    // worker count changes scheduling, never results, so it stays out of the
    // recorded config; reruns at any parallelism must compare byte-identical
    c["scenario"] = o.scenario;
    return c;
}

void write_manifest(RunState& state, const std::string& subcommand) {
    auto config = resolved_config(state.o);
    std::string serialized;
    for (const auto& [k, v] : config) serialized += k + "=" + v + "\n";
    ordered_json j;
    j["tool"] = "sciflow";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["config_hash"] = "fnv1a64:" + hex64(fnv1a64(serialized));
    j["inputs"] = state.inputs;
    std::sort(state.outputs.begin(), state.outputs.end());
    j["outputs"] = state.outputs;
    j["notes"] = state.notes;
    std::ofstream f(state.out_dir + "/run_manifest.json", std::ios::binary);
    if (!f) throw Error("cannot write run manifest");
    f << j.dump(2) << "\n";
}

void validate(const Opts& o) {
    if (o.window_min <= 0) throw ConfigError("--window-min must be positive");
    if (o.min_user_rt < 0 || o.min_post_rt < 0)
        throw ConfigError("retweet filters must be nonnegative");
    if (o.centrality_pct <= 0 || o.centrality_pct > 1)
        throw ConfigError("--centrality-pct must be in (0,1]");
    if (o.spreader_pct <= 0 || o.spreader_pct > 1)
        throw ConfigError("--spreader-pct must be in (0,1]");
    if (o.centrality_base != "graph" && o.centrality_base != "positive")
        throw ConfigError("--centrality-base must be graph or positive");
    for (int k : o.knn)
        if (k < 1) throw ConfigError("--knn entries must be >= 1");
    if (o.knn.empty()) throw ConfigError("--knn needs at least one value");
    if (o.grid < 2) throw ConfigError("--grid must be >= 2");
    if (o.bandwidth < 0) throw ConfigError("--bandwidth must be >= 0");
    if (o.min_mass <= 0 || o.min_mass > 1)
        throw ConfigError("--min-mass must be in (0,1]");
    if (o.lookback.empty()) throw ConfigError("--lookback needs at least one value");
    for (double lb : o.lookback)
        if (lb < 0) throw ConfigError("--lookback hours must be >= 0");
    if (o.min_media_mentions < 0 || o.min_social_mentions < 0 || o.min_class_mentions < 0)
        throw ConfigError("mention floors must be nonnegative");
    if (o.peaks != "class" && o.peaks != "global")
        throw ConfigError("--peaks must be class or global");
    if (o.boot_iters < 2) throw ConfigError("--boot-iters must be >= 2");
    if (o.unit != "superspreader" && o.unit != "neighbor")
        throw ConfigError("--unit must be superspreader or neighbor");
    if (o.gini_base != "retweets" && o.gini_base != "originals" && o.gini_base != "all")
        throw ConfigError("--gini-base must be retweets, originals or all");
    if (o.threads < 1) throw ConfigError("--threads must be >= 1");
    if (o.synd_window_min <= 0) throw ConfigError("--synd-window-min must be positive");
    if (o.trust_cut > 1) throw ConfigError("--trust-cut must be within [0,1]");
}

EventBase parse_event_base(const std::string& s) {
    if (s == "retweets") return EventBase::retweets;
    if (s == "originals") return EventBase::originals;
    return EventBase::all;
}

std::set<std::string> all_user_ids(const Corpus& corpus) {
    std::set<std::string> ids;
    for (const auto& [id, user] : corpus.users) ids.insert(id);
    return ids;
}

// ---------------------------------------------------------------- stages

void run_ingest(RunState& state, const LoadReport& report) {
    state.save("load_report.json", report.to_json());
}

CoordinationResult run_coord(RunState& state, const Corpus& corpus) {
    const Opts& o = state.o;
    CoactivityOptions copts;
    copts.window_seconds = std::llround(o.window_min * 60.0);
    copts.min_user_retweets = o.min_user_rt;
    copts.min_post_retweets = o.min_post_rt;
    copts.include_self_retweets = o.include_self_retweets;
    copts.threads = o.threads;
    SimilarityGraph sim = build_coretweet_graph(corpus, copts);
    if (sim.all_filtered)
        state.note("coord: every user fell below the activity filters");
    auto centrality = eigenvector_centrality(sim.graph);
    PercentileBase base = o.centrality_base == "positive"
                              ? PercentileBase::positive_centrality
                              : PercentileBase::graph_nodes;
    CoordinationResult res = extract_coordinated(sim, centrality, corpus,
                                                 o.centrality_pct, base, o.refine_above);

    std::map<std::string, WeightedGraph::NodeAttrs> attrs;
    for (const auto& name : sim.graph.node_names()) {
        auto& values = attrs[name].values;
        values["stance"] = to_string(corpus.stance_of(name));
        auto cit = centrality.find(name);
        values["centrality"] = fmt(cit == centrality.end() ? 0.0 : cit->second);
        auto sit = res.subcluster.find(name);
        if (sit != res.subcluster.end()) {
            values["coordinated"] = "1";
            values["subcluster"] = std::to_string(sit->second);
        } else {
            values["coordinated"] = "0";
            values["subcluster"] = "";
        }
    }
    state.save("coactivity.graphml",
               sim.graph.to_graphml(attrs, {"stance", "centrality", "coordinated",
                                            "subcluster"}));
    state.save("coactivity.dot", sim.graph.to_dot(attrs, "coactivity"));
    state.save("stats.csv", NetworkStats::csv_header() + "\n" + res.stats.csv_row() + "\n");

    std::string rows = "user_id,centrality,subcluster\n";
    for (const auto& id : res.coordinated_user_ids)
        rows += csv_escape(id) + "," + fmt(res.centrality.at(id)) + "," +
                std::to_string(res.subcluster.at(id)) + "\n";
    state.save("coordinated.csv", rows);
    return res;
}

SpreaderSelection run_spreaders(RunState& state, const Corpus& corpus) {
    const Opts& o = state.o;
    SpreaderSelection sel = select_superspreaders(corpus, o.spreader_pct);

    std::string rows = "user_id,h_index,stance,credential,selected\n";
    for (const auto& score : sel.scores) {
        const UserRecord* u = corpus.find_user(score.user_id);
        rows += csv_escape(score.user_id) + "," + std::to_string(score.h_index) + "," +
                to_string(u ? u->stance : Stance::unlabeled) + "," +
                to_string(u ? u->credential : Credential::unlabeled) + "," +
                (sel.selected.count(score.user_id) ? "1" : "0") + "\n";
    }
    state.save("spreaders.csv", rows);

    Timestamp last = 0;
    if (!corpus.posts.empty()) last = corpus.posts.back().timestamp;
    if (!corpus.news.empty()) last = std::max(last, corpus.news.back().timestamp);
    std::map<std::string, std::map<std::string, double>> metrics;
    for (const auto& [id, user] : corpus.users) {
        metrics["followers"][id] = static_cast<double>(user.followers);
        metrics["following"][id] = static_cast<double>(user.following);
        if (user.created_at)
            metrics["account_age_days"][id] =
                static_cast<double>(last - *user.created_at) / kSecondsPerDay;
        if (user.bot_score) metrics["bot_score"][id] = *user.bot_score;
    }
    auto population = all_user_ids(corpus);
    std::string cmp =
        "metric,group_a,group_b,t_statistic,p_value,iterations,mean_a,mean_b,n_a,n_b,"
        "excluded\n";
    for (const auto& [name, metric] : metrics) {
        try {
            GroupComparison g = bootstrap_profile_test(sel.selected, population, metric,
                                                       o.boot_iters, o.seed, name,
                                                       o.threads);
            cmp += g.metric + ",superspreaders,population," + fmt(g.t_statistic) + "," +
                   fmt(g.p_value) + "," + std::to_string(g.iterations) + "," +
                   fmt(g.mean_a) + "," + fmt(g.mean_b) + "," + std::to_string(g.n_a) +
                   "," + std::to_string(g.n_b) + "," + std::to_string(g.excluded) + "\n";
        } catch (const Error& e) {
            state.note("spreaders: " + name + " comparison skipped: " + e.what());
        }
    }
    state.save("comparisons.csv", cmp);

    try {
        StanceContingency c = stance_contingency(sel.selected, population, corpus);
        ordered_json j;
        j["observed"] = {{"contrarian", c.observed_contrarian},
                         {"conformist", c.observed_conformist}};
        j["expected"] = {{"contrarian", c.expected_contrarian},
                         {"conformist", c.expected_conformist}};
        j["chi_square"] = c.test.statistic;
        j["p_value"] = c.test.p_value;
        j["phi"] = c.test.effect_phi ? *c.test.effect_phi : 0.0;
        state.save("contingency.json", j.dump(2) + "\n");
    } catch (const Error& e) {
        state.note(std::string("spreaders: stance contingency skipped: ") + e.what());
    }
    return sel;
}

void run_profile(RunState& state, const Corpus& corpus,
                 const CoordinationResult* coord, const SpreaderSelection* spreaders) {
    const Opts& o = state.o;
    CoordinationResult local_coord;
    SpreaderSelection local_sel;
    if (coord == nullptr) {
        try {
            RunState scratch(state.o);  // discard coord artifacts, profile only
            scratch.out_dir = state.out_dir;
            local_coord = run_coord(scratch, corpus);
            for (auto& name : scratch.outputs) state.record_output(name);
            coord = &local_coord;
        } catch (const Error& e) {
            state.note(std::string("profile: coordination unavailable: ") + e.what());
        }
    }
    if (spreaders == nullptr) {
        try {
            RunState scratch(state.o);
            scratch.out_dir = state.out_dir;
            local_sel = run_spreaders(scratch, corpus);
            for (auto& name : scratch.outputs) state.record_output(name);
            spreaders = &local_sel;
        } catch (const Error& e) {
            state.note(std::string("profile: superspreaders unavailable: ") + e.what());
        }
    }

    std::set<std::string> coordinated;
    if (coord)
        coordinated.insert(coord->coordinated_user_ids.begin(),
                           coord->coordinated_user_ids.end());
    std::set<std::string> selected = spreaders ? spreaders->selected : std::set<std::string>{};
    std::set<std::string> background;
    for (const auto& [id, user] : corpus.users)
        if (!coordinated.count(id) && !selected.count(id)) background.insert(id);

    std::vector<std::pair<std::string, std::set<std::string>>> groups;
    if (!coordinated.empty()) groups.emplace_back("coordinated", coordinated);
    if (!selected.empty()) groups.emplace_back("superspreaders", selected);
    if (!background.empty()) groups.emplace_back("background", background);

    EventBase base = parse_event_base(o.gini_base);
    std::string topic_rows = "group,topic,count,share\n";
    for (const auto& [label, members] : groups) {
        try {
            TopicDistribution dist = topic_distribution(label, members, corpus, base);
            for (const auto& [topic, count] : dist.counts)
                topic_rows += csv_escape(label) + "," + csv_escape(topic) + "," +
                              std::to_string(count) + "," + fmt(dist.shares.at(topic)) +
                              "\n";
        } catch (const Error& e) {
            state.note("profile: topic distribution for " + label + " skipped: " +
                       e.what());
        }
    }
    state.save("topicshares.csv", topic_rows);

    ordered_json gini_report = ordered_json::array();
    auto population = all_user_ids(corpus);
    for (const auto& [label, members] : groups) {
        if (label == "background") continue;
        try {
            GiniComparison cmp = bootstrap_gini_diff(members, population, corpus,
                                                     o.boot_iters, o.seed, base, 0.95,
                                                     o.threads);
            ordered_json j;
            j["group"] = label;
            j["population"] = "all_users";
            j["event_base"] = o.gini_base;
            j["gini"] = cmp.gini_a;
            j["mean_diff"] = cmp.mean_diff;
            j["standard_error"] = cmp.standard_error;
            j["ci_low"] = cmp.ci_low;
            j["ci_high"] = cmp.ci_high;
            j["iterations"] = cmp.iterations;
            gini_report.push_back(std::move(j));
        } catch (const Error& e) {
            state.note("profile: gini bootstrap for " + label + " skipped: " + e.what());
        }
    }
    state.save("gini.json", gini_report.dump(2) + "\n");

    std::set<std::string> stop;
    if (!o.stoplist.empty()) stop = read_word_list(o.stoplist);
    std::string term_rows = "group,field,term,count,relative_frequency\n";
    for (const auto& [label, members] : groups) {
        for (TermField field : {TermField::terms, TermField::hashtags}) {
            const char* field_name = field == TermField::terms ? "terms" : "hashtags";
            try {
                auto freqs = term_frequencies(members, corpus, field, stop, o.top_terms);
                for (const auto& tf : freqs)
                    term_rows += csv_escape(label) + "," + field_name + "," +
                                 csv_escape(tf.term) + "," + std::to_string(tf.count) +
                                 "," + fmt(tf.relative_frequency) + "\n";
            } catch (const Error& e) {
                state.note("profile: " + std::string(field_name) + " for " + label +
                           " skipped: " + e.what());
            }
        }
    }
    state.save("terms.csv", term_rows);

    std::string emo_rows = "group,anger,disgust,fear,joy,neutral,sadness,surprise,"
                           "labeled_posts\n";
    for (const auto& row : emotion_shares(groups, corpus)) {
        if (!row.available) {
            state.note("profile: no emotion labels for " + row.group);
            continue;
        }
        emo_rows += csv_escape(row.group);
        for (double share : row.share_pct) emo_rows += "," + fmt(share);
        emo_rows += "," + std::to_string(row.labeled_posts) + "\n";
    }
    state.save("emotions.csv", emo_rows);

    ordered_json bots;
    if (!coordinated.empty() && !background.empty()) {
        try {
            GroupComparison g = botscore_comparison(coordinated, background, corpus,
                                                    false, o.seed, o.boot_iters, 10,
                                                    o.threads);
            bots["coordinated_vs_background"] = {
                {"t_statistic", g.t_statistic}, {"p_value", g.p_value},
                {"mean_a", g.mean_a},           {"mean_b", g.mean_b},
                {"n_a", g.n_a},                 {"n_b", g.n_b},
                {"excluded", g.excluded}};
        } catch (const Error& e) {
            state.note(std::string("profile: bot score comparison skipped: ") + e.what());
        }
        bots["overt_marker_share_coordinated"] = overt_bot_name_share(coordinated);
        bots["overt_marker_share_background"] = overt_bot_name_share(background);
    }
    state.save("botscore.json", bots.dump(2) + "\n");

    if (!coordinated.empty() && !selected.empty()) {
        AmplificationReport rep = amplification_crossover(coordinated, selected, corpus);
        ordered_json j;
        j["empty"] = rep.empty;
        j["retweets"] = {{"contrarian_superspreader", rep.contrarian_superspreader},
                         {"other_contrarian", rep.other_contrarian},
                         {"conformist_superspreader", rep.conformist_superspreader},
                         {"other_conformist", rep.other_conformist},
                         {"unlabeled", rep.unlabeled}};
        j["shares_pct"] = {{"contrarian_superspreader", rep.share_contrarian_superspreader},
                           {"other_contrarian", rep.share_other_contrarian},
                           {"conformist_superspreader", rep.share_conformist_superspreader},
                           {"other_conformist", rep.share_other_conformist}};
        j["coverage"] = {{"contrarian_superspreaders", rep.coverage_contrarian_superspreaders},
                         {"conformist_superspreaders", rep.coverage_conformist_superspreaders}};
        ordered_json top = ordered_json::array();
        auto targets = top_retweeted_in(coordinated, corpus, &selected);
        for (std::size_t i = 0; i < targets.size() && i < 20; ++i) {
            top.push_back({{"user_id", targets[i].user_id},
                           {"retweets", targets[i].retweet_count},
                           {"stance", to_string(targets[i].stance)},
                           {"superspreader", targets[i].is_superspreader}});
        }
        j["top_amplified"] = std::move(top);
        state.save("crossover.json", j.dump(2) + "\n");
    }
}

std::map<std::string, OutletClass> resolve_outlet_classes(RunState& state,
                                                          const Corpus& corpus,
                                                          bool write_cut) {
    const Opts& o = state.o;
    if (!o.factuality.empty()) {
        auto labels = load_factuality_csv(o.factuality);
        auto trust = outlet_trust_scores(corpus.news);
        std::vector<std::pair<double, bool>> labeled;
        for (const auto& [domain, trustworthy] : labels) {
            auto it = trust.find(domain);
            if (it != trust.end()) labeled.emplace_back(it->second, trustworthy);
        }
        if (labeled.empty())
            throw Error("no factuality-labeled outlet carries a trust score");
        TrustCut cut = youden_cut(labeled);
        if (write_cut) {
            ordered_json j;
            j["threshold"] = cut.threshold;
            j["youden_j"] = cut.youden_j;
            j["f1"] = cut.f1;
            j["labeled_outlets"] = labeled.size();
            ordered_json roc = ordered_json::array();
            for (const auto& pt : cut.roc) {
                ordered_json p;
                p["fpr"] = pt.fpr;
                p["tpr"] = pt.tpr;
                if (std::isfinite(pt.threshold)) p["threshold"] = pt.threshold;
                roc.push_back(std::move(p));
            }
            j["roc"] = std::move(roc);
            state.save("trustcut.json", j.dump(2) + "\n");
        }
        return binarize_outlets(corpus.news, cut);
    }
    if (o.trust_cut >= 0.0) {
        TrustCut cut;
        cut.threshold = o.trust_cut;
        return binarize_outlets(corpus.news, cut);
    }
    state.note("no factuality labels or trust cut given; outlets stay unclassified");
    return {};
}

void run_align(RunState& state, const Corpus& corpus, const SpreaderSelection& sel) {
    const Opts& o = state.o;
    if (corpus.news.empty()) throw Error("corpus has no news mentions");
    DoiVectorSet vectors = build_doi_vectors(corpus, sel.selected);
    if (vectors.excluded_entities > 0)
        state.note("align: " + std::to_string(vectors.excluded_entities) +
                   " entities mention no DOI and were excluded");
    auto trust = outlet_trust_scores(corpus.news);

    std::vector<int> ks = o.knn;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    std::string rows = "superspreader,k,rank,outlet,similarity,trust\n";
    std::map<int, std::map<std::string, NeighborProfile>> by_k;
    for (int k : ks) {
        for (const auto& id : sel.selected) {
            NeighborProfile profile = knn_outlets(vectors, trust, id, k);
            int rank = 1;
            for (const auto& nb : profile.neighbors) {
                rows += csv_escape(id) + "," + std::to_string(k) + "," +
                        std::to_string(rank++) + "," + csv_escape(nb.outlet_domain) +
                        "," + fmt(nb.similarity) + "," +
                        (nb.trust_score ? fmt(*nb.trust_score) : "") + "\n";
            }
            by_k[k].emplace(id, std::move(profile));
        }
    }
    state.save("neighbors.csv", rows);

    std::vector<std::string> contrarian, conformist;
    for (const auto& id : sel.selected) {
        Stance s = corpus.stance_of(id);
        if (s == Stance::contrarian) contrarian.push_back(id);
        if (s == Stance::conformist) conformist.push_back(id);
    }
    TestUnit unit = o.unit == "neighbor" ? TestUnit::neighbor : TestUnit::superspreader;
    std::string tests = "k,metric,unit,t_statistic,p_value,dof,n_a,n_b\n";
    for (int k : ks) {
        std::vector<NeighborProfile> group_a, group_b;  // contrarian vs conformist
        for (const auto& id : contrarian) group_a.push_back(by_k[k].at(id));
        for (const auto& id : conformist) group_b.push_back(by_k[k].at(id));
        try {
            GroupNeighborTests g = group_neighbor_tests(group_a, group_b, unit);
            for (const auto& [name, result] :
                 {std::pair<const char*, const TestResult*>{"trust", &g.trust},
                  {"similarity", &g.similarity}}) {
                tests += std::to_string(k) + "," + name + "," + o.unit + "," +
                         fmt(result->statistic) + "," + fmt(result->p_value) + "," +
                         (result->dof ? fmt(*result->dof) : "") + "," +
                         std::to_string(result->n_a) + "," + std::to_string(result->n_b) +
                         "\n";
            }
        } catch (const Error& e) {
            state.note("align: k=" + std::to_string(k) + " group tests skipped: " +
                       e.what());
        }
    }
    state.save("aligntests.csv", tests);

    if (!o.factuality.empty()) resolve_outlet_classes(state, corpus, true);
}

void run_pathways(RunState& state, const Corpus& corpus, const SpreaderSelection& sel) {
    const Opts& o = state.o;
    if (corpus.news.empty() && corpus.posts.empty()) throw Error("empty corpus");
    std::set<std::string> psp, asp;
    for (const auto& id : sel.selected) {
        Stance s = corpus.stance_of(id);
        if (s == Stance::conformist) psp.insert(id);
        if (s == Stance::contrarian) asp.insert(id);
    }
    auto classes = resolve_outlet_classes(state, corpus, false);

    PathwayOptions popts;
    popts.grid_points = o.grid;
    if (o.bandwidth > 0) popts.bandwidth_hours = o.bandwidth;
    popts.min_mass = o.min_mass;
    popts.min_media_mentions = o.min_media_mentions;
    popts.min_social_mentions = o.min_social_mentions;
    popts.min_class_mentions = o.min_class_mentions;
    popts.peak_mode =
        o.peaks == "global" ? PeakMode::global_bandwidth : PeakMode::class_conditional;
    popts.threads = o.threads;

    std::string region_rows = "doi,region_start,region_end,mass,lookback\n";
    std::optional<PathwayResult> primary;
    for (double lb : o.lookback) {
        popts.lookback_seconds = std::llround(lb * 3600.0);
        PathwayResult result = analyze_pathways(corpus, psp, asp, classes, popts);
        for (const auto& region : result.regions)
            region_rows += csv_escape(region.doi) + "," + fmt(region.start_hours) + "," +
                           fmt(region.end_hours) + "," + fmt(region.mass) + "," +
                           fmt(lb) + "\n";
        if (!primary) primary = std::move(result);
    }
    state.save("regions.csv", region_rows);

    std::string peak_rows = "doi,class,peak_time,mentions\n";
    for (const auto& cp : primary->peaks) {
        for (int c = 0; c < kPathwayClassCount; ++c) {
            if (!cp.peak_hours[static_cast<std::size_t>(c)]) continue;
            peak_rows += csv_escape(cp.doi) + "," +
                         to_string(static_cast<PathwayClass>(c)) + "," +
                         fmt(*cp.peak_hours[static_cast<std::size_t>(c)]) + "," +
                         std::to_string(cp.mentions_in_region[static_cast<std::size_t>(c)]) +
                         "\n";
        }
    }
    state.save("peaks.csv", peak_rows);

    ordered_json j;
    auto class_name = [](int c) { return to_string(static_cast<PathwayClass>(c)); };
    ordered_json raw, normalized, medians;
    for (int a = 0; a < kPathwayClassCount; ++a) {
        ordered_json raw_row, norm_row, med_row;
        for (int bdx = 0; bdx < kPathwayClassCount; ++bdx) {
            raw_row[class_name(bdx)] =
                primary->graph.raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(bdx)];
            norm_row[class_name(bdx)] =
                primary->graph.normalized[static_cast<std::size_t>(a)][static_cast<std::size_t>(bdx)];
            if (primary->graph.has_median[static_cast<std::size_t>(a)][static_cast<std::size_t>(bdx)])
                med_row[class_name(bdx)] =
                    primary->graph.median_dt_hours[static_cast<std::size_t>(a)][static_cast<std::size_t>(bdx)];
            else
                med_row[class_name(bdx)] = nullptr;
        }
        raw[class_name(a)] = std::move(raw_row);
        normalized[class_name(a)] = std::move(norm_row);
        medians[class_name(a)] = std::move(med_row);
    }
    j["raw_wins"] = std::move(raw);
    j["normalized_pct"] = std::move(normalized);
    j["median_dt_hours"] = std::move(medians);
    ordered_json rates;
    for (int c = 0; c < kPathwayClassCount; ++c)
        rates[class_name(c)] = primary->base_rates[static_cast<std::size_t>(c)];
    j["base_rates"] = std::move(rates);
    j["expected_model"] =
        "pairwise wins split proportional to class mention totals over eligible DOIs";
    ordered_json tests = ordered_json::array();
    for (const auto& pair : primary->tests) {
        ordered_json t;
        t["a"] = to_string(pair.a);
        t["b"] = to_string(pair.b);
        t["wins_a"] = pair.wins_a;
        t["wins_b"] = pair.wins_b;
        t["chi_square"] = pair.chi2.statistic;
        t["p_value"] = pair.chi2.p_value;
        t["phi"] = pair.chi2.effect_phi ? *pair.chi2.effect_phi : 0.0;
        tests.push_back(std::move(t));
    }
    j["tests"] = std::move(tests);
    j["dois_without_peaks"] = primary->dois_without_peaks;
    j["lookback_hours"] = o.lookback.front();
    state.save("precedence.json", j.dump(2) + "\n");
    state.save("precedence.dot", precedence_dot(primary->graph));
}

void run_syndication(RunState& state, const Corpus& corpus) {
    const Opts& o = state.o;
    if (corpus.news.empty()) throw Error("corpus has no news mentions");
    std::size_t removed = 0;
    auto survivors = dedup_syndication(corpus.news, &removed);
    write_news(state.out_dir + "/news_dedup.jsonl", survivors);
    state.record_output("news_dedup.jsonl");

    WeightedGraph graph =
        build_syndication_graph(corpus.news, std::llround(o.synd_window_min * 60.0));
    state.save("syndication.dot", graph.to_dot({}, "syndication"));
    state.save("syndication.graphml", graph.to_graphml({}, {}));

    std::string rows = "day,outlet_count,total_visits,mean_trust\n";
    for (const auto& day : rolling_media_series(survivors, 7)) {
        rows += format_day(utc_day(day.day)) + "," + fmt(day.outlet_count) + "," +
                fmt(day.total_visits) + "," +
                (day.trust_defined ? fmt(day.mean_trust) : "") + "\n";
    }
    state.save("media_daily.csv", rows);

    ordered_json j;
    j["input_articles"] = corpus.news.size();
    j["duplicates_removed"] = removed;
    j["surviving_articles"] = survivors.size();
    j["outlets"] = graph.node_count();
    j["syndication_edges"] = graph.edge_count();
    state.save("syndication.json", j.dump(2) + "\n");
}

void run_simulate(RunState& state) {
    const Opts& o = state.o;
    if (o.scenario.empty()) throw ConfigError("simulate requires --scenario");
    state.track_input(o.scenario);
    Scenario sc = scenario_from_json(read_file(o.scenario));
    emit_scenario(sc, state.out_dir);
    for (const char* name : {"posts.jsonl", "news.jsonl", "users.jsonl",
                             "groundtruth.json", "factuality.csv"})
        state.record_output(name);
}

void run_all(RunState& state, const Corpus& corpus, const LoadReport& report) {
    if (corpus.posts.empty() && corpus.news.empty()) throw Error("empty corpus");
    run_ingest(state, report);

    const CoordinationResult* coord_ptr = nullptr;
    const SpreaderSelection* sel_ptr = nullptr;
    CoordinationResult coord_res;
    SpreaderSelection sel;
    if (!corpus.posts.empty()) {
        try {
            coord_res = run_coord(state, corpus);
            coord_ptr = &coord_res;
        } catch (const Error& e) {
            state.note(std::string("coord skipped: ") + e.what());
        }
        try {
            sel = run_spreaders(state, corpus);
            sel_ptr = &sel;
        } catch (const Error& e) {
            state.note(std::string("spreaders skipped: ") + e.what());
        }
        run_profile(state, corpus, coord_ptr, sel_ptr);
    } else {
        state.note("no posts; social-side stages skipped");
    }
    if (!corpus.news.empty()) {
        if (sel_ptr) {
            try {
                run_align(state, corpus, *sel_ptr);
            } catch (const Error& e) {
                state.note(std::string("align skipped: ") + e.what());
            }
            try {
                run_pathways(state, corpus, *sel_ptr);
            } catch (const Error& e) {
                state.note(std::string("pathways skipped: ") + e.what());
            }
        } else {
            state.note("no superspreaders; align and pathways skipped");
        }
        try {
            run_syndication(state, corpus);
        } catch (const Error& e) {
            state.note(std::string("syndication skipped: ") + e.what());
        }
    } else {
        state.note("no news; media-side stages skipped");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detects coordinated amplification, superspreaders and cross-medium "
                 "precedence pathways in DOI-mention corpora"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Opts o;

    auto add_common = [&](CLI::App* s) {
        s->set_config("--config", "", "flat key=value config file (flags override)");
        s->add_option("--out", o.out, "output directory")->capture_default_str();
        s->add_option("--threads", o.threads, "worker threads")->capture_default_str();
        s->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    };
    auto add_corpus = [&](CLI::App* s) {
        s->add_option("--posts", o.posts, "posts JSONL path");
        s->add_option("--news", o.news, "news JSONL path");
        s->add_option("--users", o.users, "users JSONL path");
        s->add_option("--exclude-aggregators", o.exclude_aggregators,
                      "file listing aggregator outlet domains to drop");
    };
    auto add_coact = [&](CLI::App* s) {
        s->add_option("--window-min", o.window_min, "co-retweet window in minutes")
            ->capture_default_str();
        s->add_option("--min-user-rt", o.min_user_rt, "minimum retweets per user")
            ->capture_default_str();
        s->add_option("--min-post-rt", o.min_post_rt, "minimum retweets per post")
            ->capture_default_str();
        s->add_flag("--include-self-retweets", o.include_self_retweets,
                    "count retweets of one's own posts");
        s->add_option("--centrality-pct", o.centrality_pct,
                      "coordinated percentile of eigenvector centrality")
            ->capture_default_str();
        s->add_option("--centrality-base", o.centrality_base,
                      "percentile base: graph | positive")
            ->capture_default_str();
        s->add_option("--refine-above", o.refine_above,
                      "split components larger than this by modularity")
            ->capture_default_str();
    };
    auto add_spread = [&](CLI::App* s) {
        s->add_option("--spreader-pct", o.spreader_pct, "superspreader h-index percentile")
            ->capture_default_str();
        s->add_option("--boot-iters", o.boot_iters, "bootstrap iterations")
            ->capture_default_str();
    };
    auto add_profile = [&](CLI::App* s) {
        s->add_option("--stoplist", o.stoplist, "stoplist file for term frequencies");
        s->add_option("--gini-base", o.gini_base,
                      "events feeding topic distributions: retweets | originals | all")
            ->capture_default_str();
        s->add_option("--top-terms", o.top_terms, "terms kept per group")
            ->capture_default_str();
    };
    auto add_align = [&](CLI::App* s) {
        s->add_option("--knn", o.knn, "neighbor counts, comma separated")
            ->delimiter(',')
            ->capture_default_str();
        s->add_option("--factuality", o.factuality,
                      "factuality CSV (domain,label) for the trust cut");
        s->add_option("--trust-cut", o.trust_cut,
                      "explicit LC/HC trust threshold when no factuality file");
        s->add_option("--unit", o.unit, "test unit: superspreader | neighbor")
            ->capture_default_str();
    };
    auto add_path = [&](CLI::App* s) {
        s->add_option("--grid", o.grid, "KDE grid points")->capture_default_str();
        s->add_option("--bandwidth", o.bandwidth, "KDE bandwidth in hours (0 = Silverman)")
            ->capture_default_str();
        s->add_option("--min-mass", o.min_mass, "density-region mass")
            ->capture_default_str();
        s->add_option("--lookback", o.lookback, "lookback hours, comma separated")
            ->delimiter(',')
            ->capture_default_str();
        s->add_option("--min-media-mentions", o.min_media_mentions,
                      "per-DOI media mention floor")
            ->capture_default_str();
        s->add_option("--min-social-mentions", o.min_social_mentions,
                      "per-DOI social mention floor")
            ->capture_default_str();
        s->add_option("--min-class-mentions", o.min_class_mentions,
                      "per-class mention floor inside a region")
            ->capture_default_str();
        s->add_option("--peaks", o.peaks, "peak estimation: class | global")
            ->capture_default_str();
    };

    CLI::App* c_ingest = app.add_subcommand("ingest", "load, validate and report");
    add_common(c_ingest);
    add_corpus(c_ingest);

    CLI::App* c_coord = app.add_subcommand("coord", "co-retweet coordination network");
    add_common(c_coord);
    add_corpus(c_coord);
    add_coact(c_coord);

    CLI::App* c_spread = app.add_subcommand("spreaders", "h-index superspreaders");
    add_common(c_spread);
    add_corpus(c_spread);
    add_spread(c_spread);

    CLI::App* c_profile = app.add_subcommand("profile", "topic, term, emotion profiles");
    add_common(c_profile);
    add_corpus(c_profile);
    add_coact(c_profile);
    add_spread(c_profile);
    add_profile(c_profile);

    CLI::App* c_align = app.add_subcommand("align", "outlet-superspreader alignment");
    add_common(c_align);
    add_corpus(c_align);
    add_spread(c_align);
    add_align(c_align);

    CLI::App* c_path = app.add_subcommand("pathways", "cross-medium precedence pathways");
    add_common(c_path);
    add_corpus(c_path);
    add_spread(c_path);
    add_align(c_path);
    add_path(c_path);

    CLI::App* c_synd = app.add_subcommand("syndication", "duplicate-title analysis");
    add_common(c_synd);
    add_corpus(c_synd);
    c_synd->add_option("--synd-window-min", o.synd_window_min,
                       "same-title window in minutes")
        ->capture_default_str();

    CLI::App* c_sim = app.add_subcommand("simulate", "generate a synthetic corpus");
    add_common(c_sim);
    c_sim->add_option("--scenario", o.scenario, "scenario JSON path")->required();

    CLI::App* c_all = app.add_subcommand("all", "run the full pipeline");
    add_common(c_all);
    add_corpus(c_all);
    add_coact(c_all);
    add_spread(c_all);
    add_profile(c_all);
    add_align(c_all);
    add_path(c_all);
    c_all->add_option("--synd-window-min", o.synd_window_min,
                      "same-title window in minutes")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        validate(o);
        RunState state(o);
        std::filesystem::create_directories(state.out_dir);

        if (sub == "simulate") {
            run_simulate(state);
            write_manifest(state, sub);
            return 0;
        }

        LoadOptions lopts;
        if (!o.exclude_aggregators.empty()) {
            state.track_input(o.exclude_aggregators);
            lopts.excluded_outlets = read_word_list(o.exclude_aggregators);
        }
        if (!o.stoplist.empty()) state.track_input(o.stoplist);
        if (!o.factuality.empty()) state.track_input(o.factuality);
        state.track_input(o.posts);
        state.track_input(o.news);
        state.track_input(o.users);
        LoadReport report;
        Corpus corpus = load_corpus(o.posts, o.news, o.users, &report, lopts);

        if (sub == "ingest") {
            run_ingest(state, report);
        } else if (sub == "coord") {
            run_coord(state, corpus);
        } else if (sub == "spreaders") {
            run_spreaders(state, corpus);
        } else if (sub == "profile") {
            run_profile(state, corpus, nullptr, nullptr);
        } else if (sub == "align") {
            SpreaderSelection sel = select_superspreaders(corpus, o.spreader_pct);
            run_align(state, corpus, sel);
        } else if (sub == "pathways") {
            SpreaderSelection sel = select_superspreaders(corpus, o.spreader_pct);
            run_pathways(state, corpus, sel);
        } else if (sub == "syndication") {
            run_syndication(state, corpus);
        } else if (sub == "all") {
            run_all(state, corpus, report);
        }
        write_manifest(state, sub);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "sciflow " << sub << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "sciflow " << sub << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "sciflow " << sub << ": " << e.what() << "\n";
        return 1;
    }
}
