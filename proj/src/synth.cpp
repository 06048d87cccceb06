#include "sciflow/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "sciflow/error.hpp"
#include "sciflow/ingest.hpp"

namespace sciflow {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

// Draws are built from raw mt19937_64 output only, so identical seeds give
// identical corpora on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::int64_t uniform_int(std::int64_t n) {  // [0, n)
        return static_cast<std::int64_t>(
            (static_cast<unsigned __int128>(eng_()) *
             static_cast<unsigned __int128>(n)) >>
            64);
    }

    double normal() {
        double u1 = uniform();
        if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    std::int64_t poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        if (lambda > 256.0) {
            double v = lambda + std::sqrt(lambda) * normal();
            return v < 0.0 ? 0 : std::llround(v);
        }
        double limit = std::exp(-lambda);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    std::vector<std::int64_t> distinct(std::int64_t n, std::int64_t k) {
        std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(k));
        for (std::int64_t i = 0; i < k; ++i) {
            std::int64_t j = i + uniform_int(n - i);
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out.push_back(pool[static_cast<std::size_t>(i)]);
        }
        return out;
    }

private:
    std::mt19937_64 eng_;
};

const std::vector<std::string> kTermVocab = {
    "vaccine", "variant", "mask",     "trial",  "antibody",
    "dose",    "booster", "immunity", "mandate", "lockdown"};
const std::vector<std::string> kHashtagVocab = {"#science", "#covid19", "#research",
                                                "#data", "#health"};

std::string idstr(const char* fmt, int a) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, a);
    return buf;
}

std::string idstr2(const char* fmt, int a, int b) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

struct Builder {
    const Scenario& sc;
    Rng rng;
    Corpus corpus;
    GroundTruth truth;
    int post_seq = 0;
    int article_seq = 0;
    double duration_s;

    explicit Builder(const Scenario& s)
        : sc(s), rng(s.seed), duration_s(s.duration_hours * 3600.0) {}

    Timestamp at_seconds(double offset) {
        double clamped = std::min(std::max(offset, 0.0), duration_s);
        return sc.start + static_cast<Timestamp>(clamped);
    }
    Timestamp at_hours(double offset_hours) { return at_seconds(offset_hours * 3600.0); }

    UserRecord make_user(const std::string& id, Stance stance) {
        UserRecord u;
        u.user_id = id;
        u.stance = stance;
        u.followers = static_cast<std::int64_t>(
            std::exp(rng.uniform(std::log(50.0), std::log(5000.0))));
        u.following = static_cast<std::int64_t>(
            std::exp(rng.uniform(std::log(50.0), std::log(2000.0))));
        u.created_at = sc.start - static_cast<Timestamp>(
                                      rng.uniform(30.0, 3000.0) * kSecondsPerDay);
        u.verified = rng.uniform() < 0.05;
        u.bot_score = rng.uniform(0.05, 0.95);
        corpus.users.emplace(id, u);
        return u;
    }

    std::string next_post_id() { return idstr("p%06d", post_seq++); }
    std::string next_article_id() { return idstr("n%06d", article_seq++); }

    PostEvent& add_original(const std::string& author, Timestamp t,
                            const std::string& doi, const std::string& topic) {
        PostEvent p;
        p.post_id = next_post_id();
        p.author_id = author;
        p.timestamp = t;
        p.kind = PostKind::original;
        if (!doi.empty()) p.dois = {doi};
        p.topic_label = topic;
        p.terms.push_back("covid");
        for (int k = 0; k < 3; ++k)
            p.terms.push_back(
                kTermVocab[static_cast<std::size_t>(rng.uniform_int(
                    static_cast<std::int64_t>(kTermVocab.size())))]);
        p.hashtags.push_back(
            kHashtagVocab[static_cast<std::size_t>(rng.uniform_int(
                static_cast<std::int64_t>(kHashtagVocab.size())))]);
        corpus.posts.push_back(std::move(p));
        return corpus.posts.back();
    }

    void add_retweet(const std::string& author, Timestamp t, const PostEvent& target) {
        PostEvent p;
        p.post_id = next_post_id();
        p.author_id = author;
        p.timestamp = t;
        p.kind = PostKind::retweet;
        p.retweeted_post_id = target.post_id;
        p.retweeted_author_id = target.author_id;
        p.dois = target.dois;
        p.topic_label = target.topic_label;
        corpus.posts.push_back(std::move(p));
    }
};

// exact quota assignment by largest remainder, stable over label name order
void assign_emotions(std::vector<PostEvent*>& posts,
                     const std::map<std::string, double>& mix) {
    if (posts.empty()) return;
    if (mix.empty()) {
        for (PostEvent* p : posts) p->emotion_label = Emotion::neutral;
        return;
    }
    double total = 0.0;
    for (const auto& [name, share] : mix) {
        if (share < 0.0) throw Error("emotion share must be >= 0");
        total += share;
    }
    if (total <= 0.0) throw Error("emotion shares sum to zero");

    std::size_t n = posts.size();
    std::vector<std::pair<std::string, double>> exact;
    for (const auto& [name, share] : mix)
        exact.emplace_back(name, share / total * static_cast<double>(n));
    std::vector<std::size_t> quota(exact.size());
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        quota[i] = static_cast<std::size_t>(exact[i].second);
        assigned += quota[i];
    }
    // hand out the remainder to the largest fractional parts
    std::vector<std::size_t> order(exact.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double fa = exact[a].second - std::floor(exact[a].second);
        double fb = exact[b].second - std::floor(exact[b].second);
        return fa > fb;
    });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++quota[order[i % order.size()]];

    std::size_t pos = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        Emotion e = parse_emotion(exact[i].first);
        for (std::size_t k = 0; k < quota[i] && pos < n; ++k, ++pos)
            posts[pos]->emotion_label = e;
    }
}

} // namespace

Scenario scenario_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(std::string("scenario JSON malformed: ") + e.what());
    }
    Scenario sc;
    try {
        sc.seed = j.value("seed", sc.seed);
        if (j.contains("start")) sc.start = parse_rfc3339(j.at("start").get<std::string>());
        sc.duration_hours = j.value("duration_hours", sc.duration_hours);
        sc.background_users = j.value("background_users", sc.background_users);
        sc.background_rate_per_hour =
            j.value("background_rate_per_hour", sc.background_rate_per_hour);
        sc.background_post_rate_per_hour =
            j.value("background_post_rate_per_hour", sc.background_post_rate_per_hour);
        sc.contrarian_share = j.value("contrarian_share", sc.contrarian_share);
        sc.seed_posts = j.value("seed_posts", sc.seed_posts);
        sc.seed_authors = j.value("seed_authors", sc.seed_authors);
        sc.topic_count = j.value("topic_count", sc.topic_count);
        sc.lc_outlets = j.value("lc_outlets", sc.lc_outlets);
        sc.hc_outlets = j.value("hc_outlets", sc.hc_outlets);
        sc.syndicated_clones = j.value("syndicated_clones", sc.syndicated_clones);
        for (const auto& r : j.value("rings", json::array())) {
            RingSpec spec;
            spec.size = r.value("size", spec.size);
            spec.shared_posts = r.value("shared_posts", spec.shared_posts);
            spec.jitter_minutes = r.value("jitter_minutes", spec.jitter_minutes);
            if (r.contains("stance")) spec.stance = parse_stance(r.at("stance"));
            spec.background_activity =
                r.value("background_activity", spec.background_activity);
            sc.rings.push_back(spec);
        }
        for (const auto& s : j.value("spreaders", json::array())) {
            SpreaderSpec spec;
            spec.count = s.value("count", spec.count);
            spec.h = s.value("h", spec.h);
            if (s.contains("stance")) spec.stance = parse_stance(s.at("stance"));
            sc.spreaders.push_back(spec);
        }
        if (j.contains("pathways")) {
            const auto& p = j.at("pathways");
            sc.pathways.dois = p.value("dois", sc.pathways.dois);
            sc.pathways.sp_mentions = p.value("sp_mentions", sc.pathways.sp_mentions);
            sc.pathways.news_per_class =
                p.value("news_per_class", sc.pathways.news_per_class);
            sc.pathways.scatter_mentions =
                p.value("scatter_mentions", sc.pathways.scatter_mentions);
            sc.pathways.lag_hours = p.value("lag_hours", sc.pathways.lag_hours);
            sc.pathways.sigma_hours = p.value("sigma_hours", sc.pathways.sigma_hours);
            sc.pathways.scatter_before_hours =
                p.value("scatter_before_hours", sc.pathways.scatter_before_hours);
            sc.pathways.scatter_span_hours =
                p.value("scatter_span_hours", sc.pathways.scatter_span_hours);
        }
        const json bg_mix = j.value("background_emotions", json::object());
        for (const auto& [name, share] : bg_mix.items())
            sc.background_emotions[name] = share.get<double>();
        const json sp_mix = j.value("spreader_emotions", json::object());
        for (const auto& [name, share] : sp_mix.items())
            sc.spreader_emotions[name] = share.get<double>();
    } catch (const json::exception& e) {
        throw Error(std::string("scenario JSON invalid: ") + e.what());
    }
    return sc;
}

std::string GroundTruth::to_json() const {
    ordered_json j;
    j["rings"] = json::array();
    for (const auto& ring : rings) j["rings"].push_back(ring);
    j["ring_members"] = ring_members;
    j["spreader_h"] = spreader_h;
    j["psp"] = psp;
    j["asp"] = asp;
    j["doi_lag_hours"] = doi_lag_hours;
    j["doi_anchor_hours"] = doi_anchor_hours;
    j["outlet_labels"] = outlet_labels;
    return j.dump(2) + "\n";
}

std::pair<Corpus, GroundTruth> generate(const Scenario& sc) {
    if (sc.background_users < 0 || sc.seed_posts < 0 || sc.seed_authors <= 0)
        throw Error("scenario counts must be nonnegative (seed_authors positive)");
    if (sc.duration_hours <= 1.0) throw Error("scenario duration too short");
    if (sc.topic_count < 1) throw Error("scenario needs at least one topic");
    for (const auto& spec : sc.spreaders) {
        if (spec.h < 1) throw Error("spreader target h must be >= 1");
        if (spec.h > sc.background_users)
            throw Error("spreader target h exceeds the available retweeter pool");
    }
    if (!sc.spreaders.empty() && sc.duration_hours < 62.0)
        throw Error("scenario duration too short for planted spreaders");
    if (sc.pathways.dois > 0) {
        if (sc.pathways.sp_mentions > 0 && sc.spreaders.empty())
            throw Error("pathway spreader mentions need at least one spreader spec");
        if (sc.pathways.scatter_mentions > 0 && sc.background_users == 0)
            throw Error("pathway scatter mentions need background users");
        if (sc.pathways.news_per_class > 0 && sc.lc_outlets + sc.hc_outlets == 0)
            throw Error("pathway news needs at least one outlet");
        if (sc.duration_hours < sc.pathways.scatter_span_hours + 2.0)
            throw Error("scenario duration too short for the pathway scatter span");
    }

    Builder b(sc);
    const double dur_h = sc.duration_hours;

    // users
    std::vector<std::string> background;
    std::int64_t contrarians = std::llround(sc.contrarian_share *
                                            static_cast<double>(sc.background_users));
    for (int i = 0; i < sc.background_users; ++i) {
        std::string id = idstr("u%04d", i);
        b.make_user(id, i < contrarians ? Stance::contrarian : Stance::conformist);
        background.push_back(id);
    }
    std::vector<std::string> authors;
    for (int i = 0; i < sc.seed_authors; ++i) {
        std::string id = idstr("a%02d", i);
        b.make_user(id, Stance::unlabeled);
        authors.push_back(id);
    }
    for (std::size_t r = 0; r < sc.rings.size(); ++r) {
        std::set<std::string> members;
        for (int i = 0; i < sc.rings[r].size; ++i) {
            std::string id = idstr2("r%02zu_%02d", static_cast<int>(r), i);
            b.make_user(id, sc.rings[r].stance);
            members.insert(id);
            b.truth.ring_members.insert(id);
        }
        b.truth.rings.push_back(std::move(members));
    }
    std::vector<std::string> spreader_ids;
    for (std::size_t s = 0; s < sc.spreaders.size(); ++s) {
        for (int i = 0; i < sc.spreaders[s].count; ++i) {
            std::string id = idstr2("s%02zu_%02d", static_cast<int>(s), i);
            b.make_user(id, sc.spreaders[s].stance);
            spreader_ids.push_back(id);
            b.truth.spreader_h[id] = sc.spreaders[s].h;
            if (sc.spreaders[s].stance == Stance::contrarian)
                b.truth.asp.insert(id);
            else if (sc.spreaders[s].stance == Stance::conformist)
                b.truth.psp.insert(id);
        }
    }

    // outlets
    struct Outlet {
        std::string domain;
        double trust;
        std::int64_t visits;
    };
    std::vector<Outlet> lc, hc;
    for (int i = 0; i < sc.lc_outlets; ++i) {
        Outlet o;
        o.domain = idstr("lc%02d.news.example", i);
        o.trust = b.rng.uniform(0.05, 0.40);
        o.visits = 1000 + b.rng.uniform_int(99000);
        b.truth.outlet_labels[o.domain] = i % 2 == 0 ? "low" : "mixed";
        lc.push_back(std::move(o));
    }
    for (int i = 0; i < sc.hc_outlets; ++i) {
        Outlet o;
        o.domain = idstr("hc%02d.press.example", i);
        o.trust = b.rng.uniform(0.60, 0.95);
        o.visits = 1000 + b.rng.uniform_int(99000);
        b.truth.outlet_labels[o.domain] = "high";
        hc.push_back(std::move(o));
    }

    // retweet-target pool, early in the timeline so retweets follow their target
    std::vector<std::size_t> seed_pool;
    for (int i = 0; i < sc.seed_posts; ++i) {
        Timestamp t = b.at_hours(b.rng.uniform(0.0, 12.0));
        b.add_original(authors[static_cast<std::size_t>(i) % authors.size()], t,
                       idstr("10.5555/seed%03d", i % 40),
                       idstr("t%02d", i % sc.topic_count));
        seed_pool.push_back(b.corpus.posts.size() - 1);
    }

    // background retweet activity (and optional ring member background)
    auto emit_background_retweets = [&](const std::string& user) {
        std::int64_t n = b.rng.poisson(sc.background_rate_per_hour * dur_h);
        for (std::int64_t k = 0; k < n; ++k) {
            Timestamp t = b.at_hours(b.rng.uniform(12.0, dur_h));
            const PostEvent target =
                b.corpus.posts[seed_pool[static_cast<std::size_t>(b.rng.uniform_int(
                    static_cast<std::int64_t>(seed_pool.size())))]];
            b.add_retweet(user, t, target);
        }
    };
    if (!seed_pool.empty()) {
        for (const auto& user : background) emit_background_retweets(user);
        for (std::size_t r = 0; r < sc.rings.size(); ++r) {
            if (!sc.rings[r].background_activity) continue;
            for (const auto& user : b.truth.rings[r]) emit_background_retweets(user);
        }
    }

    // background originals
    if (sc.background_post_rate_per_hour > 0.0) {
        for (const auto& user : background) {
            std::int64_t n = b.rng.poisson(sc.background_post_rate_per_hour * dur_h);
            for (std::int64_t k = 0; k < n; ++k) {
                Timestamp t = b.at_hours(b.rng.uniform(12.0, dur_h));
                int tag = static_cast<int>(b.rng.uniform_int(40));
                b.add_original(user, t, idstr("10.5555/seed%03d", tag),
                               idstr("t%02d", tag % sc.topic_count));
            }
        }
    }

    // coordination rings: lockstep retweets of dedicated posts
    for (std::size_t r = 0; r < sc.rings.size(); ++r) {
        const RingSpec& spec = sc.rings[r];
        for (int sp = 0; sp < spec.shared_posts; ++sp) {
            double anchor = b.rng.uniform(12.0, dur_h - 1.0);
            PostEvent target = b.add_original(
                authors[static_cast<std::size_t>(sp) % authors.size()],
                b.at_hours(anchor - 0.5), idstr("10.5555/ring%02d", static_cast<int>(r)),
                "t00");
            for (const auto& member : b.truth.rings[r]) {
                double jitter_s = b.rng.uniform(0.0, spec.jitter_minutes * 60.0);
                b.add_retweet(member, b.at_seconds(anchor * 3600.0 + jitter_s), target);
            }
        }
    }

    // planted spreaders: exactly h posts with exactly h retweets each
    {
        std::size_t sid = 0;
        for (const auto& spec : sc.spreaders) {
            for (int i = 0; i < spec.count; ++i, ++sid) {
                const std::string& user = spreader_ids[sid];
                for (std::int64_t post = 0; post < spec.h; ++post) {
                    double t0 = b.rng.uniform(12.0, dur_h - 49.0);
                    PostEvent target = b.add_original(
                        user, b.at_hours(t0),
                        idstr("10.5555/spreader%02d", static_cast<int>(sid)),
                        idstr("t%02d", static_cast<int>(sid) % sc.topic_count));
                    auto who = b.rng.distinct(sc.background_users, spec.h);
                    for (std::int64_t w : who) {
                        double dt = b.rng.uniform(0.1, 48.0);
                        b.add_retweet(background[static_cast<std::size_t>(w)],
                                      b.at_hours(t0 + dt), target);
                    }
                }
            }
        }
    }

    // pathway DOIs: spreader bump, lagged news bumps, diffuse scatter
    const PathwaySpec& pw = sc.pathways;
    for (int d = 0; d < pw.dois; ++d) {
        std::string doi = idstr("10.5555/path%03d", d);
        double lead = pw.scatter_before_hours;
        double tail = pw.scatter_span_hours - pw.scatter_before_hours;
        double anchor = b.rng.uniform(lead + 1.0, dur_h - tail - 1.0);
        b.truth.doi_anchor_hours[doi] =
            static_cast<double>(sc.start) / 3600.0 + anchor;
        b.truth.doi_lag_hours[doi] = pw.lag_hours;

        for (int m = 0; m < pw.sp_mentions; ++m) {
            const std::string& user =
                spreader_ids[static_cast<std::size_t>(m) % spreader_ids.size()];
            double t = anchor + b.rng.normal() * pw.sigma_hours;
            b.add_original(user, b.at_hours(t), doi,
                           idstr("t%02d", d % sc.topic_count));
        }
        for (int m = 0; m < pw.scatter_mentions; ++m) {
            const std::string& user = background[static_cast<std::size_t>(
                b.rng.uniform_int(static_cast<std::int64_t>(background.size())))];
            double t = anchor + b.rng.uniform(-lead, tail);
            b.add_original(user, b.at_hours(t), doi,
                           idstr("t%02d", d % sc.topic_count));
        }
        auto emit_news = [&](const std::vector<Outlet>& outlets) {
            if (outlets.empty()) return;
            for (int m = 0; m < pw.news_per_class; ++m) {
                const Outlet& o = outlets[static_cast<std::size_t>(m) % outlets.size()];
                double t = anchor + pw.lag_hours + b.rng.normal() * pw.sigma_hours;
                NewsMention n;
                n.article_id = b.next_article_id();
                n.outlet_domain = o.domain;
                n.timestamp = b.at_hours(t);
                n.title = "Coverage of " + doi + " item " + std::to_string(m);
                n.dois = {doi};
                n.trust_score = o.trust;
                n.daily_visits = o.visits;
                b.corpus.news.push_back(std::move(n));
            }
        };
        emit_news(lc);
        emit_news(hc);
    }

    // syndicated duplicates: same title republished by a sibling outlet
    std::vector<Outlet> all_outlets = lc;
    all_outlets.insert(all_outlets.end(), hc.begin(), hc.end());
    int clones = std::min<int>(sc.syndicated_clones,
                               static_cast<int>(b.corpus.news.size()));
    for (int c = 0; c < clones; ++c) {
        if (all_outlets.size() < 2) break;
        const NewsMention src = b.corpus.news[static_cast<std::size_t>(c)];
        const Outlet* other = nullptr;
        for (const auto& o : all_outlets)
            if (o.domain != src.outlet_domain) {
                other = &o;
                break;
            }
        NewsMention n;
        n.article_id = b.next_article_id();
        n.outlet_domain = other->domain;
        n.timestamp = src.timestamp + static_cast<Timestamp>(b.rng.uniform(300.0, 2700.0));
        n.title = src.title;
        n.dois = src.dois;
        n.trust_score = other->trust;
        n.daily_visits = other->visits;
        b.corpus.news.push_back(std::move(n));
    }

    // emotion labels on original posts, exact quotas per segment
    std::vector<PostEvent*> background_segment;
    std::vector<PostEvent*> spreader_segment;
    {
        std::set<std::string> spreader_set(spreader_ids.begin(), spreader_ids.end());
        for (auto& p : b.corpus.posts) {
            if (p.is_retweet()) continue;
            if (spreader_set.count(p.author_id))
                spreader_segment.push_back(&p);
            else
                background_segment.push_back(&p);
        }
    }
    assign_emotions(background_segment, sc.background_emotions);
    assign_emotions(spreader_segment, sc.spreader_emotions);

    std::stable_sort(b.corpus.posts.begin(), b.corpus.posts.end(),
                     [](const PostEvent& x, const PostEvent& y) {
                         if (x.timestamp != y.timestamp) return x.timestamp < y.timestamp;
                         return x.post_id < y.post_id;
                     });
    std::stable_sort(b.corpus.news.begin(), b.corpus.news.end(),
                     [](const NewsMention& x, const NewsMention& y) {
                         if (x.timestamp != y.timestamp) return x.timestamp < y.timestamp;
                         return x.article_id < y.article_id;
                     });
    rebuild_doi_index(b.corpus);
    return {std::move(b.corpus), std::move(b.truth)};
}

void emit_scenario(const Scenario& scenario, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto [corpus, truth] = generate(scenario);
    write_posts(out_dir + "/posts.jsonl", corpus.posts);
    write_news(out_dir + "/news.jsonl", corpus.news);
    write_users(out_dir + "/users.jsonl", corpus.users);
    std::ofstream gt(out_dir + "/groundtruth.json", std::ios::binary);
    if (!gt) throw Error("cannot write groundtruth.json");
    gt << truth.to_json();
    std::ofstream fact(out_dir + "/factuality.csv", std::ios::binary);
    if (!fact) throw Error("cannot write factuality.csv");
    fact << "domain,label\n";
    for (const auto& [domain, label] : truth.outlet_labels)
        fact << domain << "," << label << "\n";
}

DetectionScore score_detection(const std::set<std::string>& truth,
                               const std::set<std::string>& detected) {
    if (truth.empty()) throw Error("ground truth set is empty");
    std::size_t hits = 0;
    for (const auto& d : detected)
        if (truth.count(d)) ++hits;
    DetectionScore s;
    if (!detected.empty())
        s.precision = static_cast<double>(hits) / static_cast<double>(detected.size());
    s.recall = static_cast<double>(hits) / static_cast<double>(truth.size());
    if (s.precision + s.recall > 0.0)
        s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

} // namespace sciflow
