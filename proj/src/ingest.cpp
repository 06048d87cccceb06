#include "sciflow/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sciflow/error.hpp"
#include "sciflow/util.hpp"

namespace sciflow {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail_at(const std::string& path, std::size_t line, const std::string& msg) {
    throw Error(path + ":" + std::to_string(line) + ": " + msg);
}

std::string req_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw Error(std::string("missing or non-string field '") + key + "'");
    return it->get<std::string>();
}

std::optional<std::string> opt_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string())
        throw Error(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

std::int64_t opt_count(const json& j, const char* key, std::int64_t fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_number_integer())
        throw Error(std::string("field '") + key + "' must be an integer");
    std::int64_t v = it->get<std::int64_t>();
    if (v < 0)
        throw Error(std::string("field '") + key + "' must be >= 0");
    return v;
}

std::optional<double> opt_unit_real(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number())
        throw Error(std::string("field '") + key + "' must be a number");
    double v = it->get<double>();
    if (!(v >= 0.0 && v <= 1.0))
        throw Error(std::string("field '") + key + "' must lie in [0,1]");
    return v;
}

std::vector<std::string> string_array(const json& j, const char* key, bool required) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        if (required)
            throw Error(std::string("missing array field '") + key + "'");
        return {};
    }
    if (!it->is_array())
        throw Error(std::string("field '") + key + "' must be an array");
    std::vector<std::string> out;
    out.reserve(it->size());
    for (const auto& e : *it) {
        if (!e.is_string())
            throw Error(std::string("field '") + key + "' must contain only strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

PostEvent parse_post(const json& j) {
    PostEvent p;
    p.post_id = req_string(j, "post_id");
    if (p.post_id.empty()) throw Error("post_id must be nonempty");
    p.author_id = req_string(j, "author_id");
    if (p.author_id.empty()) throw Error("author_id must be nonempty");
    p.timestamp = parse_rfc3339(req_string(j, "timestamp"));
    p.kind = parse_post_kind(req_string(j, "kind"));
    p.retweeted_post_id = opt_string(j, "retweeted_post_id");
    p.retweeted_author_id = opt_string(j, "retweeted_author_id");
    if (p.kind == PostKind::retweet && !p.retweeted_post_id)
        throw Error("retweet without retweeted_post_id");
    if (p.kind == PostKind::original && p.retweeted_post_id)
        throw Error("original post carries retweeted_post_id");
    p.dois = sorted_unique(string_array(j, "dois", false));
    p.topic_label = opt_string(j, "topic_label");
    if (auto e = opt_string(j, "emotion_label"))
        p.emotion_label = parse_emotion(*e);
    p.terms = string_array(j, "terms", false);
    for (auto& t : p.terms) t = to_lower(t);
    p.hashtags = string_array(j, "hashtags", false);
    if (p.dois.empty() && p.terms.empty())
        throw Error("post '" + p.post_id + "' carries neither dois nor terms");
    return p;
}

NewsMention parse_mention(const json& j) {
    NewsMention m;
    m.article_id = req_string(j, "article_id");
    if (m.article_id.empty()) throw Error("article_id must be nonempty");
    m.outlet_domain = to_lower(req_string(j, "outlet_domain"));
    if (m.outlet_domain.empty()) throw Error("outlet_domain must be nonempty");
    m.timestamp = parse_rfc3339(req_string(j, "timestamp"));
    m.title = req_string(j, "title");
    m.dois = sorted_unique(string_array(j, "dois", false));
    m.trust_score = opt_unit_real(j, "trust_score");
    auto it = j.find("daily_visits");
    if (it != j.end() && !it->is_null())
        m.daily_visits = opt_count(j, "daily_visits", 0);
    return m;
}

UserRecord parse_user(const json& j) {
    UserRecord u;
    u.user_id = req_string(j, "user_id");
    if (u.user_id.empty()) throw Error("user_id must be nonempty");
    if (auto s = opt_string(j, "stance")) u.stance = parse_stance(*s);
    u.followers = opt_count(j, "followers", 0);
    u.following = opt_count(j, "following", 0);
    if (auto t = opt_string(j, "created_at")) u.created_at = parse_rfc3339(*t);
    auto vit = j.find("verified");
    if (vit != j.end() && !vit->is_null()) {
        if (!vit->is_boolean()) throw Error("field 'verified' must be a boolean");
        u.verified = vit->get<bool>();
    }
    if (auto c = opt_string(j, "credential")) u.credential = parse_credential(*c);
    u.bot_score = opt_unit_real(j, "bot_score");
    return u;
}

template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            fail_at(path, lineno, std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object()) fail_at(path, lineno, "record is not a JSON object");
        try {
            fn(j);
        } catch (const json::exception& e) {
            fail_at(path, lineno, e.what());
        } catch (const Error& e) {
            fail_at(path, lineno, e.what());
        }
    }
}

} // namespace

std::string LoadReport::to_json() const {
    ordered_json j;
    j["post_records"] = post_records;
    j["news_records"] = news_records;
    j["user_records"] = user_records;
    j["synthesized_users"] = synthesized_users;
    j["excluded_aggregator_mentions"] = excluded_aggregator_mentions;
    return j.dump(2) + "\n";
}

std::vector<PostEvent> load_posts(const std::string& path) {
    std::vector<PostEvent> posts;
    std::map<std::string, bool> seen;
    for_each_line(path, [&](const json& j) {
        PostEvent p = parse_post(j);
        if (!seen.emplace(p.post_id, true).second)
            throw Error("duplicate post_id '" + p.post_id + "'");
        posts.push_back(std::move(p));
    });
    return posts;
}

std::vector<NewsMention> load_news(const std::string& path) {
    std::vector<NewsMention> news;
    for_each_line(path, [&](const json& j) { news.push_back(parse_mention(j)); });
    return news;
}

std::map<std::string, UserRecord> load_users(const std::string& path) {
    std::map<std::string, UserRecord> users;
    for_each_line(path, [&](const json& j) {
        UserRecord u = parse_user(j);
        std::string id = u.user_id;
        if (!users.emplace(id, std::move(u)).second)
            throw Error("duplicate user_id '" + id + "'");
    });
    return users;
}

Corpus load_corpus(const std::string& posts_path, const std::string& news_path,
                   const std::string& users_path, LoadReport* report,
                   const LoadOptions& options) {
    LoadReport rep;
    Corpus corpus;
    // an empty path means the stream is absent, not an error
    if (!users_path.empty()) corpus.users = load_users(users_path);
    rep.user_records = corpus.users.size();
    if (!posts_path.empty()) corpus.posts = load_posts(posts_path);
    rep.post_records = corpus.posts.size();

    std::vector<NewsMention> news;
    if (!news_path.empty()) news = load_news(news_path);
    rep.news_records = news.size();
    if (!options.excluded_outlets.empty()) {
        std::vector<NewsMention> kept;
        kept.reserve(news.size());
        for (auto& m : news) {
            if (options.excluded_outlets.count(m.outlet_domain))
                ++rep.excluded_aggregator_mentions;
            else
                kept.push_back(std::move(m));
        }
        news = std::move(kept);
    }
    corpus.news = std::move(news);

    std::stable_sort(corpus.posts.begin(), corpus.posts.end(),
                     [](const PostEvent& a, const PostEvent& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.post_id < b.post_id;
                     });
    std::stable_sort(corpus.news.begin(), corpus.news.end(),
                     [](const NewsMention& a, const NewsMention& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.article_id < b.article_id;
                     });

    for (const auto& p : corpus.posts) {
        auto synthesize = [&](const std::string& id) {
            if (corpus.users.count(id)) return;
            UserRecord u;
            u.user_id = id;
            corpus.users.emplace(id, std::move(u));
            ++rep.synthesized_users;
        };
        synthesize(p.author_id);
        if (p.retweeted_author_id) synthesize(*p.retweeted_author_id);
    }

    rebuild_doi_index(corpus);
    if (report) *report = rep;
    return corpus;
}

void write_posts(const std::string& path, const std::vector<PostEvent>& posts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    for (const auto& p : posts) {
        ordered_json j;
        j["post_id"] = p.post_id;
        j["author_id"] = p.author_id;
        j["timestamp"] = format_rfc3339(p.timestamp);
        j["kind"] = to_string(p.kind);
        if (p.retweeted_post_id) j["retweeted_post_id"] = *p.retweeted_post_id;
        if (p.retweeted_author_id) j["retweeted_author_id"] = *p.retweeted_author_id;
        j["dois"] = p.dois;
        if (p.topic_label) j["topic_label"] = *p.topic_label;
        if (p.emotion_label) j["emotion_label"] = to_string(*p.emotion_label);
        j["terms"] = p.terms;
        j["hashtags"] = p.hashtags;
        out << j.dump() << "\n";
    }
}

void write_news(const std::string& path, const std::vector<NewsMention>& news) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    for (const auto& m : news) {
        ordered_json j;
        j["article_id"] = m.article_id;
        j["outlet_domain"] = m.outlet_domain;
        j["timestamp"] = format_rfc3339(m.timestamp);
        j["title"] = m.title;
        j["dois"] = m.dois;
        if (m.trust_score) j["trust_score"] = *m.trust_score;
        if (m.daily_visits) j["daily_visits"] = *m.daily_visits;
        out << j.dump() << "\n";
    }
}

void write_users(const std::string& path, const std::map<std::string, UserRecord>& users) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    for (const auto& [id, u] : users) {
        ordered_json j;
        j["user_id"] = u.user_id;
        if (u.stance != Stance::unlabeled) j["stance"] = to_string(u.stance);
        j["followers"] = u.followers;
        j["following"] = u.following;
        if (u.created_at) j["created_at"] = format_rfc3339(*u.created_at);
        j["verified"] = u.verified;
        if (u.credential != Credential::unlabeled) j["credential"] = to_string(u.credential);
        if (u.bot_score) j["bot_score"] = *u.bot_score;
        out << j.dump() << "\n";
    }
}

std::vector<NewsMention> dedup_syndication(const std::vector<NewsMention>& news,
                                           std::size_t* removed) {
    // rank(a) < rank(b) means a survives over b
    auto rank_less = [](const NewsMention& a, const NewsMention& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        std::int64_t va = a.daily_visits.value_or(-1);
        std::int64_t vb = b.daily_visits.value_or(-1);
        if (va != vb) return va > vb;
        if (a.outlet_domain != b.outlet_domain) return a.outlet_domain < b.outlet_domain;
        return a.article_id < b.article_id;
    };

    std::map<std::string, std::size_t> best;  // normalized title -> index
    for (std::size_t i = 0; i < news.size(); ++i) {
        std::string key = normalize_whitespace(news[i].title);
        auto [it, inserted] = best.emplace(key, i);
        if (!inserted && rank_less(news[i], news[it->second])) it->second = i;
    }

    std::vector<bool> keep(news.size(), false);
    for (const auto& [key, idx] : best) keep[idx] = true;
    std::vector<NewsMention> out;
    out.reserve(best.size());
    for (std::size_t i = 0; i < news.size(); ++i)
        if (keep[i]) out.push_back(news[i]);
    if (removed) *removed = news.size() - out.size();
    return out;
}

WeightedGraph build_syndication_graph(const std::vector<NewsMention>& news,
                                      std::int64_t window_seconds) {
    WeightedGraph g;
    std::set<std::string> outlets;
    for (const auto& m : news) outlets.insert(m.outlet_domain);
    for (const auto& o : outlets) g.add_node(o);

    std::map<std::string, std::vector<std::size_t>> by_title;
    for (std::size_t i = 0; i < news.size(); ++i)
        by_title[normalize_whitespace(news[i].title)].push_back(i);

    for (auto& [title, idxs] : by_title) {
        std::sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
            if (news[a].timestamp != news[b].timestamp)
                return news[a].timestamp < news[b].timestamp;
            return a < b;
        });
        for (std::size_t i = 0; i < idxs.size(); ++i) {
            for (std::size_t j = i + 1; j < idxs.size(); ++j) {
                if (news[idxs[j]].timestamp - news[idxs[i]].timestamp > window_seconds)
                    break;
                const std::string& a = news[idxs[i]].outlet_domain;
                const std::string& b = news[idxs[j]].outlet_domain;
                if (a != b) g.add_edge(a, b, 1.0);
            }
        }
    }
    g.finalize();
    return g;
}

std::vector<MediaDay> rolling_media_series(const std::vector<NewsMention>& news,
                                           int window_days) {
    if (window_days < 1) throw Error("window_days must be >= 1");
    if (news.empty()) return {};

    struct DayAgg {
        std::map<std::string, std::int64_t> visits;  // per-outlet max that day
        std::map<std::string, double> trust;
    };
    std::map<Timestamp, DayAgg> days;
    for (const auto& m : news) {
        DayAgg& d = days[utc_day(m.timestamp) * kSecondsPerDay];
        auto [vit, vnew] = d.visits.emplace(m.outlet_domain, m.daily_visits.value_or(0));
        if (!vnew) vit->second = std::max(vit->second, m.daily_visits.value_or(0));
        if (m.trust_score) {
            auto [tit, tnew] = d.trust.emplace(m.outlet_domain, *m.trust_score);
            if (!tnew) tit->second = std::max(tit->second, *m.trust_score);
        }
    }

    Timestamp first = days.begin()->first;
    Timestamp last = days.rbegin()->first;
    std::size_t n = static_cast<std::size_t>((last - first) / kSecondsPerDay) + 1;

    std::vector<double> count(n, 0.0), visits(n, 0.0), trust(n, 0.0);
    std::vector<bool> has_trust(n, false);
    for (const auto& [day, agg] : days) {
        std::size_t i = static_cast<std::size_t>((day - first) / kSecondsPerDay);
        count[i] = static_cast<double>(agg.visits.size());
        for (const auto& [outlet, v] : agg.visits) visits[i] += static_cast<double>(v);
        if (!agg.trust.empty()) {
            double sum = 0.0;
            for (const auto& [outlet, t] : agg.trust) sum += t;
            trust[i] = sum / static_cast<double>(agg.trust.size());
            has_trust[i] = true;
        }
    }

    std::vector<MediaDay> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = (i + 1 >= static_cast<std::size_t>(window_days))
                             ? i + 1 - static_cast<std::size_t>(window_days)
                             : 0;
        double csum = 0.0, vsum = 0.0, tsum = 0.0;
        std::size_t span = i - lo + 1, tdays = 0;
        for (std::size_t k = lo; k <= i; ++k) {
            csum += count[k];
            vsum += visits[k];
            if (has_trust[k]) {
                tsum += trust[k];
                ++tdays;
            }
        }
        MediaDay& d = out[i];
        d.day = first + static_cast<Timestamp>(i) * kSecondsPerDay;
        d.outlet_count = csum / static_cast<double>(span);
        d.total_visits = vsum / static_cast<double>(span);
        if (tdays > 0) {
            d.mean_trust = tsum / static_cast<double>(tdays);
            d.trust_defined = true;
        }
    }
    return out;
}

} // namespace sciflow
