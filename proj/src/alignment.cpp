#include "sciflow/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sciflow/error.hpp"
#include "sciflow/util.hpp"

namespace sciflow {

namespace {

double sparse_dot(const std::map<std::string, double>& a,
                  const std::map<std::string, double>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    double dot = 0.0;
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return dot;
}

std::vector<double> per_profile_means(const std::vector<NeighborProfile>& group,
                                      bool trust, TestUnit unit) {
    std::vector<double> out;
    for (const auto& profile : group) {
        if (profile.neighbors.empty()) continue;
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& nb : profile.neighbors) {
            if (trust) {
                if (!nb.trust_score) continue;
                if (unit == TestUnit::neighbor)
                    out.push_back(*nb.trust_score);
                else {
                    sum += *nb.trust_score;
                    ++n;
                }
            } else {
                if (unit == TestUnit::neighbor)
                    out.push_back(nb.similarity);
                else {
                    sum += nb.similarity;
                    ++n;
                }
            }
        }
        if (unit == TestUnit::superspreader && n > 0)
            out.push_back(sum / static_cast<double>(n));
    }
    return out;
}

} // namespace

DoiVectorSet build_doi_vectors(const Corpus& corpus,
                               const std::set<std::string>& superspreaders) {
    if (superspreaders.empty()) throw Error("superspreader set is empty");
    if (corpus.news.empty()) throw Error("corpus has no news mentions");

    std::map<std::string, std::map<std::string, double>> outlet_counts;
    for (const auto& mention : corpus.news) {
        auto& row = outlet_counts[mention.outlet_domain];
        for (const auto& doi : mention.dois) row[doi] += 1.0;
    }
    std::map<std::string, std::map<std::string, double>> user_counts;
    for (const auto& id : superspreaders) user_counts[id];
    for (const auto& post : corpus.posts) {
        auto uit = user_counts.find(post.author_id);
        if (uit == user_counts.end()) continue;
        for (const auto& doi : post.dois) uit->second[doi] += 1.0;
    }

    DoiVectorSet set;
    auto keep = [&set](const std::string& id, EntityKind kind,
                       std::map<std::string, double>&& counts) {
        if (counts.empty()) {
            ++set.excluded_entities;
            return;
        }
        DoiVector v;
        v.entity_id = id;
        v.kind = kind;
        v.values = std::move(counts);
        set.entities.push_back(std::move(v));
    };
    for (auto& [domain, counts] : outlet_counts)
        keep(domain, EntityKind::outlet, std::move(counts));
    for (auto& [id, counts] : user_counts)
        keep(id, EntityKind::superspreader, std::move(counts));
    if (set.entities.empty()) throw Error("no entity mentions any DOI");

    std::map<std::string, std::size_t> df;
    for (const auto& entity : set.entities)
        for (const auto& [doi, count] : entity.values) ++df[doi];
    const double rows = static_cast<double>(set.entities.size());
    std::map<std::string, double> idf;
    for (const auto& [doi, freq] : df)
        idf[doi] = std::log((1.0 + rows) / (1.0 + static_cast<double>(freq))) + 1.0;

    for (auto& entity : set.entities) {
        double norm_sq = 0.0;
        for (auto& [doi, weight] : entity.values) {
            weight *= idf.at(doi);
            norm_sq += weight * weight;
        }
        double norm = std::sqrt(norm_sq);
        for (auto& [doi, weight] : entity.values) weight /= norm;
    }
    return set;
}

std::map<std::string, double> outlet_trust_scores(const std::vector<NewsMention>& news) {
    std::map<std::string, std::pair<double, std::size_t>> sums;
    for (const auto& mention : news) {
        if (!mention.trust_score) continue;
        auto& slot = sums[mention.outlet_domain];
        slot.first += *mention.trust_score;
        slot.second += 1;
    }
    std::map<std::string, double> out;
    for (const auto& [domain, slot] : sums)
        out[domain] = slot.first / static_cast<double>(slot.second);
    return out;
}

NeighborProfile knn_outlets(const DoiVectorSet& vectors,
                            const std::map<std::string, double>& outlet_trust,
                            const std::string& superspreader_id, int k) {
    if (k < 1) throw ConfigError("k must be at least 1");
    const DoiVector* self = nullptr;
    for (const auto& entity : vectors.entities)
        if (entity.kind == EntityKind::superspreader &&
            entity.entity_id == superspreader_id) {
            self = &entity;
            break;
        }
    NeighborProfile profile;
    profile.superspreader_id = superspreader_id;
    profile.k = k;
    if (self == nullptr) {  // all its posts were DOI-free
        profile.no_positive_similarity = true;
        return profile;
    }

    std::vector<Neighbor> candidates;
    for (const auto& entity : vectors.entities) {
        if (entity.kind != EntityKind::outlet) continue;
        double sim = sparse_dot(self->values, entity.values);
        if (sim <= 0.0) continue;
        Neighbor nb;
        nb.outlet_domain = entity.entity_id;
        nb.similarity = std::min(sim, 1.0);
        auto tit = outlet_trust.find(entity.entity_id);
        if (tit != outlet_trust.end()) nb.trust_score = tit->second;
        candidates.push_back(std::move(nb));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Neighbor& a, const Neighbor& b) {
                  if (a.similarity != b.similarity) return a.similarity > b.similarity;
                  return a.outlet_domain < b.outlet_domain;
              });
    if (candidates.size() > static_cast<std::size_t>(k))
        candidates.resize(static_cast<std::size_t>(k));
    profile.neighbors = std::move(candidates);
    profile.no_positive_similarity = profile.neighbors.empty();
    return profile;
}

GroupNeighborTests group_neighbor_tests(const std::vector<NeighborProfile>& group_a,
                                        const std::vector<NeighborProfile>& group_b,
                                        TestUnit unit) {
    auto nonempty = [](const std::vector<NeighborProfile>& g) {
        std::size_t n = 0;
        for (const auto& p : g)
            if (!p.neighbors.empty()) ++n;
        return n;
    };
    if (nonempty(group_a) < 2 || nonempty(group_b) < 2)
        throw Error("each group needs at least 2 profiles with neighbors");
    int k = 0;
    for (const auto& p : group_a)
        if (!p.neighbors.empty()) {
            k = p.k;
            break;
        }

    GroupNeighborTests tests;
    tests.k = k;
    tests.unit = unit;
    auto sim_a = per_profile_means(group_a, false, unit);
    auto sim_b = per_profile_means(group_b, false, unit);
    tests.similarity = welch_t(sim_a, sim_b);
    auto trust_a = per_profile_means(group_a, true, unit);
    auto trust_b = per_profile_means(group_b, true, unit);
    if (trust_a.size() < 2 || trust_b.size() < 2)
        throw Error("too few trust-scored neighbors for the trust test");
    tests.trust = welch_t(trust_a, trust_b);
    return tests;
}

TrustCut youden_cut(const std::vector<std::pair<double, bool>>& labeled) {
    return roc_youden(labeled);
}

std::map<std::string, OutletClass> binarize_outlets(const std::vector<NewsMention>& news,
                                                    const TrustCut& cut) {
    auto trust = outlet_trust_scores(news);
    std::map<std::string, OutletClass> out;
    for (const auto& mention : news) {
        auto tit = trust.find(mention.outlet_domain);
        if (tit == trust.end())
            out[mention.outlet_domain] = OutletClass::unclassified;
        else
            out[mention.outlet_domain] =
                tit->second >= cut.threshold ? OutletClass::HC : OutletClass::LC;
    }
    return out;
}

std::map<std::string, bool> load_factuality_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open factuality file: " + path);
    std::map<std::string, bool> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(path + ":" + std::to_string(lineno) + ": expected domain,label");
        std::string domain = to_lower(normalize_whitespace(line.substr(0, comma)));
        std::string label = to_lower(normalize_whitespace(line.substr(comma + 1)));
        if (lineno == 1 && domain == "domain" && label == "label") continue;
        bool trustworthy;
        if (label == "high")
            trustworthy = true;
        else if (label == "low" || label == "mixed")
            trustworthy = false;
        else
            throw Error(path + ":" + std::to_string(lineno) +
                        ": label must be low, mixed or high");
        if (domain.empty())
            throw Error(path + ":" + std::to_string(lineno) + ": empty domain");
        out[domain] = trustworthy;
    }
    if (out.empty()) throw Error("factuality file has no labeled domains: " + path);
    return out;
}

} // namespace sciflow
