#include "sciflow/spreaders.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sciflow/error.hpp"
#include "sciflow/util.hpp"

namespace sciflow {

std::int64_t h_index(std::vector<std::int64_t> retweet_counts) {
    std::sort(retweet_counts.begin(), retweet_counts.end(), std::greater<>());
    std::int64_t h = 0;
    for (std::size_t i = 0; i < retweet_counts.size(); ++i) {
        if (retweet_counts[i] >= static_cast<std::int64_t>(i) + 1)
            h = static_cast<std::int64_t>(i) + 1;
        else
            break;
    }
    return h;
}

SpreaderSelection select_superspreaders(const Corpus& corpus, double percentile) {
    if (!(percentile > 0.0 && percentile < 1.0))
        throw Error("percentile must lie in (0,1)");

    std::map<std::string, std::int64_t> tally;  // post_id -> retweets
    for (const auto& p : corpus.posts)
        if (p.is_retweet()) ++tally[*p.retweeted_post_id];

    std::map<std::string, std::vector<std::int64_t>> per_user;
    for (const auto& p : corpus.posts) {
        if (p.is_retweet()) continue;
        auto it = tally.find(p.post_id);
        per_user[p.author_id].push_back(it == tally.end() ? 0 : it->second);
    }

    SpreaderSelection sel;
    sel.percentile = percentile;
    sel.scores.reserve(per_user.size());
    for (auto& [user, counts] : per_user) {
        SpreaderScore s;
        s.user_id = user;
        s.original_post_count = static_cast<std::int64_t>(counts.size());
        std::sort(counts.begin(), counts.end(), std::greater<>());
        s.retweet_counts = counts;
        s.h_index = h_index(counts);
        sel.scores.push_back(std::move(s));
    }
    std::sort(sel.scores.begin(), sel.scores.end(),
              [](const SpreaderScore& a, const SpreaderScore& b) {
                  if (a.h_index != b.h_index) return a.h_index > b.h_index;
                  if (a.original_post_count != b.original_post_count)
                      return a.original_post_count > b.original_post_count;
                  return a.user_id < b.user_id;
              });
    if (!sel.scores.empty()) {
        std::size_t k = static_cast<std::size_t>(
            std::ceil(percentile * static_cast<double>(sel.scores.size())));
        k = std::min(std::max<std::size_t>(k, 1), sel.scores.size());
        for (std::size_t i = 0; i < k; ++i) sel.selected.insert(sel.scores[i].user_id);
    }
    return sel;
}

GroupComparison bootstrap_profile_test(const std::set<std::string>& target,
                                       const std::set<std::string>& population,
                                       const std::map<std::string, double>& metric,
                                       std::size_t iterations, std::uint64_t seed,
                                       const std::string& metric_name, int threads) {
    if (iterations < 1) throw Error("iterations must be >= 1");

    GroupComparison cmp;
    cmp.metric = metric_name;
    cmp.iterations = iterations;

    std::vector<double> tvals, pop;
    for (const auto& u : target) {
        auto it = metric.find(u);
        if (it == metric.end()) {
            ++cmp.excluded;
            continue;
        }
        tvals.push_back(it->second);
    }
    for (const auto& u : population) {
        auto it = metric.find(u);
        if (it == metric.end()) {
            ++cmp.excluded;
            continue;
        }
        pop.push_back(it->second);
    }
    if (tvals.size() < 2) throw Error("target group has fewer than 2 measured users");
    if (pop.size() < tvals.size())
        throw Error("population smaller than target after exclusions");

    cmp.n_a = tvals.size();
    cmp.n_b = pop.size();
    cmp.mean_a = mean(tvals);
    cmp.mean_b = mean(pop);

    std::vector<double> t_per(iterations), p_per(iterations);
    parallel_for(iterations, threads, [&](std::size_t i) {
        std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(i));
        auto idx = sample_indices_without_replacement(pop.size(), tvals.size(), rng);
        std::vector<double> sample;
        sample.reserve(idx.size());
        for (std::size_t j : idx) sample.push_back(pop[j]);
        TestResult r = welch_t(tvals, sample);
        t_per[i] = r.statistic;
        p_per[i] = r.p_value;
    });
    double tsum = 0.0, psum = 0.0;
    for (std::size_t i = 0; i < iterations; ++i) {
        tsum += t_per[i];
        psum += p_per[i];
    }
    cmp.t_statistic = tsum / static_cast<double>(iterations);
    cmp.p_value = psum / static_cast<double>(iterations);
    return cmp;
}

StanceContingency stance_contingency(const std::set<std::string>& observed_group,
                                     const std::set<std::string>& reference_population,
                                     const Corpus& corpus) {
    StanceContingency c;
    std::int64_t ref_contrarian = 0, ref_conformist = 0;
    for (const auto& u : reference_population) {
        switch (corpus.stance_of(u)) {
            case Stance::contrarian: ++ref_contrarian; break;
            case Stance::conformist: ++ref_conformist; break;
            case Stance::unlabeled: break;
        }
    }
    for (const auto& u : observed_group) {
        switch (corpus.stance_of(u)) {
            case Stance::contrarian: ++c.observed_contrarian; break;
            case Stance::conformist: ++c.observed_conformist; break;
            case Stance::unlabeled: break;
        }
    }
    std::int64_t ref_total = ref_contrarian + ref_conformist;
    std::int64_t obs_total = c.observed_contrarian + c.observed_conformist;
    if (ref_total == 0) throw Error("reference population has no stance labels");
    if (obs_total == 0) throw Error("observed group has no stance labels");

    double scale = static_cast<double>(obs_total);
    c.expected_contrarian = std::llround(
        scale * static_cast<double>(ref_contrarian) / static_cast<double>(ref_total));
    c.expected_conformist = std::llround(
        scale * static_cast<double>(ref_conformist) / static_cast<double>(ref_total));
    c.test = chi_square_1dof(
        {static_cast<double>(c.observed_contrarian), static_cast<double>(c.observed_conformist)},
        {static_cast<double>(c.expected_contrarian), static_cast<double>(c.expected_conformist)});
    return c;
}

AmplificationReport amplification_crossover(const std::set<std::string>& coordinated,
                                            const std::set<std::string>& superspreaders,
                                            const Corpus& corpus) {
    if (coordinated.empty() || superspreaders.empty())
        throw Error("coordinated and superspreader sets must be nonempty");

    AmplificationReport rep;
    auto post_index = build_post_index(corpus);
    std::set<std::string> hit;  // superspreaders amplified at least once
    for (const auto& p : corpus.posts) {
        if (!p.is_retweet() || !coordinated.count(p.author_id)) continue;
        auto target = resolve_retweet_target(corpus, post_index, p);
        if (!target) {
            ++rep.unlabeled;
            continue;
        }
        bool spreader = superspreaders.count(*target) > 0;
        if (spreader) hit.insert(*target);
        switch (corpus.stance_of(*target)) {
            case Stance::contrarian:
                ++(spreader ? rep.contrarian_superspreader : rep.other_contrarian);
                break;
            case Stance::conformist:
                ++(spreader ? rep.conformist_superspreader : rep.other_conformist);
                break;
            case Stance::unlabeled:
                ++rep.unlabeled;
                break;
        }
    }

    std::int64_t labeled = rep.contrarian_superspreader + rep.other_contrarian +
                           rep.conformist_superspreader + rep.other_conformist;
    if (labeled == 0 && rep.unlabeled == 0) {
        rep.empty = true;
        return rep;
    }
    if (labeled > 0) {
        double denom = static_cast<double>(labeled);
        rep.share_contrarian_superspreader =
            100.0 * static_cast<double>(rep.contrarian_superspreader) / denom;
        rep.share_other_contrarian =
            100.0 * static_cast<double>(rep.other_contrarian) / denom;
        rep.share_conformist_superspreader =
            100.0 * static_cast<double>(rep.conformist_superspreader) / denom;
        rep.share_other_conformist =
            100.0 * static_cast<double>(rep.other_conformist) / denom;
    }

    std::int64_t ss_contrarian = 0, ss_conformist = 0;
    std::int64_t hit_contrarian = 0, hit_conformist = 0;
    for (const auto& s : superspreaders) {
        switch (corpus.stance_of(s)) {
            case Stance::contrarian:
                ++ss_contrarian;
                if (hit.count(s)) ++hit_contrarian;
                break;
            case Stance::conformist:
                ++ss_conformist;
                if (hit.count(s)) ++hit_conformist;
                break;
            case Stance::unlabeled: break;
        }
    }
    if (ss_contrarian > 0)
        rep.coverage_contrarian_superspreaders =
            static_cast<double>(hit_contrarian) / static_cast<double>(ss_contrarian);
    if (ss_conformist > 0)
        rep.coverage_conformist_superspreaders =
            static_cast<double>(hit_conformist) / static_cast<double>(ss_conformist);
    return rep;
}

TestResult rank_correlation(const std::vector<std::string>& ranking_a,
                            const std::vector<std::string>& ranking_b) {
    std::map<std::string, std::size_t> pos_a, pos_b;
    for (std::size_t i = 0; i < ranking_a.size(); ++i) pos_a.emplace(ranking_a[i], i);
    for (std::size_t i = 0; i < ranking_b.size(); ++i) pos_b.emplace(ranking_b[i], i);

    std::vector<double> x, y;
    for (const auto& item : ranking_a) {
        auto it = pos_b.find(item);
        if (it == pos_b.end()) continue;
        x.push_back(static_cast<double>(pos_a.at(item)));
        y.push_back(static_cast<double>(it->second));
    }
    if (x.size() < 2) throw Error("rankings share fewer than 2 items");
    return kendall_tau_b(x, y);
}

} // namespace sciflow
