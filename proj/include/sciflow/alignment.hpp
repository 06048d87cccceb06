#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sciflow/model.hpp"
#include "sciflow/pathways.hpp"
#include "sciflow/stats.hpp"

namespace sciflow {

enum class EntityKind { outlet, superspreader };

// Sparse DOI profile for one outlet or one superspreader, TF-IDF weighted and
// L2-normalized over the shared DOI vocabulary.
struct DoiVector {
    std::string entity_id;
    EntityKind kind = EntityKind::outlet;
    std::map<std::string, double> values;
};

struct DoiVectorSet {
    std::vector<DoiVector> entities;        // outlets first, then superspreaders, each sorted by id
    std::size_t excluded_entities = 0;      // entities that mentioned no DOI at all
};

// Counts articles per DOI for each outlet and posts per DOI for each
// superspreader, then applies the same TF-IDF variant used for the co-retweet
// matrix over the combined entity-by-DOI matrix.
DoiVectorSet build_doi_vectors(const Corpus& corpus,
                               const std::set<std::string>& superspreaders);

struct Neighbor {
    std::string outlet_domain;
    double similarity = 0.0;
    std::optional<double> trust_score;
};

struct NeighborProfile {
    std::string superspreader_id;
    int k = 0;
    std::vector<Neighbor> neighbors;  // similarity descending, ties by outlet ascending
    bool no_positive_similarity = false;
};

// Mean trust score per outlet over its scored mentions. Outlets whose
// mentions carry no score are absent from the map.
std::map<std::string, double> outlet_trust_scores(const std::vector<NewsMention>& news);

// Top-k outlets by cosine similarity for one superspreader. Zero-similarity
// outlets are never included; fewer than k positive matches give a shorter
// list, none at all flags the profile.
NeighborProfile knn_outlets(const DoiVectorSet& vectors,
                            const std::map<std::string, double>& outlet_trust,
                            const std::string& superspreader_id, int k);

enum class TestUnit { superspreader, neighbor };

struct GroupNeighborTests {
    int k = 0;
    TestResult trust;       // group A vs group B on neighbor trust
    TestResult similarity;  // group A vs group B on neighbor similarity
    TestUnit unit = TestUnit::superspreader;
};

// Welch t-tests between two groups of profiles (all built with the same k).
// Unit superspreader: one observation per profile, the mean over its
// neighbors. Unit neighbor: every neighbor is an observation. Neighbors
// without trust scores are excluded from the trust test only.
GroupNeighborTests group_neighbor_tests(const std::vector<NeighborProfile>& group_a,
                                        const std::vector<NeighborProfile>& group_b,
                                        TestUnit unit = TestUnit::superspreader);

using TrustCut = RocCut;

// ROC sweep over trust scores with "trustworthy" as the positive class.
// Threshold maximizes Youden's J, ties toward the lower threshold.
TrustCut youden_cut(const std::vector<std::pair<double, bool>>& labeled);

// HC iff mean outlet trust >= cut.threshold; outlets without any scored
// mention stay unclassified.
std::map<std::string, OutletClass> binarize_outlets(const std::vector<NewsMention>& news,
                                                    const TrustCut& cut);

// CSV "domain,label" with label in {low, mixed, high}; low and mixed collapse
// into the questionable class, high is trustworthy (true).
std::map<std::string, bool> load_factuality_csv(const std::string& path);

} // namespace sciflow
