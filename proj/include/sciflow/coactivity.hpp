#ifndef SCIFLOW_COACTIVITY_HPP
#define SCIFLOW_COACTIVITY_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sciflow/graph.hpp"
#include "sciflow/model.hpp"

namespace sciflow {

struct CoactivityOptions {
    std::int64_t window_seconds = 30 * 60;
    std::int64_t min_user_retweets = 5;
    std::int64_t min_post_retweets = 10;
    bool include_self_retweets = false;
    int threads = 1;
};

struct SimilarityGraph {
    WeightedGraph graph;  // nodes: surviving users; weights: cosine in [0,1]
    CoactivityOptions options;
    bool all_filtered = false;  // every user fell below the activity filters
};

// Windowed co-retweet similarity: per-user counts of (window, retweeted post)
// cells, TF-IDF weighted, connected by pairwise cosine. Windows are fixed
// length, aligned to the earliest post in the corpus. The user and post
// retweet-count filters apply to raw corpus totals before windowing.
SimilarityGraph build_coretweet_graph(const Corpus& corpus,
                                      const CoactivityOptions& options = {});

// Power iteration with a uniform positive start vector, max-normalized.
// A diagonal shift keeps bipartite components convergent without changing the
// eigenvectors. Converges to the dominant component's eigenvector on
// disconnected graphs. An edgeless graph yields all zeros.
std::map<std::string, double> eigenvector_centrality(const WeightedGraph& graph,
                                                     double tol = 1e-8,
                                                     int max_iter = 1000);

struct NetworkStats {
    std::size_t node_count = 0;
    double pct_contrarian = 0;  // percent over stance-labeled nodes
    bool stance_known = false;
    double density = 0;
    double modularity = 0;
    double avg_path_length = 0;
    double diameter = 0;
    double avg_clustering = 0;
    int connected_components = 0;
    bool path_defined = false;  // largest component has >= 2 nodes
    bool defined = false;       // graph had >= 2 nodes

    static std::string csv_header();
    std::string csv_row() const;
};

NetworkStats network_stats(const WeightedGraph& graph, const Corpus& corpus);

enum class PercentileBase { graph_nodes, positive_centrality };

struct CoordinationResult {
    std::vector<std::string> coordinated_user_ids;  // sorted ascending
    std::map<std::string, double> centrality;
    double threshold_percentile = 0;
    std::map<std::string, int> subcluster;  // coordinated user -> cluster id
    int subcluster_count = 0;
    WeightedGraph subgraph;
    NetworkStats stats;
};

// Selects the ceil(percentile * base) highest-centrality nodes, ties broken
// by user_id ascending. Subclusters are connected components of the induced
// subgraph; components larger than refine_above are split further by greedy
// modularity maximization.
CoordinationResult extract_coordinated(const SimilarityGraph& graph,
                                       const std::map<std::string, double>& centrality,
                                       const Corpus& corpus,
                                       double percentile = 0.01,
                                       PercentileBase base = PercentileBase::graph_nodes,
                                       std::size_t refine_above = 50);

struct RetweetTarget {
    std::string user_id;
    std::int64_t retweet_count = 0;
    Stance stance = Stance::unlabeled;
    bool is_superspreader = false;
};

// Retweets authored by group members, tallied by amplified account,
// descending (ties by user_id).
std::vector<RetweetTarget> top_retweeted_in(const std::set<std::string>& group,
                                            const Corpus& corpus,
                                            const std::set<std::string>* superspreaders = nullptr);

} // namespace sciflow

#endif
