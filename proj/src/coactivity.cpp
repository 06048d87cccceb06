#include "sciflow/coactivity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sciflow/error.hpp"
#include "sciflow/util.hpp"

namespace sciflow {

namespace {

bool is_self_retweet(const Corpus& corpus,
                     const std::map<std::string, std::size_t>& post_index,
                     const PostEvent& post) {
    auto target = resolve_retweet_target(corpus, post_index, post);
    return target && *target == post.author_id;
}

} // namespace

SimilarityGraph build_coretweet_graph(const Corpus& corpus,
                                      const CoactivityOptions& options) {
    if (corpus.posts.empty()) throw Error("corpus has no posts");
    if (options.window_seconds <= 0) throw Error("window must be positive");

    SimilarityGraph result;
    result.options = options;

    auto post_index = build_post_index(corpus);
    std::vector<std::size_t> retweets;
    std::map<std::string, std::int64_t> user_totals;
    std::map<std::string, std::int64_t> post_totals;
    for (std::size_t i = 0; i < corpus.posts.size(); ++i) {
        const PostEvent& p = corpus.posts[i];
        if (!p.is_retweet()) continue;
        if (!options.include_self_retweets && is_self_retweet(corpus, post_index, p))
            continue;
        retweets.push_back(i);
        ++user_totals[p.author_id];
        ++post_totals[*p.retweeted_post_id];
    }

    std::map<std::string, std::size_t> user_row;
    for (const auto& [user, total] : user_totals)
        if (total >= options.min_user_retweets)
            user_row.emplace(user, user_row.size());
    if (user_row.empty()) {
        result.all_filtered = true;
        return result;
    }

    const Timestamp t0 = corpus.posts.front().timestamp;
    // column key: (window index, retweeted post id)
    std::map<std::pair<std::int64_t, std::string>, std::size_t> columns;
    std::vector<std::map<std::size_t, std::int64_t>> cells(user_row.size());
    for (std::size_t i : retweets) {
        const PostEvent& p = corpus.posts[i];
        auto uit = user_row.find(p.author_id);
        if (uit == user_row.end()) continue;
        if (post_totals[*p.retweeted_post_id] < options.min_post_retweets) continue;
        std::int64_t window = (p.timestamp - t0) / options.window_seconds;
        auto cit = columns
                       .emplace(std::make_pair(window, *p.retweeted_post_id),
                                columns.size())
                       .first;
        ++cells[uit->second][cit->second];
    }

    // smooth idf over the user rows
    std::vector<std::int64_t> df(columns.size(), 0);
    for (const auto& row : cells)
        for (const auto& [col, count] : row) ++df[col];
    const double n_rows = static_cast<double>(user_row.size());
    std::vector<double> idf(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        idf[c] = std::log((1.0 + n_rows) / (1.0 + static_cast<double>(df[c]))) + 1.0;

    // L2-normalized sparse rows, column-sorted
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(user_row.size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        double norm2 = 0.0;
        rows[r].reserve(cells[r].size());
        for (const auto& [col, count] : cells[r]) {
            double w = static_cast<double>(count) * idf[col];
            rows[r].emplace_back(col, w);
            norm2 += w * w;
        }
        if (norm2 > 0.0) {
            double inv = 1.0 / std::sqrt(norm2);
            for (auto& [col, w] : rows[r]) w *= inv;
        }
    }

    for (const auto& [user, row] : user_row) {
        (void)row;
        result.graph.add_node(user);
    }

    // per-row neighbor lists computed independently, then folded in row order
    std::vector<std::vector<std::pair<std::size_t, double>>> edges(rows.size());
    parallel_for(rows.size(), options.threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            double dot = 0.0;
            auto a = rows[i].begin();
            auto b = rows[j].begin();
            while (a != rows[i].end() && b != rows[j].end()) {
                if (a->first < b->first) {
                    ++a;
                } else if (b->first < a->first) {
                    ++b;
                } else {
                    dot += a->second * b->second;
                    ++a;
                    ++b;
                }
            }
            if (dot > 0.0) edges[i].emplace_back(j, std::min(dot, 1.0));
        }
    });
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (const auto& [j, w] : edges[i])
            result.graph.add_edge(static_cast<WeightedGraph::NodeId>(i),
                                  static_cast<WeightedGraph::NodeId>(j), w);
    result.graph.finalize();
    return result;
}

std::map<std::string, double> eigenvector_centrality(const WeightedGraph& graph,
                                                     double tol, int max_iter) {
    std::size_t n = graph.node_count();
    if (n == 0) throw Error("centrality of an empty graph");

    std::map<std::string, double> out;
    if (graph.edge_count() == 0) {
        for (std::size_t i = 0; i < n; ++i) out[graph.node_name(i)] = 0.0;
        return out;
    }

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    // diagonal shift leaves the eigenvectors untouched but keeps the top
    // eigenvalue strictly dominant on bipartite components, where plain
    // iteration oscillates between +/- lambda
    double shift = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        double deg = 0.0;
        for (const auto& [v, w] : graph.neighbors(static_cast<WeightedGraph::NodeId>(u)))
            deg += w;
        shift = std::max(shift, deg);
    }
    shift *= 0.5;
    double residual = 0.0;
    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        for (std::size_t u = 0; u < n; ++u) {
            double sum = shift * x[u];
            for (const auto& [v, w] : graph.neighbors(static_cast<WeightedGraph::NodeId>(u)))
                sum += w * x[v];
            y[u] = sum;
        }
        double norm2 = 0.0;
        for (double v : y) norm2 += v * v;
        double norm = std::sqrt(norm2);
        if (norm == 0.0) throw Error("power iteration collapsed to the zero vector");
        residual = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            y[u] /= norm;
            residual = std::max(residual, std::abs(y[u] - x[u]));
        }
        x.swap(y);
        if (residual < tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw Error("eigenvector centrality did not converge after " +
                    std::to_string(max_iter) + " iterations (residual " +
                    format_double(residual) + ")");

    double top = *std::max_element(x.begin(), x.end());
    for (std::size_t i = 0; i < n; ++i)
        out[graph.node_name(static_cast<WeightedGraph::NodeId>(i))] =
            top > 0.0 ? x[i] / top : 0.0;
    return out;
}

std::string NetworkStats::csv_header() {
    return "#nodes,%contrarian,Density,Modularity,Avg. path length,"
           "Avg. clustering coefficient";
}

std::string NetworkStats::csv_row() const {
    std::ostringstream os;
    os << node_count << ',';
    if (stance_known) os << format_double(pct_contrarian);
    os << ',' << format_double(density) << ',' << format_double(modularity) << ',';
    if (path_defined) os << format_double(avg_path_length);
    os << ',' << format_double(avg_clustering);
    return os.str();
}

NetworkStats network_stats(const WeightedGraph& graph, const Corpus& corpus) {
    NetworkStats s;
    s.node_count = graph.node_count();
    s.defined = graph.node_count() >= 2;
    if (graph.node_count() == 0) return s;

    std::size_t labeled = 0, contrarian = 0;
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        Stance st = corpus.stance_of(graph.node_name(static_cast<WeightedGraph::NodeId>(i)));
        if (st == Stance::unlabeled) continue;
        ++labeled;
        if (st == Stance::contrarian) ++contrarian;
    }
    if (labeled > 0) {
        s.stance_known = true;
        s.pct_contrarian = 100.0 * static_cast<double>(contrarian) / static_cast<double>(labeled);
    }

    s.density = graph.density();
    s.avg_clustering = graph.average_clustering();

    int comp_count = 0;
    std::vector<int> comp = graph.connected_components(&comp_count);
    s.connected_components = comp_count;

    std::vector<std::size_t> comp_size(static_cast<std::size_t>(comp_count), 0);
    for (int c : comp) ++comp_size[static_cast<std::size_t>(c)];
    int largest = 0;
    for (int c = 1; c < comp_count; ++c)
        if (comp_size[static_cast<std::size_t>(c)] > comp_size[static_cast<std::size_t>(largest)])
            largest = c;
    std::vector<WeightedGraph::NodeId> members;
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (comp[i] == largest) members.push_back(static_cast<WeightedGraph::NodeId>(i));
    if (members.size() >= 2) {
        auto [apl, diam] = graph.path_metrics(members);
        s.avg_path_length = apl;
        s.diameter = diam;
        s.path_defined = true;
    }

    s.modularity = graph.modularity(graph.greedy_modularity_communities());
    return s;
}

CoordinationResult extract_coordinated(const SimilarityGraph& graph,
                                       const std::map<std::string, double>& centrality,
                                       const Corpus& corpus, double percentile,
                                       PercentileBase base, std::size_t refine_above) {
    if (!(percentile > 0.0 && percentile < 1.0))
        throw Error("percentile must lie in (0,1)");

    CoordinationResult result;
    result.centrality = centrality;
    result.threshold_percentile = percentile;

    const WeightedGraph& g = graph.graph;
    std::size_t base_count = g.node_count();
    if (base == PercentileBase::positive_centrality) {
        base_count = 0;
        for (const auto& [user, c] : centrality)
            if (c > 0.0) ++base_count;
    }
    if (base_count == 0) return result;

    std::size_t k = static_cast<std::size_t>(
        std::ceil(percentile * static_cast<double>(base_count)));
    k = std::min(std::max<std::size_t>(k, 1), g.node_count());

    std::vector<std::string> order;
    order.reserve(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i)
        order.push_back(g.node_name(static_cast<WeightedGraph::NodeId>(i)));
    std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        double ca = centrality.at(a);
        double cb = centrality.at(b);
        if (ca != cb) return ca > cb;
        return a < b;
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    result.coordinated_user_ids = order;

    std::set<std::string> selected(order.begin(), order.end());
    result.subgraph = g.induced_subgraph(selected);
    result.stats = network_stats(result.subgraph, corpus);

    // connected components, then modularity refinement of oversized ones
    int comp_count = 0;
    std::vector<int> comp = result.subgraph.connected_components(&comp_count);
    std::map<int, std::vector<WeightedGraph::NodeId>> by_comp;
    for (std::size_t i = 0; i < comp.size(); ++i)
        by_comp[comp[i]].push_back(static_cast<WeightedGraph::NodeId>(i));

    std::vector<int> label(comp.size(), -1);
    int next = 0;
    for (const auto& [c, nodes] : by_comp) {
        if (nodes.size() <= refine_above) {
            for (auto id : nodes) label[id] = next;
            ++next;
            continue;
        }
        std::set<std::string> names;
        for (auto id : nodes) names.insert(result.subgraph.node_name(id));
        WeightedGraph part = result.subgraph.induced_subgraph(names);
        std::vector<int> sub = part.greedy_modularity_communities();
        int sub_count = 1 + *std::max_element(sub.begin(), sub.end());
        for (std::size_t i = 0; i < sub.size(); ++i) {
            auto id = result.subgraph.node_id(part.node_name(static_cast<WeightedGraph::NodeId>(i)));
            label[*id] = next + sub[i];
        }
        next += sub_count;
    }
    for (std::size_t i = 0; i < label.size(); ++i)
        result.subcluster[result.subgraph.node_name(static_cast<WeightedGraph::NodeId>(i))] =
            label[i];
    result.subcluster_count = next;
    return result;
}

std::vector<RetweetTarget> top_retweeted_in(const std::set<std::string>& group,
                                            const Corpus& corpus,
                                            const std::set<std::string>* superspreaders) {
    if (group.empty()) throw Error("group is empty");
    auto post_index = build_post_index(corpus);
    std::map<std::string, std::int64_t> tally;
    for (const auto& p : corpus.posts) {
        if (!p.is_retweet() || !group.count(p.author_id)) continue;
        auto target = resolve_retweet_target(corpus, post_index, p);
        if (target) ++tally[*target];
    }
    std::vector<RetweetTarget> out;
    out.reserve(tally.size());
    for (const auto& [user, count] : tally) {
        RetweetTarget t;
        t.user_id = user;
        t.retweet_count = count;
        t.stance = corpus.stance_of(user);
        t.is_superspreader = superspreaders && superspreaders->count(user) > 0;
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const RetweetTarget& a, const RetweetTarget& b) {
        if (a.retweet_count != b.retweet_count) return a.retweet_count > b.retweet_count;
        return a.user_id < b.user_id;
    });
    return out;
}

} // namespace sciflow
