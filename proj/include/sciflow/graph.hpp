#ifndef SCIFLOW_GRAPH_HPP
#define SCIFLOW_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sciflow {

// Undirected weighted graph over string-identified nodes. Node order is the
// insertion order; edges are stored once per direction in the adjacency
// lists. All algorithms iterate nodes and neighbors in deterministic order.
class WeightedGraph {
public:
    using NodeId = std::uint32_t;

    NodeId add_node(const std::string& name);
    std::optional<NodeId> node_id(const std::string& name) const;
    const std::string& node_name(NodeId id) const { return names_[id]; }
    std::size_t node_count() const { return names_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    // a != b required; re-adding an edge accumulates weight.
    void add_edge(NodeId a, NodeId b, double weight);
    void add_edge(const std::string& a, const std::string& b, double weight);
    double edge_weight(NodeId a, NodeId b) const;  // 0 when absent

    const std::vector<std::pair<NodeId, double>>& neighbors(NodeId id) const {
        return adj_[id];
    }
    std::size_t degree(NodeId id) const { return adj_[id].size(); }
    const std::vector<std::string>& node_names() const { return names_; }

    // Sorts adjacency lists by neighbor id; call after bulk construction.
    void finalize();

    // Component label per node, labels numbered by first appearance.
    std::vector<int> connected_components(int* count = nullptr) const;
    WeightedGraph induced_subgraph(const std::set<std::string>& keep) const;

    double density() const;
    // Mean local clustering coefficient, unweighted; nodes of degree < 2
    // contribute 0.
    double average_clustering() const;
    // Unweighted-hop metrics over the given node set (usually the largest
    // component): (average path length, diameter).
    std::pair<double, double> path_metrics(const std::vector<NodeId>& nodes) const;

    // Newman modularity of a node partition, unweighted.
    double modularity(const std::vector<int>& community) const;
    // Greedy agglomerative modularity maximization (merge the best pair until
    // one community remains, return the partition at peak modularity).
    // Deterministic: ties resolved toward the smallest community index pair.
    std::vector<int> greedy_modularity_communities() const;

    struct NodeAttrs {
        std::map<std::string, std::string> values;  // attr name -> value
    };
    // attrs maps node name -> attributes; missing nodes get no data elements.
    std::string to_graphml(const std::map<std::string, NodeAttrs>& attrs,
                           const std::vector<std::string>& attr_names) const;
    std::string to_dot(const std::map<std::string, NodeAttrs>& attrs,
                       const std::string& graph_name = "g") const;

private:
    std::vector<std::string> names_;
    std::map<std::string, NodeId> index_;
    std::vector<std::vector<std::pair<NodeId, double>>> adj_;
    std::size_t edge_count_ = 0;
};

} // namespace sciflow

#endif
