#include "sciflow/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "sciflow/error.hpp"
#include "sciflow/util.hpp"

namespace sciflow {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

WeightedGraph::NodeId WeightedGraph::add_node(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    NodeId id = static_cast<NodeId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    adj_.emplace_back();
    return id;
}

std::optional<WeightedGraph::NodeId> WeightedGraph::node_id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void WeightedGraph::add_edge(NodeId a, NodeId b, double weight) {
    if (a == b) throw Error("self-loop rejected for node '" + names_[a] + "'");
    for (auto& [nb, w] : adj_[a]) {
        if (nb == b) {
            w += weight;
            for (auto& [nb2, w2] : adj_[b]) {
                if (nb2 == a) { w2 += weight; break; }
            }
            return;
        }
    }
    adj_[a].emplace_back(b, weight);
    adj_[b].emplace_back(a, weight);
    ++edge_count_;
}

void WeightedGraph::add_edge(const std::string& a, const std::string& b, double weight) {
    // sequenced so node ids follow argument order regardless of compiler
    NodeId ia = add_node(a);
    NodeId ib = add_node(b);
    add_edge(ia, ib, weight);
}

double WeightedGraph::edge_weight(NodeId a, NodeId b) const {
    const auto& row = adj_[a];
    auto it = std::lower_bound(row.begin(), row.end(), b,
                               [](const auto& p, NodeId v) { return p.first < v; });
    if (it != row.end() && it->first == b) return it->second;
    // fall back to linear scan if finalize() has not run
    for (const auto& [nb, w] : row)
        if (nb == b) return w;
    return 0.0;
}

void WeightedGraph::finalize() {
    for (auto& row : adj_)
        std::sort(row.begin(), row.end());
}

std::vector<int> WeightedGraph::connected_components(int* count) const {
    std::vector<int> label(names_.size(), -1);
    int next = 0;
    std::deque<NodeId> queue;
    for (NodeId s = 0; s < names_.size(); ++s) {
        if (label[s] != -1) continue;
        label[s] = next;
        queue.push_back(s);
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (const auto& [v, w] : adj_[u]) {
                (void)w;
                if (label[v] == -1) {
                    label[v] = next;
                    queue.push_back(v);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return label;
}

WeightedGraph WeightedGraph::induced_subgraph(const std::set<std::string>& keep) const {
    WeightedGraph sub;
    std::vector<bool> in(names_.size(), false);
    for (NodeId u = 0; u < names_.size(); ++u) {
        if (keep.count(names_[u])) {
            in[u] = true;
            sub.add_node(names_[u]);
        }
    }
    for (NodeId u = 0; u < names_.size(); ++u) {
        if (!in[u]) continue;
        for (const auto& [v, w] : adj_[u]) {
            if (v > u && in[v]) sub.add_edge(names_[u], names_[v], w);
        }
    }
    sub.finalize();
    return sub;
}

double WeightedGraph::density() const {
    std::size_t n = names_.size();
    if (n < 2) return 0.0;
    return 2.0 * static_cast<double>(edge_count_) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

double WeightedGraph::average_clustering() const {
    std::size_t n = names_.size();
    if (n == 0) return 0.0;
    double total = 0.0;
    for (NodeId u = 0; u < n; ++u) {
        std::size_t k = adj_[u].size();
        if (k < 2) continue;
        std::size_t links = 0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                NodeId a = adj_[u][i].first;
                NodeId b = adj_[u][j].first;
                if (edge_weight(a, b) > 0.0) ++links;
            }
        }
        total += 2.0 * static_cast<double>(links) /
                 (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return total / static_cast<double>(n);
}

std::pair<double, double> WeightedGraph::path_metrics(const std::vector<NodeId>& nodes) const {
    if (nodes.size() < 2) return {0.0, 0.0};
    std::vector<bool> in(names_.size(), false);
    for (NodeId u : nodes) in[u] = true;
    double sum = 0.0;
    std::size_t pairs = 0;
    std::size_t diameter = 0;
    std::vector<int> dist(names_.size());
    std::deque<NodeId> queue;
    for (NodeId s : nodes) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (const auto& [v, w] : adj_[u]) {
                (void)w;
                if (in[v] && dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (NodeId t : nodes) {
            if (t == s) continue;
            if (dist[t] < 0)
                throw Error("path metrics requested on a disconnected node set");
            sum += dist[t];
            diameter = std::max(diameter, static_cast<std::size_t>(dist[t]));
            ++pairs;
        }
    }
    return {sum / static_cast<double>(pairs), static_cast<double>(diameter)};
}

double WeightedGraph::modularity(const std::vector<int>& community) const {
    if (community.size() != names_.size())
        throw Error("community labels do not cover every node");
    if (edge_count_ == 0) return 0.0;
    double m = static_cast<double>(edge_count_);
    std::map<int, double> intra;
    std::map<int, double> deg;
    for (NodeId u = 0; u < names_.size(); ++u) {
        deg[community[u]] += static_cast<double>(adj_[u].size());
        for (const auto& [v, w] : adj_[u]) {
            (void)w;
            if (v > u && community[v] == community[u]) intra[community[u]] += 1.0;
        }
    }
    double q = 0.0;
    for (const auto& [c, d] : deg) {
        double e = 0.0;
        auto it = intra.find(c);
        if (it != intra.end()) e = it->second;
        q += e / m - (d / (2.0 * m)) * (d / (2.0 * m));
    }
    return q;
}

std::vector<int> WeightedGraph::greedy_modularity_communities() const {
    std::size_t n = names_.size();
    std::vector<int> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = static_cast<int>(i);
    if (edge_count_ == 0 || n == 0) return root;

    double m = static_cast<double>(edge_count_);
    // e[i][j]: fraction of edges joining live communities i and j
    std::vector<std::map<int, double>> e(n);
    std::vector<double> a(n, 0.0);
    std::vector<bool> alive(n, true);
    for (NodeId u = 0; u < n; ++u) {
        a[u] = static_cast<double>(adj_[u].size()) / (2.0 * m);
        for (const auto& [v, w] : adj_[u]) {
            (void)w;
            if (v > u) {
                e[u][static_cast<int>(v)] += 1.0 / m;
                e[v][static_cast<int>(u)] += 1.0 / m;
            }
        }
    }

    while (true) {
        double best = 0.0;
        int bi = -1, bj = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (const auto& [j, eij] : e[i]) {
                if (j <= static_cast<int>(i)) continue;
                double dq = eij - 2.0 * a[i] * a[j];
                if (dq > best) {
                    best = dq;
                    bi = static_cast<int>(i);
                    bj = j;
                }
            }
        }
        if (bi < 0) break;
        // merge bj into bi
        for (const auto& [k, ejk] : e[bj]) {
            if (k == bi) continue;
            e[bi][k] += ejk;
            e[k][bi] = e[bi][k];
            e[k].erase(bj);
        }
        e[bi].erase(bj);
        a[bi] += a[bj];
        e[bj].clear();
        alive[bj] = false;
        for (std::size_t u = 0; u < n; ++u)
            if (root[u] == bj) root[u] = bi;
    }

    // renumber by first appearance
    std::map<int, int> relabel;
    std::vector<int> out(n);
    for (std::size_t u = 0; u < n; ++u) {
        auto [it, inserted] = relabel.emplace(root[u], static_cast<int>(relabel.size()));
        out[u] = it->second;
    }
    return out;
}

std::string WeightedGraph::to_graphml(const std::map<std::string, NodeAttrs>& attrs,
                                      const std::vector<std::string>& attr_names) const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    for (std::size_t i = 0; i < attr_names.size(); ++i) {
        os << "  <key id=\"d" << i << "\" for=\"node\" attr.name=\""
           << xml_escape(attr_names[i]) << "\" attr.type=\"string\"/>\n";
    }
    os << "  <key id=\"w\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    os << "  <graph edgedefault=\"undirected\">\n";
    for (NodeId u = 0; u < names_.size(); ++u) {
        os << "    <node id=\"" << xml_escape(names_[u]) << "\"";
        auto it = attrs.find(names_[u]);
        if (it == attrs.end()) {
            os << "/>\n";
            continue;
        }
        os << ">\n";
        for (std::size_t i = 0; i < attr_names.size(); ++i) {
            auto vit = it->second.values.find(attr_names[i]);
            if (vit == it->second.values.end()) continue;
            os << "      <data key=\"d" << i << "\">" << xml_escape(vit->second)
               << "</data>\n";
        }
        os << "    </node>\n";
    }
    for (NodeId u = 0; u < names_.size(); ++u) {
        for (const auto& [v, w] : adj_[u]) {
            if (v <= u) continue;
            os << "    <edge source=\"" << xml_escape(names_[u]) << "\" target=\""
               << xml_escape(names_[v]) << "\"><data key=\"w\">" << format_double(w)
               << "</data></edge>\n";
        }
    }
    os << "  </graph>\n";
    os << "</graphml>\n";
    return os.str();
}

std::string WeightedGraph::to_dot(const std::map<std::string, NodeAttrs>& attrs,
                                  const std::string& graph_name) const {
    std::ostringstream os;
    os << "graph " << graph_name << " {\n";
    for (NodeId u = 0; u < names_.size(); ++u) {
        os << "  " << dot_quote(names_[u]);
        auto it = attrs.find(names_[u]);
        if (it != attrs.end() && !it->second.values.empty()) {
            os << " [";
            bool first = true;
            for (const auto& [k, v] : it->second.values) {
                if (!first) os << ", ";
                first = false;
                os << k << "=" << dot_quote(v);
            }
            os << "]";
        }
        os << ";\n";
    }
    for (NodeId u = 0; u < names_.size(); ++u) {
        for (const auto& [v, w] : adj_[u]) {
            if (v <= u) continue;
            os << "  " << dot_quote(names_[u]) << " -- " << dot_quote(names_[v])
               << " [weight=" << format_double(w) << "];\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace sciflow
