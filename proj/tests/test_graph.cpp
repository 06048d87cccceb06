#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "sciflow/error.hpp"
#include "sciflow/graph.hpp"

using namespace sciflow;

namespace {

WeightedGraph triangle_pair_with_bridge() {
    WeightedGraph g;
    for (const char* n : {"a", "b", "c", "d", "e", "f"}) g.add_node(n);
    g.add_edge("a", "b", 1.0);
    g.add_edge("a", "c", 1.0);
    g.add_edge("b", "c", 1.0);
    g.add_edge("c", "d", 1.0);
    g.add_edge("d", "e", 1.0);
    g.add_edge("d", "f", 1.0);
    g.add_edge("e", "f", 1.0);
    g.finalize();
    return g;
}

WeightedGraph complete_graph(int n) {
    WeightedGraph g;
    for (int i = 0; i < n; ++i) g.add_node("k" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge(static_cast<WeightedGraph::NodeId>(i),
                       static_cast<WeightedGraph::NodeId>(j), 1.0);
    g.finalize();
    return g;
}

} // namespace

TEST_CASE("nodes deduplicate and edges accumulate") {
    WeightedGraph g;
    auto a = g.add_node("a");
    auto b = g.add_node("b");
    CHECK(g.add_node("a") == a);
    CHECK(g.node_count() == 2);
    g.add_edge(a, b, 0.25);
    g.add_edge("b", "a", 0.5);  // same undirected edge, either direction
    CHECK(g.edge_count() == 1);
    CHECK(g.edge_weight(a, b) == doctest::Approx(0.75));
    CHECK(g.edge_weight(b, a) == doctest::Approx(0.75));
    CHECK(g.edge_weight(a, a) == 0.0);
    CHECK_THROWS_AS(g.add_edge(a, a, 1.0), Error);
    CHECK(g.node_name(b) == "b");
}

TEST_CASE("connected components label by first appearance") {
    WeightedGraph g;
    g.add_node("isolated1");
    g.add_node("isolated2");
    g.add_edge("x", "y", 1.0);
    g.add_edge("y", "z", 1.0);
    g.finalize();
    int count = 0;
    auto labels = g.connected_components(&count);
    CHECK(count == 3);
    CHECK(labels == std::vector<int>{0, 1, 2, 2, 2});
}

TEST_CASE("induced subgraph keeps mutual edges and node order") {
    WeightedGraph g = triangle_pair_with_bridge();
    WeightedGraph sub = g.induced_subgraph({"a", "b", "c", "e"});
    CHECK(sub.node_count() == 4);
    CHECK(sub.node_names() == std::vector<std::string>{"a", "b", "c", "e"});
    CHECK(sub.edge_count() == 3);  // the triangle; e lost both its edges
    CHECK(sub.edge_weight(*sub.node_id("a"), *sub.node_id("b")) == 1.0);
    CHECK(sub.edge_weight(*sub.node_id("c"), *sub.node_id("e")) == 0.0);
}

TEST_CASE("density follows the undirected simple-graph formula") {
    CHECK(complete_graph(4).density() == doctest::Approx(1.0));
    WeightedGraph g;
    g.add_node("lonely");
    CHECK(g.density() == 0.0);
    WeightedGraph sparse;
    for (const char* n : {"a", "b", "c", "d"}) sparse.add_node(n);
    sparse.add_edge("a", "b", 1.0);
    sparse.add_edge("c", "d", 1.0);
    CHECK(sparse.density() == doctest::Approx(2.0 * 2 / (4.0 * 3)));
}

TEST_CASE("average clustering matches hand-computed coefficients") {
    CHECK(complete_graph(4).average_clustering() == doctest::Approx(1.0));

    WeightedGraph star;
    for (const char* n : {"hub", "s1", "s2", "s3", "s4"}) star.add_node(n);
    for (const char* leaf : {"s1", "s2", "s3", "s4"}) star.add_edge("hub", leaf, 1.0);
    star.finalize();
    CHECK(star.average_clustering() == 0.0);

    WeightedGraph tp;  // triangle with a pendant hanging off one corner
    tp.add_edge("a", "b", 1.0);
    tp.add_edge("a", "c", 1.0);
    tp.add_edge("b", "c", 1.0);
    tp.add_edge("a", "d", 1.0);
    tp.finalize();
    CHECK(tp.average_clustering() == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("path metrics on a four-node path") {
    WeightedGraph g;
    g.add_edge("a", "b", 1.0);
    g.add_edge("b", "c", 1.0);
    g.add_edge("c", "d", 1.0);
    g.finalize();
    std::vector<WeightedGraph::NodeId> all = {0, 1, 2, 3};
    auto [avg, diameter] = g.path_metrics(all);
    CHECK(avg == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(diameter == 3.0);

    WeightedGraph split;
    split.add_edge("a", "b", 1.0);
    split.add_node("c");
    split.finalize();
    std::vector<WeightedGraph::NodeId> broken = {0, 1, 2};
    CHECK_THROWS_AS(split.path_metrics(broken), Error);
}

TEST_CASE("modularity of the natural two-triangle split is 5/14") {
    WeightedGraph g = triangle_pair_with_bridge();
    std::vector<int> split = {0, 0, 0, 1, 1, 1};
    CHECK(g.modularity(split) == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
    // one community always scores zero
    CHECK(g.modularity(std::vector<int>(6, 0)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(g.modularity({0, 1}), Error);
}

TEST_CASE("greedy agglomeration recovers planted communities") {
    WeightedGraph g = triangle_pair_with_bridge();
    auto labels = g.greedy_modularity_communities();
    CHECK(labels == std::vector<int>{0, 0, 0, 1, 1, 1});

    // a clique has no internal structure worth splitting
    auto merged = complete_graph(4).greedy_modularity_communities();
    CHECK(merged == std::vector<int>(4, 0));

    // no edges: every node stays its own community
    WeightedGraph loose;
    loose.add_node("a");
    loose.add_node("b");
    CHECK(loose.greedy_modularity_communities() == std::vector<int>{0, 1});
}

TEST_CASE("graphml carries node attributes and edge weights") {
    WeightedGraph g;
    g.add_edge("u<1>", "u2", 2.5);
    g.finalize();
    std::map<std::string, WeightedGraph::NodeAttrs> attrs;
    attrs["u<1>"].values["stance"] = "contrarian";
    std::string xml = g.to_graphml(attrs, {"stance"});
    CHECK(xml.find("<node id=\"u&lt;1&gt;\">") != std::string::npos);
    CHECK(xml.find("<data key=\"d0\">contrarian</data>") != std::string::npos);
    CHECK(xml.find("<node id=\"u2\"/>") != std::string::npos);  // no attrs, no data
    CHECK(xml.find("<data key=\"w\">2.5</data>") != std::string::npos);
    CHECK(xml.find("attr.name=\"stance\"") != std::string::npos);
}

TEST_CASE("dot output quotes names and lists undirected edges once") {
    WeightedGraph g;
    g.add_edge("a b", "c", 1.0);
    g.finalize();
    std::map<std::string, WeightedGraph::NodeAttrs> attrs;
    attrs["c"].values["coordinated"] = "1";
    std::string dot = g.to_dot(attrs, "net");
    CHECK(dot.find("graph net {") != std::string::npos);
    CHECK(dot.find("\"a b\" -- \"c\" [weight=1];") != std::string::npos);
    CHECK(dot.find("\"c\" [coordinated=\"1\"];") != std::string::npos);
    CHECK(dot.find("-- \"a b\"") == std::string::npos);
}
