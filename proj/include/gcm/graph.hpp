#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gcm/numeric.hpp"

namespace gcm {

/// Finite simple labelled graph. Vertices are dense 0-indexed integers and
/// the edge list is kept sorted with u < v, so equal graphs compare equal
/// and serialize identically.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t vertex_count, std::vector<std::pair<int, int>> edges);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int u, int v) const;

    bool operator==(const Graph&) const = default;

    std::string to_json() const;
    static Graph from_json(const std::string& text);

private:
    std::size_t vertex_count_ = 0;
    std::vector<std::pair<int, int>> edges_;  // sorted, u < v
};

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph paw_graph();     // triangle with a pendant edge
Graph wheel5_graph();  // C5 plus a dominating vertex
Graph disjoint_union(const std::vector<Graph>& parts);

/// Connected components, each relabelled from 0, ordered by smallest
/// original vertex.
std::vector<Graph> components(const Graph& g);

/// Least k admitting a proper k-colouring. Branch and bound with a greedy
/// clique lower bound; refuses graphs with more than 12 vertices.
int chromatic_number(const Graph& g);

/// Tree pattern for gluing triangles: each tree vertex carries a subset of
/// the triangle's vertex set {0,1,2}, each tree edge a proper subset of the
/// intersection of its endpoints' labels.
struct K3Tree {
    Graph tree;
    std::vector<std::vector<int>> vertex_labels;            // per tree vertex
    std::map<std::pair<int, int>, std::vector<int>> edge_labels;  // key u < v

    void validate() const;

    // v_j / e_j: number of tree vertices/edges whose label has size j.
    int v_count(int j) const;
    int e_count(int j) const;

    std::string to_json() const;
    static K3Tree from_json(const std::string& text);
};

/// The glued graph H(T,phi): one triangle piece per tree vertex, identified
/// along shared labels of tree edges.
Graph realize_k3_tree(const K3Tree& t);

/// Correlation record (J, k, l) for a graph H with e(H) = k*e(J) + l.
struct CorrelationRecord {
    Graph base_graph;
    double power = 0;          // k
    double edge_exponent = 0;  // l
    Graph subject;

    void validate() const;  // checks e(H) = k*e(J) + l
};

/// Lemma-style record for a realized K3-tree: (K3, v3, -(e2 - v2)).
CorrelationRecord k3_tree_correlation(const K3Tree& t);

}  // namespace gcm
