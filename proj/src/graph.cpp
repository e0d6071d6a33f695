#include "gcm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gcm {

using nlohmann::json;

Graph::Graph(std::size_t vertex_count, std::vector<std::pair<int, int>> edges)
    : vertex_count_(vertex_count) {
    for (auto& [u, v] : edges) {
        if (u == v) throw domain_error("graph: self-loop");
        if (u > v) std::swap(u, v);
        if (u < 0 || static_cast<std::size_t>(v) >= vertex_count)
            throw domain_error("graph: endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw domain_error("graph: duplicate edge");
    edges_ = std::move(edges);
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

std::string Graph::to_json() const {
    json j;
    j["vertices"] = vertex_count_;
    j["edges"] = json::array();
    for (auto& [u, v] : edges_) j["edges"].push_back({u, v});
    return j.dump();
}

Graph Graph::from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<std::pair<int, int>> edges;
    for (auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Graph(j.at("vertices").get<std::size_t>(), std::move(edges));
}

Graph complete_graph(std::size_t n) {
    if (n < 1) throw domain_error("complete_graph: n >= 1 required");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw domain_error("cycle_graph: n >= 3 required");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t u = 0; u < n; ++u)
        edges.emplace_back(static_cast<int>(u), static_cast<int>((u + 1) % n));
    return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
    if (n < 1) throw domain_error("path_graph: n >= 1 required");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t u = 0; u + 1 < n; ++u)
        edges.emplace_back(static_cast<int>(u), static_cast<int>(u + 1));
    return Graph(n, std::move(edges));
}

Graph paw_graph() {
    return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
}

Graph wheel5_graph() {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < 5; ++u) {
        edges.emplace_back(u, (u + 1) % 5);
        edges.emplace_back(u, 5);
    }
    return Graph(6, std::move(edges));
}

Graph disjoint_union(const std::vector<Graph>& parts) {
    std::size_t n = 0;
    std::vector<std::pair<int, int>> edges;
    for (const auto& g : parts) {
        for (auto [u, v] : g.edges())
            edges.emplace_back(u + static_cast<int>(n), v + static_cast<int>(n));
        n += g.vertex_count();
    }
    return Graph(n, std::move(edges));
}

std::vector<Graph> components(const Graph& g) {
    std::size_t n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    int ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = ncomp;
        std::vector<int> stack{static_cast<int>(s)};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (comp[v] == -1) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    // relabel each component from 0, keeping original vertex order
    std::vector<std::vector<int>> members(ncomp);
    std::vector<int> local(n);
    for (std::size_t v = 0; v < n; ++v) {
        local[v] = static_cast<int>(members[comp[v]].size());
        members[comp[v]].push_back(static_cast<int>(v));
    }
    std::vector<std::vector<std::pair<int, int>>> comp_edges(ncomp);
    for (auto [u, v] : g.edges())
        comp_edges[comp[u]].emplace_back(local[u], local[v]);
    std::vector<Graph> out;
    out.reserve(ncomp);
    for (int c = 0; c < ncomp; ++c)
        out.emplace_back(members[c].size(), std::move(comp_edges[c]));
    return out;
}

namespace {

bool colourable(const Graph& g, int k) {
    std::size_t n = g.vertex_count();
    std::vector<int> colour(n, -1);
    // order vertices by degree, descending
    std::vector<int> deg(n, 0);
    for (auto [u, v] : g.edges()) {
        ++deg[u];
        ++deg[v];
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return deg[a] > deg[b]; });

    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == n) return true;
        int v = order[idx];
        int used_max = 0;
        for (std::size_t j = 0; j < idx; ++j)
            used_max = std::max(used_max, colour[order[j]] + 1);
        // symmetry breaking: at most one previously unused colour
        int limit = std::min(k, used_max + 1);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            for (auto [a, b] : g.edges()) {
                int other = -1;
                if (a == v) other = b;
                else if (b == v) other = a;
                if (other != -1 && colour[other] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            colour[v] = c;
            if (self(self, idx + 1)) return true;
            colour[v] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

int greedy_clique_lower_bound(const Graph& g) {
    std::size_t n = g.vertex_count();
    int best = n > 0 ? 1 : 0;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<int> clique{static_cast<int>(s)};
        for (std::size_t v = 0; v < n; ++v) {
            if (v == s) continue;
            bool all = true;
            for (int u : clique)
                if (!g.has_edge(u, static_cast<int>(v))) {
                    all = false;
                    break;
                }
            if (all) clique.push_back(static_cast<int>(v));
        }
        best = std::max<int>(best, static_cast<int>(clique.size()));
    }
    return best;
}

}  // namespace

int chromatic_number(const Graph& g) {
    if (g.vertex_count() > 12)
        throw domain_error("chromatic_number: vertex cap (12) exceeded");
    if (g.vertex_count() == 0) return 0;
    if (g.edge_count() == 0) return 1;
    for (int k = greedy_clique_lower_bound(g);; ++k)
        if (colourable(g, k)) return k;
}

void K3Tree::validate() const {
    if (vertex_labels.size() != tree.vertex_count())
        throw domain_error("k3tree: label count mismatch");
    if (tree.vertex_count() > 0 && tree.edge_count() + 1 != tree.vertex_count())
        throw domain_error("k3tree: not a tree (edge count)");
    if (components(tree).size() > 1)
        throw domain_error("k3tree: tree not connected");
    auto is_label_set = [](const std::vector<int>& s) {
        std::set<int> seen(s.begin(), s.end());
        if (seen.size() != s.size()) return false;
        for (int v : s)
            if (v < 0 || v > 2) return false;
        return true;
    };
    for (const auto& s : vertex_labels)
        if (!is_label_set(s)) throw domain_error("k3tree: bad vertex label");
    if (edge_labels.size() != tree.edge_count())
        throw domain_error("k3tree: edge label count mismatch");
    for (auto& [e, lab] : edge_labels) {
        auto [s, t] = e;
        if (!tree.has_edge(s, t)) throw domain_error("k3tree: label on non-edge");
        if (!is_label_set(lab)) throw domain_error("k3tree: bad edge label");
        std::set<int> inter;
        std::set<int> ls(vertex_labels[s].begin(), vertex_labels[s].end());
        for (int v : vertex_labels[t])
            if (ls.count(v)) inter.insert(v);
        // proper subset of the endpoint intersection
        for (int v : lab)
            if (!inter.count(v)) throw domain_error("k3tree: edge label not in intersection");
        if (lab.size() >= inter.size())
            throw domain_error("k3tree: edge label must be a proper subset");
    }
}

int K3Tree::v_count(int j) const {
    int c = 0;
    for (const auto& s : vertex_labels)
        if (static_cast<int>(s.size()) == j) ++c;
    return c;
}

int K3Tree::e_count(int j) const {
    int c = 0;
    for (const auto& [e, lab] : edge_labels)
        if (static_cast<int>(lab.size()) == j) ++c;
    return c;
}

std::string K3Tree::to_json() const {
    json j;
    j["tree_edges"] = json::array();
    for (auto& [u, v] : tree.edges()) j["tree_edges"].push_back({u, v});
    json vl = json::object();
    for (std::size_t t = 0; t < vertex_labels.size(); ++t)
        vl[std::to_string(t)] = vertex_labels[t];
    j["vertex_labels"] = vl;
    json el = json::object();
    for (auto& [e, lab] : edge_labels)
        el[std::to_string(e.first) + "-" + std::to_string(e.second)] = lab;
    j["edge_labels"] = el;
    return j.dump();
}

K3Tree K3Tree::from_json(const std::string& text) {
    json j = json::parse(text);
    K3Tree t;
    std::vector<std::pair<int, int>> tedges;
    for (auto& e : j.at("tree_edges"))
        tedges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    std::size_t n = j.at("vertex_labels").size();
    t.tree = Graph(n, std::move(tedges));
    t.vertex_labels.resize(n);
    for (auto& [key, val] : j.at("vertex_labels").items())
        t.vertex_labels.at(std::stoul(key)) = val.get<std::vector<int>>();
    for (auto& [key, val] : j.at("edge_labels").items()) {
        auto dash = key.find('-');
        int u = std::stoi(key.substr(0, dash));
        int v = std::stoi(key.substr(dash + 1));
        if (u > v) std::swap(u, v);
        t.edge_labels[{u, v}] = val.get<std::vector<int>>();
    }
    t.validate();
    return t;
}

Graph realize_k3_tree(const K3Tree& t) {
    t.validate();
    std::size_t nt = t.tree.vertex_count();
    // one slot per (tree vertex, triangle label); union-find merges along
    // the tree edges' shared labels
    std::map<std::pair<int, int>, int> slot;
    int nslots = 0;
    for (std::size_t tv = 0; tv < nt; ++tv)
        for (int lab : t.vertex_labels[tv])
            slot[{static_cast<int>(tv), lab}] = nslots++;

    std::vector<int> parent(nslots);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (auto& [e, lab] : t.edge_labels)
        for (int w : lab) {
            int a = find(slot.at({e.first, w}));
            int b = find(slot.at({e.second, w}));
            if (a != b) parent[a] = b;
        }

    // dense-relabel the classes in first-appearance order
    std::map<int, int> cls;
    for (int s = 0; s < nslots; ++s) {
        int r = find(s);
        if (!cls.count(r)) cls[r] = static_cast<int>(cls.size());
    }
    std::set<std::pair<int, int>> edges;
    for (std::size_t tv = 0; tv < nt; ++tv) {
        const auto& labs = t.vertex_labels[tv];
        for (std::size_t i = 0; i < labs.size(); ++i)
            for (std::size_t j = i + 1; j < labs.size(); ++j) {
                int a = cls[find(slot.at({static_cast<int>(tv), labs[i]}))];
                int b = cls[find(slot.at({static_cast<int>(tv), labs[j]}))];
                if (a == b) throw domain_error("k3tree: gluing collapses an edge");
                edges.insert({std::min(a, b), std::max(a, b)});
            }
    }
    return Graph(cls.size(), {edges.begin(), edges.end()});
}

void CorrelationRecord::validate() const {
    if (power == 0) throw domain_error("correlation: k must be nonzero");
    double expect = power * static_cast<double>(base_graph.edge_count()) + edge_exponent;
    if (std::abs(expect - static_cast<double>(subject.edge_count())) > 1e-9)
        throw domain_error("correlation: e(H) != k*e(J) + l");
}

CorrelationRecord k3_tree_correlation(const K3Tree& t) {
    Graph h = realize_k3_tree(t);
    int k = t.v_count(3);
    int gamma = t.e_count(2) - t.v_count(2);
    CorrelationRecord rec{complete_graph(3), static_cast<double>(k),
                          static_cast<double>(-gamma), h};
    rec.validate();  // e(H) = 3k - gamma or the gluing is buggy
    return rec;
}

}  // namespace gcm
