#include "bloxorz/ncl.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace blox::ncl {

int Graph::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].name == name) return static_cast<int>(i);
    return -1;
}

int Graph::edge_index(const std::string& name) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<int> Graph::incident(int v) const {
    std::vector<int> r;
    for (size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].u == v) r.push_back(static_cast<int>(i));
        if (edges[i].v == v) r.push_back(static_cast<int>(i));
    }
    return r;
}

std::vector<std::string> validate_graph(const Graph& g) {
    std::vector<std::string> out;
    const int nv = static_cast<int>(g.vertices.size());
    for (const Edge& e : g.edges) {
        if (e.u < 0 || e.u >= nv || e.v < 0 || e.v >= nv) {
            out.push_back("edge " + e.name + " has a missing endpoint");
            continue;
        }
        if (e.u == e.v) out.push_back("edge " + e.name + " is a self-loop");
        if (e.weight != 1 && e.weight != 2) out.push_back("edge " + e.name + " has weight outside {1,2}");
    }
    if (!out.empty()) return out;
    for (int v = 0; v < nv; ++v) {
        auto inc = g.incident(v);
        const auto& name = g.vertices[v].name;
        if (inc.size() != 3) {
            out.push_back("vertex " + name + " has degree " + std::to_string(inc.size()));
            continue;
        }
        std::vector<int> w;
        for (int e : inc) w.push_back(g.edges[e].weight);
        std::sort(w.begin(), w.end());
        if (g.vertices[v].kind == VertexKind::Or && w != std::vector<int>{2, 2, 2})
            out.push_back("OR vertex " + name + " needs incident weights {2,2,2}");
        if (g.vertices[v].kind == VertexKind::And && w != std::vector<int>{1, 1, 2})
            out.push_back("AND vertex " + name + " needs incident weights {1,1,2}");
    }
    if (g.target < 0 || g.target >= static_cast<int>(g.edges.size())) out.push_back("target edge missing");
    return out;
}

int inflow(const Graph& g, const Configuration& c, int vertex) {
    int s = 0;
    for (size_t e = 0; e < g.edges.size(); ++e)
        if (head(g, c, static_cast<int>(e)) == vertex) s += g.edges[e].weight;
    return s;
}

bool is_legal(const Graph& g, const Configuration& c) {
    for (size_t v = 0; v < g.vertices.size(); ++v)
        if (inflow(g, c, static_cast<int>(v)) < 2) return false;
    return true;
}

std::variant<Configuration, IllegalReversal> reverse(const Graph& g, const Configuration& c, int edge) {
    Configuration n = c;
    n[edge] = !n[edge];
    // only the vertex losing the edge can drop below the minimum
    int loser = head(g, c, edge);
    if (inflow(g, n, loser) < 2) return IllegalReversal{loser};
    return n;
}

namespace {
uint64_t pack(const Configuration& c) {
    uint64_t k = 0;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) k |= uint64_t{1} << i;
    return k;
}
}  // namespace

ReversalResult reachable_reversal(const Graph& g, const Configuration& init) {
    if (!is_legal(g, init)) return InitialConfigIllegal{};
    const int t = g.target;
    std::unordered_map<uint64_t, std::pair<uint64_t, int>> parent;  // key -> (prev key, edge)
    std::deque<Configuration> q{init};
    const uint64_t k0 = pack(init);
    parent[k0] = {k0, -1};
    while (!q.empty()) {
        Configuration c = std::move(q.front());
        q.pop_front();
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            auto r = reverse(g, c, e);
            if (!std::holds_alternative<Configuration>(r)) continue;
            auto& n = std::get<Configuration>(r);
            const uint64_t kn = pack(n);
            if (parent.count(kn)) continue;
            parent[kn] = {pack(c), e};
            if (n[t] != init[t]) {
                std::vector<int> w;
                for (uint64_t k = kn; k != k0; k = parent[k].first) w.push_back(parent[k].second);
                std::reverse(w.begin(), w.end());
                return w;
            }
            q.push_back(std::move(n));
        }
    }
    return Unreachable{};
}

Graph or_or_graph() {
    Graph g;
    g.vertices = {{"A", VertexKind::Or}, {"B", VertexKind::Or}};
    g.edges = {{"e1", 0, 1, 2}, {"e2", 0, 1, 2}, {"e3", 0, 1, 2}};
    g.target = 0;
    return g;
}

Graph and_and_graph() {
    Graph g;
    g.vertices = {{"X", VertexKind::And}, {"Y", VertexKind::And}};
    g.edges = {{"e2", 0, 1, 2}, {"e1a", 0, 1, 1}, {"e1b", 0, 1, 1}};
    g.target = 0;
    return g;
}

}  // namespace blox::ncl
