#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace blox::ncl {

enum class VertexKind { And, Or };

struct Vertex {
    std::string name;
    VertexKind kind = VertexKind::Or;
};

struct Edge {
    std::string name;
    int u = 0, v = 0;  // vertex indices
    int weight = 2;
};

struct Graph {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    int target = 0;  // edge index

    int vertex_index(const std::string& name) const;  // -1 if missing
    int edge_index(const std::string& name) const;
    // incident edge indices of v in edge order (a parallel edge appears once per endpoint)
    std::vector<int> incident(int v) const;
};

// true = edge points toward its v endpoint, false = toward u
using Configuration = std::vector<bool>;

inline int head(const Graph& g, const Configuration& c, int e) {
    return c[e] ? g.edges[e].v : g.edges[e].u;
}

std::vector<std::string> validate_graph(const Graph& g);
int inflow(const Graph& g, const Configuration& c, int vertex);
bool is_legal(const Graph& g, const Configuration& c);

struct IllegalReversal {
    int vertex;
};
std::variant<Configuration, IllegalReversal> reverse(const Graph& g, const Configuration& c, int edge);

struct Unreachable {};
struct InitialConfigIllegal {};
using ReversalResult = std::variant<std::vector<int>, Unreachable, InitialConfigIllegal>;

// Shortest sequence of legal reversals after which the target edge differs
// from its initial orientation.
ReversalResult reachable_reversal(const Graph& g, const Configuration& init);

// Fixtures used by tests, docs and the acceptance suite.
Graph or_or_graph();    // A,B joined by three weight-2 edges e1,e2,e3
Graph and_and_graph();  // X,Y joined by e2 (weight 2), e1a, e1b (weight 1)

}  // namespace blox::ncl
