#include <algorithm>

#include "bloxorz/reduction.hpp"
#include "stamps.hpp"

namespace blox {

using namespace detail;

namespace {

// Geometry. Lanes sit side by side on row kLaneRow; every junction and corner
// of the main construction is on the 3-lattice, the crossing chain of the
// forced modes on the lattice shifted by (1,1).
constexpr int kLaneRow = 6;
constexpr int kLaneStride = 69;
constexpr int kLaneX0 = 6;
constexpr int kHubRow = kLaneRow + kLadderBottom + 6;
constexpr int kGoalRow = kLaneRow + kLadderBottom + 3;
constexpr int kChainTop = 1;
constexpr int kChainBottom = 10;

int lane_x(int e) { return kLaneX0 + kLaneStride * e; }

// Slot order inside a copy: AND puts the weight-2 edge first.
std::vector<int> slot_order(const ncl::Graph& g, int w) {
    std::vector<int> inc = g.incident(w);
    if (g.vertices[w].kind == ncl::VertexKind::And)
        std::stable_sort(inc.begin(), inc.end(),
                         [&](int a, int b) { return g.edges[a].weight > g.edges[b].weight; });
    return inc;
}

}  // namespace

ReductionArtifact compile_ncl(const ncl::Graph& g, const ncl::Configuration& init, InitMode mode) {
    auto problems = ncl::validate_graph(g);
    if (!problems.empty()) throw GraphInvalid(problems.front());
    if (init.size() != g.edges.size()) throw GraphInvalid("configuration size does not match edge count");
    if (!ncl::is_legal(g, init)) throw GraphInvalid("initial configuration is illegal");

    const int ne = static_cast<int>(g.edges.size());
    const int nv = static_cast<int>(g.vertices.size());
    LevelBuilder b;

    auto initial = [&](bool wanted) {
        if (mode == InitMode::AllOpen) return true;
        if (mode == InitMode::AllClosed) return false;
        return wanted;
    };

    // slot[w][copy f][edge e] trapdoor ids
    std::vector<std::map<int, std::map<int, int>>> slot(nv);
    for (int w = 0; w < nv; ++w)
        for (int f : g.incident(w))
            for (int e : g.incident(w)) {
                int id = b.new_trapdoor_id();
                slot[w][f][e] = id;
                b.bind(id, "slot " + g.vertices[w].name + "@" + g.edges[f].name + " for " + g.edges[e].name);
            }

    const int t = g.target;
    const int goal_vertex = ncl::head(g, init, t);
    Cell goal{};
    int hub_right = 0;

    for (int e = 0; e < ne; ++e) {
        const ncl::Edge& ed = g.edges[e];
        const bool right = init[e];  // toward v, the right endpoint
        const int x = lane_x(e);
        LaneSpec s;
        s.origin = {x, kLaneRow};
        s.instance = "edge:" + ed.name;
        for (int i = 0; i < 3; ++i) {
            s.a[i] = b.new_trapdoor_id();
            s.b[i] = b.new_trapdoor_id();
            b.bind(s.a[i], "edge " + ed.name + " A" + std::to_string(i + 1));
            b.bind(s.b[i], "edge " + ed.name + " B" + std::to_string(i + 1));
        }
        s.a_open = initial(!right);
        s.b_open = initial(right);
        auto inc_u = g.incident(ed.u), inc_v = g.incident(ed.v);
        for (int i = 0; i < 3; ++i) {
            s.left[i] = slot[ed.u][inc_u[i]][e];
            s.right[i] = slot[ed.v][inc_v[i]][e];
        }
        for (int k = 0; k < 6; ++k) {
            bool lane_closed = k < 3 ? right : !right;  // A closed iff toward v, B closed iff toward u
            if (mode == InitMode::AllOpen) s.lane_first[k] = lane_closed;
            if (mode == InitMode::AllClosed) s.lane_first[k] = !lane_closed;
        }
        stamp_lane(b, s);

        for (int side = 0; side < 2; ++side) {
            const int w = side == 0 ? ed.u : ed.v;
            CopySpec c;
            c.corner = {side == 0 ? x : x + kLaneLen - 1, kLaneRow};
            c.dir = side == 0 ? -1 : 1;
            c.kind = g.vertices[w].kind == ncl::VertexKind::Or ? CopyKind::Or : CopyKind::And;
            c.instance = "vertex:" + g.vertices[w].name + "@" + ed.name;
            auto order = slot_order(g, w);
            for (int j = 0; j < 3; ++j) {
                int f = order[j];
                c.slot[j] = slot[w][e][f];
                c.open[j] = initial(ncl::head(g, init, f) != w);
                c.slot_role[j] = "gate:" + g.edges[f].name;
            }
            const bool to_goal = e == t && w == goal_vertex;
            c.exit_len = to_goal ? 2 : 6;
            Cell bottom = stamp_copy(b, c);
            if (to_goal) {
                goal = {bottom.x, kGoalRow};
                b.put(goal, Tile{TileType::Goal, 0}, {c.instance, "goal"});
            } else {
                hub_right = std::max(hub_right, bottom.x);
            }
        }
    }

    Cell start{0, kHubRow};
    if (mode != InitMode::Free) {
        // Crossing chain: a single path that crosses every lane switch pair
        // once, lying across the lane, so it presses exactly one switch of the
        // pair. Each trapdoor that must differ from the uniform initial state
        // is toggled exactly once.
        start = {lane_x(0) + 4, kChainTop};
        Cell at = start;
        for (int e = 0; e < ne; ++e) {
            const Provenance p{"force:" + g.edges[e].name, "corridor"};
            for (int k = 0; k < 6; ++k) {
                int f = lane_x(e) + kPair[k], n = lane_x(e) + kPlainPair[k];
                b.line(at, {f, kChainTop}, p);
                b.line({f, kChainTop}, {f, kLaneRow - 3}, p);
                // single-use cells on both sides: the pair cannot be pressed,
                // left and pressed again
                b.put({f, kLaneRow - 2}, Tile{TileType::Fragile, 0}, {p.instance, "guard"});
                b.normal({f, kLaneRow - 1}, p);
                b.put({f, kLaneRow + 1}, Tile{TileType::Fragile, 0}, {p.instance, "guard"});
                b.line({f, kLaneRow + 2}, {f, kChainBottom}, p);
                b.line({f, kChainBottom}, {n, kChainBottom}, p);
                b.line({n, kChainBottom}, {n, kChainTop}, {p.instance, "return"});
                at = {n, kChainTop};
            }
        }
        // drop to the hub through a 3x3 room that resets the phase
        const int cx = lane_x(ne - 1) + 64;
        const Provenance p{"force", "corridor"};
        b.line(at, {cx, kChainTop}, p);
        b.line({cx, kChainTop}, {cx, kHubRow - 3}, p);
        for (int y = kHubRow - 2; y <= kHubRow; ++y)
            for (int xx = cx - 1; xx <= cx + 1; ++xx) b.normal({xx, y}, {"force", "room"});
        hub_right = std::max(hub_right, cx - 2);
    }
    b.line({0, kHubRow}, {hub_right, kHubRow}, {"hub", "corridor"});

    return b.finish(start, goal, Variant::Block112);
}

}  // namespace blox
