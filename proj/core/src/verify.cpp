#include <algorithm>
#include <map>
#include <sstream>

#include "bloxorz/reduction.hpp"
#include "bloxorz/solver.hpp"

namespace blox {

namespace {

std::string moves_text(const std::vector<Direction>& m) {
    std::string r;
    for (auto d : m) r += std::string(r.empty() ? "" : " ") + direction_name(d);
    return r.empty() ? "(none)" : r;
}

std::string slots_text(const SlotState& s) {
    std::string r;
    for (auto& [k, v] : s) r += k + "=" + (v ? "open " : "closed ");
    if (!r.empty()) r.pop_back();
    return r;
}

// arrival poses must rest on solid tiles
bool supported(const Level& lv, const BlockPose& pose) {
    for (Cell c : occupied_cells(pose)) {
        auto it = lv.tiles.find(c);
        if (it == lv.tiles.end()) return false;
        if (it->second.type == TileType::Trapdoor && lv.trapdoor_open.at(it->second.id)) return false;
    }
    return true;
}

// Local search from one arrival pose. Small state spaces, so a map keyed by
// the packed words is plenty.
struct Explorer {
    const Board& board;
    StateCodec codec;
    std::vector<GameState> states;
    std::vector<std::pair<int, Direction>> parent;
    std::map<std::vector<uint64_t>, int> seen;

    explicit Explorer(const Board& b) : board(b), codec(b) {}

    int add(const GameState& s, int from, Direction d) {
        std::vector<uint64_t> key(codec.words());
        codec.encode(s, key.data());
        auto [it, fresh] = seen.emplace(std::move(key), static_cast<int>(states.size()));
        if (!fresh) return -1;
        states.push_back(s);
        parent.emplace_back(from, d);
        return it->second;
    }

    std::vector<Direction> path(int i) const {
        std::vector<Direction> r;
        for (; parent[i].first >= 0; i = parent[i].first) r.push_back(parent[i].second);
        std::reverse(r.begin(), r.end());
        return r;
    }
};

}  // namespace

GadgetReport verify_gadget(const GadgetTemplate& t, const GadgetContract& c) {
    GadgetReport rep;
    rep.gadget = t.name + " vs " + c.name;
    std::map<Cell, std::string> port_at;
    for (auto& [name, p] : t.ports) port_at[p.cell] = name;

    for (const GadgetCase& k : c.cases) {
        CaseVerdict v;
        v.name = k.name;
        std::ostringstream out;
        auto fail = [&](const std::string& why) {
            v.pass = false;
            out << "  FAIL " << why << "\n";
        };

        Level lv = t.level;
        bool setup_ok = true;
        for (auto& [role, open] : k.initial) {
            auto it = t.slots.find(role);
            if (it == t.slots.end()) {
                fail("unknown slot role " + role);
                setup_ok = false;
                continue;
            }
            lv.trapdoor_open[it->second] = open;
        }
        auto entry = t.ports.find(k.entry);
        if (entry == t.ports.end()) {
            fail("unknown entry port " + k.entry);
            setup_ok = false;
        }
        if (!setup_ok) {
            v.detail = out.str();
            rep.pass = false;
            rep.cases.push_back(std::move(v));
            continue;
        }

        Board board(lv);
        auto slot_state = [&](const GameState& s) {
            SlotState r;
            for (auto& [role, id] : t.slots) r[role] = s.trap_open.get(board.trapdoor_index(id));
            return r;
        };

        std::map<std::string, bool> reached;
        bool first_arrival = true;
        for (const BlockPose& pose : entry->second.arrivals) {
            GameState s0 = board.initial_state();
            s0.pose = pose;
            if (!supported(lv, pose)) continue;
            Explorer ex(board);
            ex.add(s0, -1, Direction::Up);
            for (size_t i = 0; i < ex.states.size(); ++i) {
                const GameState s = ex.states[i];
                if (s.pose.kind == PoseKind::Standing) {
                    auto p = port_at.find(s.pose.anchor);
                    if (p != port_at.end()) {
                        // the must-reach verdict is taken from the canonical (first) arrival
                        if (first_arrival || !k.reach.count(p->second) || !k.reach.at(p->second))
                            reached[p->second] = true;
                        if (k.at_port && !k.at_port(p->second, slot_state(s)) && v.pass) {
                            fail("invariant broken at port " + p->second + " [" + slots_text(slot_state(s)) + "]");
                            v.counterexample = ex.path(static_cast<int>(i));
                            v.entry_pose = pose;
                        }
                        auto want = k.reach.find(p->second);
                        if (want != k.reach.end() && !want->second && v.pass) {
                            fail("port " + p->second + " reachable but must not be");
                            v.counterexample = ex.path(static_cast<int>(i));
                            v.entry_pose = pose;
                        }
                    }
                }
                for (auto& [d, n] : board.legal_moves(s)) ex.add(n, static_cast<int>(i), d);
            }
            v.states += ex.states.size();
            first_arrival = false;
        }
        for (auto& [port, must] : k.reach) {
            bool got = reached.count(port) && reached[port];
            out << "  " << port << ": " << (got ? "reachable" : "unreachable") << " (expected "
                << (must ? "reachable" : "unreachable") << ")\n";
            if (must && !got) fail("port " + port + " unreachable but must be");
        }
        if (k.at_port) out << "  invariant: " << k.at_port_text << "\n";

        if (!k.stuck_script.empty()) {
            GameState s = board.initial_state();
            s.pose = BlockPose{PoseKind::Standing, entry->second.cell};
            bool ok = true;
            for (size_t i = 0; i < k.stuck_script.size() && ok; ++i) {
                MoveOutcome m = board.apply_move(s, k.stuck_script[i]);
                if (!m.ok()) {
                    fail("script move " + std::to_string(i) + " illegal");
                    ok = false;
                } else {
                    s = *m.state;
                }
            }
            if (ok) {
                auto next = board.legal_moves(s);
                out << "  script " << moves_text(k.stuck_script) << " -> " << next.size() << " legal moves\n";
                if (!next.empty()) fail("script does not end stuck");
            }
        }
        out << "  explored " << v.states << " states\n";
        v.detail = out.str();
        rep.pass = rep.pass && v.pass;
        rep.cases.push_back(std::move(v));
    }
    return rep;
}

std::string GadgetReport::text() const {
    std::ostringstream o;
    o << (pass ? "PASS " : "FAIL ") << gadget << "\n";
    for (auto& c : cases) {
        o << " " << (c.pass ? "ok   " : "FAIL ") << c.name << "\n" << c.detail;
        if (!c.pass && c.entry_pose)
            o << "  counterexample from " << pose_string(*c.entry_pose) << ": " << moves_text(c.counterexample) << "\n";
    }
    return o.str();
}

const char* mode_name(InitMode m) {
    switch (m) {
        case InitMode::Free: return "free";
        case InitMode::AllOpen: return "all-open";
        case InitMode::AllClosed: return "all-closed";
    }
    return "?";
}

std::optional<InitMode> parse_mode(const std::string& s) {
    for (InitMode m : {InitMode::Free, InitMode::AllOpen, InitMode::AllClosed})
        if (s == mode_name(m)) return m;
    return std::nullopt;
}

ReductionReport verify_reduction(const ncl::Graph& g, const ncl::Configuration& init, InitMode mode,
                                 uint64_t budget) {
    ReductionReport r;
    auto nr = ncl::reachable_reversal(g, init);
    r.ncl_reachable = std::holds_alternative<std::vector<int>>(nr);
    ReductionArtifact a = compile_ncl(g, init, mode);
    BfsOptions opt;
    opt.budget = budget;
    BfsResult b = bfs_solve(a.level, opt);
    r.states = b.explored;
    switch (b.status) {
        case SolveStatus::Solved: r.level_verdict = "solvable"; break;
        case SolveStatus::Unsolvable: r.level_verdict = "unsolvable"; break;
        case SolveStatus::BudgetExceeded: r.level_verdict = "budget"; break;
    }
    r.pass = b.status != SolveStatus::BudgetExceeded && (b.status == SolveStatus::Solved) == r.ncl_reachable;
    return r;
}

std::string ReductionReport::text() const {
    std::ostringstream o;
    o << (pass ? "PASS" : "FAIL") << ": ncl " << (ncl_reachable ? "reachable" : "unreachable") << ", level "
      << level_verdict << " (" << states << " states)\n";
    return o.str();
}

}  // namespace blox
