// Polynomial decision procedure for the cube variant without single-use tiles.
// Grow the set of closed trapdoors one at a time; every switch crossed on the
// way to a target is pressed twice so its trapdoor keeps its state.
#include <algorithm>
#include <deque>
#include <map>

#include "bloxorz/solver.hpp"

namespace blox {

namespace {

struct Walker {
    const Board& board;
    const Level& level;
    GameState state;
    std::vector<Direction> moves;

    bool passable(Cell c) const {
        auto it = level.tiles.find(c);
        if (it == level.tiles.end()) return false;
        if (it->second.type == TileType::Trapdoor) {
            int i = board.trapdoor_index(it->second.id);
            return i >= 0 && !state.trap_open.get(i);
        }
        return true;
    }

    // BFS over cells; returns parent map restricted to the reachable set
    std::map<Cell, std::pair<Cell, Direction>> reach() const {
        std::map<Cell, std::pair<Cell, Direction>> par;
        Cell s = state.pose.anchor;
        par[s] = {s, Direction::Up};
        std::deque<Cell> q{s};
        while (!q.empty()) {
            Cell c = q.front();
            q.pop_front();
            for (Direction d : kDirections) {
                Cell n = step(c, d);
                if (par.count(n) || !passable(n)) continue;
                par[n] = {c, d};
                q.push_back(n);
            }
        }
        return par;
    }

    bool move(Direction d) {
        auto o = board.apply_move(state, d);
        if (!o.ok()) return false;
        state = std::move(*o.state);
        moves.push_back(d);
        return true;
    }

    bool is_switch(Cell c) const {
        auto it = level.tiles.find(c);
        return it != level.tiles.end() && it->second.type == TileType::Switch;
    }

    bool is_plain(Cell c) const { return passable(c) && !is_switch(c); }

    // the block stands on a switch it pressed once; press it again
    bool restore(Direction fwd) {
        GameState save = state;
        size_t mark = moves.size();
        for (Direction d : kDirections) {
            if (!is_plain(step(state.pose.anchor, d))) continue;
            if (move(d) && move(opposite(d))) return true;
            state = save;
            moves.resize(mark);
        }
        if (move(fwd) && move(opposite(fwd))) return true;
        state = save;
        moves.resize(mark);
        return false;
    }

    // walk along the BFS tree to target, restoring every intermediate switch
    bool walk(const std::map<Cell, std::pair<Cell, Direction>>& par, Cell target) {
        std::vector<Direction> path;
        for (Cell c = target; c != state.pose.anchor; c = par.at(c).first) path.push_back(par.at(c).second);
        std::reverse(path.begin(), path.end());
        for (size_t i = 0; i < path.size(); ++i) {
            if (!move(path[i])) return false;
            if (i + 1 == path.size() || !is_switch(state.pose.anchor)) continue;
            // bounce off a plain neighbour, else step forward and back (the
            // forward cell is never the toggled trapdoor when bouncing fails)
            if (!restore(path[i + 1])) return false;
        }
        return true;
    }
};

}  // namespace

ClosureResult cube_closure_solve(const Level& level) {
    ClosureResult r;
    if (level.variant != Variant::Cube111) {
        r.error = ClosureError::VariantMismatch;
        return r;
    }
    for (auto& [c, t] : level.tiles)
        if (t.type == TileType::Fragile) {
            r.error = ClosureError::FragilePresent;
            return r;
        }

    const Board board(level);
    Walker w{board, level, board.initial_state(), {}};
    std::map<int, Cell> switch_of;
    for (auto& [c, t] : level.tiles)
        if (t.type == TileType::Switch) switch_of.emplace(t.id, c);

    for (;;) {
        ++r.iterations;
        auto par = w.reach();
        r.reach_sizes.push_back(par.size());
        if (par.count(level.goal)) {
            if (!w.walk(par, level.goal)) return r;
            r.solution = Solution{w.moves, w.state};
            return r;
        }
        // lowest-id open trapdoor whose switch we can stand on
        std::optional<Cell> pick;
        for (size_t i = 0; i < board.trapdoor_count() && !pick; ++i) {
            if (!w.state.trap_open.get(i)) continue;
            auto it = switch_of.find(board.trapdoor_id(i));
            if (it != switch_of.end() && par.count(it->second)) pick = it->second;
        }
        if (!pick) return r;
        if (*pick == w.state.pose.anchor) {
            // already on it: step off and back on
            bool pressed = false;
            for (Direction d : kDirections) {
                if (w.is_plain(step(*pick, d)) && w.move(d) && w.move(opposite(d))) {
                    pressed = true;
                    break;
                }
            }
            if (!pressed) return r;
        } else if (!w.walk(par, *pick)) {
            return r;
        }
    }
}

}  // namespace blox
