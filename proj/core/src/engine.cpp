#include "bloxorz/engine.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <set>

namespace blox {

Direction opposite(Direction d) {
    switch (d) {
        case Direction::Up: return Direction::Down;
        case Direction::Down: return Direction::Up;
        case Direction::Left: return Direction::Right;
        case Direction::Right: return Direction::Left;
    }
    return d;
}

Cell step(Cell c, Direction d, int n) {
    switch (d) {
        case Direction::Up: return {c.x, c.y - n};
        case Direction::Down: return {c.x, c.y + n};
        case Direction::Left: return {c.x - n, c.y};
        case Direction::Right: return {c.x + n, c.y};
    }
    return c;
}

const char* direction_name(Direction d) {
    switch (d) {
        case Direction::Up: return "Up";
        case Direction::Down: return "Down";
        case Direction::Left: return "Left";
        case Direction::Right: return "Right";
    }
    return "?";
}

std::optional<Direction> parse_direction(const std::string& s) {
    std::string t;
    for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "up" || t == "u") return Direction::Up;
    if (t == "down" || t == "d") return Direction::Down;
    if (t == "left" || t == "l") return Direction::Left;
    if (t == "right" || t == "r") return Direction::Right;
    return std::nullopt;
}

const char* move_error_name(MoveError::Kind k) {
    switch (k) {
        case MoveError::Kind::Unsupported: return "Unsupported";
        case MoveError::Kind::OpenTrapdoor: return "OpenTrapdoor";
        case MoveError::Kind::ConsumedTile: return "ConsumedTile";
    }
    return "?";
}

std::vector<Cell> occupied_cells(const BlockPose& p) {
    switch (p.kind) {
        case PoseKind::Standing: return {p.anchor};
        case PoseKind::LyingX: return {p.anchor, {p.anchor.x + 1, p.anchor.y}};
        case PoseKind::LyingY: return {p.anchor, {p.anchor.x, p.anchor.y + 1}};
    }
    return {};
}

BlockPose tentative_pose(const BlockPose& p, Direction d, Variant v) {
    const int x = p.anchor.x, y = p.anchor.y;
    if (v == Variant::Cube111) return {PoseKind::Standing, step(p.anchor, d)};
    switch (p.kind) {
        case PoseKind::Standing:
            switch (d) {
                case Direction::Left: return {PoseKind::LyingX, {x - 2, y}};
                case Direction::Right: return {PoseKind::LyingX, {x + 1, y}};
                case Direction::Up: return {PoseKind::LyingY, {x, y - 2}};
                case Direction::Down: return {PoseKind::LyingY, {x, y + 1}};
            }
            break;
        case PoseKind::LyingX:
            switch (d) {
                case Direction::Left: return {PoseKind::Standing, {x - 1, y}};
                case Direction::Right: return {PoseKind::Standing, {x + 2, y}};
                case Direction::Up: return {PoseKind::LyingX, {x, y - 1}};
                case Direction::Down: return {PoseKind::LyingX, {x, y + 1}};
            }
            break;
        case PoseKind::LyingY:
            switch (d) {
                case Direction::Up: return {PoseKind::Standing, {x, y - 1}};
                case Direction::Down: return {PoseKind::Standing, {x, y + 2}};
                case Direction::Left: return {PoseKind::LyingY, {x - 1, y}};
                case Direction::Right: return {PoseKind::LyingY, {x + 1, y}};
            }
            break;
    }
    return p;
}

std::string pose_string(const BlockPose& p) {
    const char* k = p.kind == PoseKind::Standing ? "Standing"
                    : p.kind == PoseKind::LyingX ? "LyingX"
                                                 : "LyingY";
    return std::string(k) + "(" + std::to_string(p.anchor.x) + "," + std::to_string(p.anchor.y) + ")";
}

Board::Board(const Level& level)
    : variant_(level.variant),
      order_(level.switch_order),
      start_(level.start),
      goal_(level.goal) {
    int minx = INT_MAX, miny = INT_MAX, maxx = INT_MIN, maxy = INT_MIN;
    for (auto& [c, t] : level.tiles) {
        minx = std::min(minx, c.x);
        miny = std::min(miny, c.y);
        maxx = std::max(maxx, c.x);
        maxy = std::max(maxy, c.y);
    }
    if (level.tiles.empty()) minx = miny = maxx = maxy = 0;
    x0_ = minx;
    y0_ = miny;
    w_ = maxx - minx + 1;
    h_ = maxy - miny + 1;
    grid_.assign(static_cast<size_t>(w_) * h_, Slot{});

    std::set<int> ids;
    for (auto& [id, open] : level.trapdoor_open) ids.insert(id);
    for (auto& [c, t] : level.tiles)
        if (t.type == TileType::Trapdoor) ids.insert(t.id);
    trap_ids_.assign(ids.begin(), ids.end());

    initial_open_ = Bits(trap_ids_.size());
    for (size_t i = 0; i < trap_ids_.size(); ++i) {
        auto it = level.trapdoor_open.find(trap_ids_[i]);
        initial_open_.set(i, it != level.trapdoor_open.end() && it->second);
    }

    for (auto& [c, t] : level.tiles) {
        Slot& s = grid_[cell_slot(c)];
        s.present = 1;
        s.type = t.type;
        switch (t.type) {
            case TileType::Trapdoor:
            case TileType::Switch: s.index = trapdoor_index(t.id); break;
            case TileType::Fragile:
                s.index = static_cast<int32_t>(fragile_cells_.size());
                fragile_cells_.push_back(c);  // tiles are iterated row-major
                break;
            default: break;
        }
    }
}

int Board::trapdoor_index(int id) const {
    auto it = std::lower_bound(trap_ids_.begin(), trap_ids_.end(), id);
    if (it == trap_ids_.end() || *it != id) return -1;
    return static_cast<int>(it - trap_ids_.begin());
}

GameState Board::initial_state() const {
    return {BlockPose{PoseKind::Standing, start_}, initial_open_, Bits(fragile_cells_.size())};
}

MoveOutcome Board::apply_move(const GameState& s, Direction d) const {
    MoveOutcome out;
    const BlockPose next = tentative_pose(s.pose, d, variant_);
    const auto cells = occupied_cells(next);

    // switch toggles for every covered switch, re-occupancy included
    Bits after = s.trap_open;
    std::vector<int> fired;
    for (const Cell& c : cells) {
        const Slot* t = at(c);
        if (t && t->type == TileType::Switch && t->index >= 0) {
            after.flip(static_cast<size_t>(t->index));
            fired.push_back(trap_ids_[t->index]);
        }
    }

    std::vector<Cell> missing, open, consumed;
    auto check = [&](const Bits& bits) {
        for (const Cell& c : cells) {
            const Slot* t = at(c);
            if (t && t->type == TileType::Trapdoor && (t->index < 0 || bits.get(t->index)) &&
                std::find(open.begin(), open.end(), c) == open.end())
                open.push_back(c);
        }
    };
    for (const Cell& c : cells) {
        const Slot* t = at(c);
        if (!t) missing.push_back(c);
        else if (t->type == TileType::Fragile && s.consumed.get(t->index)) consumed.push_back(c);
    }
    if (order_ == SwitchOrder::AfterLegality) check(s.trap_open);
    check(after);

    if (!missing.empty()) {
        out.error = MoveError{MoveError::Kind::Unsupported, missing};
        return out;
    }
    if (!open.empty()) {
        out.error = MoveError{MoveError::Kind::OpenTrapdoor, open};
        return out;
    }
    if (!consumed.empty()) {
        out.error = MoveError{MoveError::Kind::ConsumedTile, consumed};
        return out;
    }

    GameState ns{next, std::move(after), s.consumed};
    // departure consumes fragile tiles
    for (const Cell& c : occupied_cells(s.pose)) {
        if (std::find(cells.begin(), cells.end(), c) != cells.end()) continue;
        const Slot* t = at(c);
        if (t && t->type == TileType::Fragile) ns.consumed.set(t->index, true);
    }
    out.state = std::move(ns);
    out.fired = std::move(fired);
    return out;
}

std::vector<std::pair<Direction, GameState>> Board::legal_moves(const GameState& s) const {
    std::vector<std::pair<Direction, GameState>> r;
    for (Direction d : kDirections) {
        auto o = apply_move(s, d);
        if (o.ok()) r.emplace_back(d, std::move(*o.state));
    }
    return r;
}

bool Board::is_goal(const GameState& s) const {
    return s.pose.kind == PoseKind::Standing && s.pose.anchor == goal_;
}

GameState initial_state(const Level& level) { return Board(level).initial_state(); }
MoveOutcome apply_move(const Level& level, const GameState& s, Direction d) {
    return Board(level).apply_move(s, d);
}
std::vector<std::pair<Direction, GameState>> legal_moves(const Level& level, const GameState& s) {
    return Board(level).legal_moves(s);
}
bool is_goal(const Level& level, const GameState& s) { return Board(level).is_goal(s); }

std::vector<Violation> validate_level(const Level& level) {
    std::vector<Violation> v;
    std::map<int, int> switch_count;
    std::set<int> trapdoor_cells;
    std::map<int, Cell> trapdoor_at;
    for (auto& [c, t] : level.tiles) {
        if (t.type == TileType::Trapdoor) {
            if (!trapdoor_cells.insert(t.id).second)
                v.push_back({"trapdoor id " + std::to_string(t.id) + " used by more than one cell", c, t.id});
            trapdoor_at[t.id] = c;
            if (!level.trapdoor_open.count(t.id))
                v.push_back({"trapdoor " + std::to_string(t.id) + " has no initial state", c, t.id});
        }
    }
    for (auto& [c, t] : level.tiles) {
        if (t.type != TileType::Switch) continue;
        if (!trapdoor_cells.count(t.id))
            v.push_back({"switch targets missing trapdoor " + std::to_string(t.id), c, t.id});
        ++switch_count[t.id];
    }
    for (auto& [id, n] : switch_count)
        if (n > 1 && trapdoor_cells.count(id))
            v.push_back({"mapping not injective at T" + std::to_string(id), trapdoor_at[id], id});
    for (int id : trapdoor_cells)
        if (!switch_count.count(id))
            v.push_back({"trapdoor " + std::to_string(id) + " has no switch", trapdoor_at[id], id});
    for (auto& [id, open] : level.trapdoor_open)
        if (!trapdoor_cells.count(id))
            v.push_back({"initial state for unknown trapdoor " + std::to_string(id), std::nullopt, id});

    auto g = level.tiles.find(level.goal);
    if (g == level.tiles.end()) v.push_back({"goal cell has no tile", level.goal, std::nullopt});
    else if (g->second.type != TileType::Goal) v.push_back({"goal cell is not a goal tile", level.goal, std::nullopt});
    for (auto& [c, t] : level.tiles)
        if (t.type == TileType::Goal && c != level.goal) v.push_back({"extra goal tile", c, std::nullopt});

    auto s = level.tiles.find(level.start);
    if (s == level.tiles.end()) v.push_back({"start cell has no tile", level.start, std::nullopt});
    else if (s->second.type == TileType::Goal) v.push_back({"start cell is the goal", level.start, std::nullopt});
    else if (s->second.type == TileType::Trapdoor && level.trapdoor_open.count(s->second.id) &&
             level.trapdoor_open.at(s->second.id))
        v.push_back({"start cell is an open trapdoor", level.start, s->second.id});

    return v;
}

}  // namespace blox
