#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "bloxorz/engine.hpp"

namespace blox {
// readable gtest failure output
inline void PrintTo(const Cell& c, std::ostream* os) { *os << "(" << c.x << "," << c.y << ")"; }
inline void PrintTo(const BlockPose& p, std::ostream* os) { *os << pose_string(p); }
}  // namespace blox

namespace th {

using namespace blox;

inline Level strip(int n, int goal_x, Variant v = Variant::Block112) {
    Level lv;
    lv.variant = v;
    for (int x = 0; x < n; ++x) lv.tiles[{x, 0}] = Tile{};
    lv.start = {0, 0};
    lv.goal = {goal_x, 0};
    lv.tiles[lv.goal] = Tile{TileType::Goal, 0};
    return lv;
}

inline void put(Level& lv, Cell c, TileType t, int id = 0) { lv.tiles[c] = Tile{t, id}; }

inline void pair(Level& lv, Cell sw, Cell trap, int id, bool open) {
    lv.tiles[sw] = Tile{TileType::Switch, id};
    lv.tiles[trap] = Tile{TileType::Trapdoor, id};
    lv.trapdoor_open[id] = open;
}

inline std::string fixture(const std::string& name) { return std::string(BLOX_FIXTURES) + "/" + name; }
inline std::string golden(const std::string& name) { return std::string(BLOX_GOLDEN) + "/" + name; }

// Random Cube111 level on a w x h grid: holes, switch/trapdoor pairs, goal.
inline Level random_cube(std::mt19937& rng, int w, int h, int pairs) {
    Level lv;
    lv.variant = Variant::Cube111;
    std::vector<Cell> free;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (rng() % 5) free.push_back({x, y});
    if (free.size() < static_cast<size_t>(2 * pairs + 2)) free.push_back({w, h});
    std::shuffle(free.begin(), free.end(), rng);
    for (Cell c : free) lv.tiles[c] = Tile{};
    size_t k = 0;
    lv.start = free[k++];
    lv.goal = free[k++];
    lv.tiles[lv.goal] = Tile{TileType::Goal, 0};
    for (int i = 1; i <= pairs && k + 1 < free.size(); ++i) {
        pair(lv, free[k], free[k + 1], i, rng() % 2);
        k += 2;
    }
    return lv;
}

// Random small Block112 level, optionally with fragile tiles.
inline Level random_block(std::mt19937& rng, int w, int h, int pairs, int fragile) {
    Level lv = random_cube(rng, w, h, pairs);
    lv.variant = Variant::Block112;
    int placed = 0;
    for (auto& [c, t] : lv.tiles)
        if (placed < fragile && t.type == TileType::Normal && c != lv.start && rng() % 3 == 0) {
            t.type = TileType::Fragile;
            ++placed;
        }
    return lv;
}

}  // namespace th
