#include <algorithm>

#include "bloxorz/reduction.hpp"

namespace blox {

namespace {
std::string at(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }
}  // namespace

void LevelBuilder::put(Cell c, Tile t, const Provenance& p) {
    auto it = tiles_.find(c);
    if (it != tiles_.end()) {
        if (it->second.type == TileType::Normal && t.type == TileType::Normal) return;
        throw LayoutOverflow("cell " + at(c) + " already holds a tile from " + prov_[c].instance + "/" +
                             prov_[c].role + ", wanted by " + p.instance + "/" + p.role);
    }
    tiles_[c] = t;
    prov_[c] = p;
}

void LevelBuilder::line(Cell a, Cell b, const Provenance& p) {
    if (a.x != b.x && a.y != b.y) throw LayoutOverflow("diagonal corridor");
    int dx = (b.x > a.x) - (b.x < a.x), dy = (b.y > a.y) - (b.y < a.y);
    for (Cell c = a;; c = {c.x + dx, c.y + dy}) {
        normal(c, p);
        if (c == b) break;
    }
}

void LevelBuilder::trapdoor(Cell c, int id, bool open, const Provenance& p) {
    put(c, Tile{TileType::Trapdoor, id}, p);
    open_[id] = open;
}

void LevelBuilder::switch_for(Cell c, int id, const Provenance& p) { put(c, Tile{TileType::Switch, id}, p); }

ReductionArtifact LevelBuilder::finish(Cell start, Cell goal, Variant v) const {
    ReductionArtifact a;
    a.level.tiles = tiles_;
    a.level.trapdoor_open = open_;
    a.level.start = start;
    a.level.goal = goal;
    a.level.variant = v;
    a.provenance = prov_;
    a.binding = binding_;
    return a;
}

}  // namespace blox
