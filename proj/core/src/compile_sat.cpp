#include <cstdlib>
#include <set>

#include "bloxorz/reduction.hpp"

namespace blox {

namespace {

// Variable lines live on x = 1 (mod 3), y = 0 (mod 3); clause rows on
// x = 0 (mod 3), y = 1 (mod 3). A block on either network is lying whenever
// it covers a crossing, so it can neither turn there nor skip the tile.
constexpr int kFirstColumn = 10;
constexpr int kXL = 3;
constexpr int kTop = 0;
constexpr int kFirstRow = 4;

struct SatBuilder {
    LevelBuilder b;
    std::set<Cell> fragile;

    void line(Cell a, Cell z, const Provenance& p) {
        int dx = (z.x > a.x) - (z.x < a.x), dy = (z.y > a.y) - (z.y < a.y);
        for (Cell c = a;; c = {c.x + dx, c.y + dy}) {
            if (!fragile.count(c)) b.normal(c, p);
            if (c == z) break;
        }
    }
};

}  // namespace

ReductionArtifact compile_sat(const CnfFormula& f) {
    if (f.clauses.empty() || f.variables <= 0) throw EmptyFormula("formula has no clauses");
    for (auto& cl : f.clauses) {
        if (cl.empty() || cl.size() > 3) throw std::invalid_argument("clause size must be 1..3");
        for (int l : cl)
            if (l == 0 || std::abs(l) > f.variables) throw std::invalid_argument("literal out of range");
    }
    const int n = f.variables;
    const int m = static_cast<int>(f.clauses.size());
    auto col_true = [](int v) { return kFirstColumn + 6 * (v - 1); };
    auto col_false = [&](int v) { return col_true(v) + 3; };
    const int xr = col_false(n) + 2;

    // clause rows top to bottom
    std::vector<std::vector<int>> rows(m);
    int y = kFirstRow;
    for (int j = 0; j < m; ++j)
        for (size_t k = 0; k < f.clauses[j].size(); ++k, y += 3) rows[j].push_back(y);
    const int last_row = rows[m - 1].back();
    const int goal_row = last_row + 3;
    int bottom = goal_row + 2;
    bottom += (3 - bottom % 3) % 3;

    SatBuilder s;
    // a clause row for literal l breaks where it meets the line of not-l
    for (int j = 0; j < m; ++j)
        for (size_t k = 0; k < rows[j].size(); ++k) {
            int l = f.clauses[j][k];
            int v = std::abs(l);
            Cell c{l > 0 ? col_false(v) : col_true(v), rows[j][k]};
            if (s.fragile.insert(c).second)
                s.b.put(c, Tile{TileType::Fragile, 0}, {"crossing", "lit" + std::to_string(l)});
        }

    // variables: var 1 runs down, var 2 up, ...; split and join rows are shared
    const Cell start{col_true(1) - 3, kTop};
    s.line(start, {col_false(1), kTop}, {"var:x1", "split"});
    for (int v = 1; v <= n; ++v) {
        const std::string inst = "var:x" + std::to_string(v);
        s.line({col_true(v), kTop}, {col_true(v), bottom}, {inst, "true"});
        s.line({col_false(v), kTop}, {col_false(v), bottom}, {inst, "false"});
        int join = v % 2 ? bottom : kTop;
        int to = v < n ? col_false(v + 1) : xr + 4;
        s.line({col_true(v), join}, {to, join}, {inst, "join"});
    }

    // clause 1 is entered from the right through a 3x3 room that moves the
    // block from the variable lattice onto the clause lattice
    const int end_row = n % 2 ? bottom : kTop;
    const int r0 = rows[0].front();
    if (end_row == kTop) s.line({xr + 4, kTop}, {xr + 4, r0 - 2}, {"bridge", "corridor"});
    else s.line({xr + 4, end_row}, {xr + 4, r0 + 2}, {"bridge", "corridor"});
    for (int yy = r0 - 1; yy <= r0 + 1; ++yy)
        for (int xx = xr + 3; xx <= xr + 5; ++xx) s.b.normal({xx, yy}, {"bridge", "room"});
    s.line({xr, r0}, {xr + 2, r0}, {"bridge", "corridor"});

    s.line({xr, rows[0].front()}, {xr, rows[0].back()}, {"clause:C1", "split"});
    Cell goal{};
    for (int j = 0; j < m; ++j) {
        const std::string inst = "clause:C" + std::to_string(j + 1);
        for (size_t k = 0; k < rows[j].size(); ++k)
            s.line({kXL, rows[j][k]}, {xr, rows[j][k]}, {inst, "lit" + std::to_string(f.clauses[j][k])});
        int x = j % 2 == 0 ? kXL : xr;  // join side
        if (j + 1 < m) {
            s.line({x, rows[j].front()}, {x, rows[j + 1].back()}, {inst, "join"});
        } else {
            s.line({x, rows[j].front()}, {x, goal_row - 1}, {inst, "join"});
            goal = {x, goal_row};
            s.b.put(goal, Tile{TileType::Goal, 0}, {inst, "goal"});
        }
    }
    return s.b.finish(start, goal, Variant::Block112);
}

Level gen_quadratic(int r) {
    if (r < 1) throw std::invalid_argument("r must be at least 1");
    Level lv;
    lv.variant = Variant::Cube111;
    lv.start = {r, 0};
    lv.tiles[lv.start] = Tile{};
    for (int k = 1; k <= r; ++k) {
        lv.trapdoor_open[k] = true;
        Cell left{r - k, 0}, right{r + k, 0};
        // read from the ends: s_r t_{r-1} ... on the left, ... s_{r-1} t_r on the
        // right, so t_r always guards the goal (for odd r the middle flips)
        bool s_left = (r - k) % 2 == 0;
        lv.tiles[left] = s_left ? Tile{TileType::Switch, k} : Tile{TileType::Trapdoor, k};
        lv.tiles[right] = s_left ? Tile{TileType::Trapdoor, k} : Tile{TileType::Switch, k};
    }
    lv.goal = {2 * r + 1, 0};
    lv.tiles[lv.goal] = Tile{TileType::Goal, 0};
    return lv;
}

}  // namespace blox
