#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace blox {

struct Cell {
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell&) const = default;
};

// (y, x) order, used by serializers and renderers
struct RowMajor {
    bool operator()(const Cell& a, const Cell& b) const {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

enum class Direction : uint8_t { Up, Down, Left, Right };
inline constexpr Direction kDirections[4] = {Direction::Up, Direction::Down, Direction::Left,
                                            Direction::Right};

Direction opposite(Direction d);
Cell step(Cell c, Direction d, int n = 1);
const char* direction_name(Direction d);  // "Up", ...
std::optional<Direction> parse_direction(const std::string& s);  // case-insensitive

enum class TileType : uint8_t { Normal, Trapdoor, Switch, Fragile, Goal };

struct Tile {
    TileType type = TileType::Normal;
    int id = 0;  // trapdoor id for Trapdoor, target trapdoor id for Switch
    auto operator<=>(const Tile&) const = default;
};

enum class Variant : uint8_t { Block112, Cube111 };
enum class SwitchOrder : uint8_t { BeforeLegality, AfterLegality };

struct Level {
    std::map<Cell, Tile, RowMajor> tiles;
    std::map<int, bool> trapdoor_open;  // initial state per trapdoor id
    Cell start;
    Cell goal;
    Variant variant = Variant::Block112;
    SwitchOrder switch_order = SwitchOrder::BeforeLegality;

    bool operator==(const Level&) const = default;
};

enum class PoseKind : uint8_t { Standing, LyingX, LyingY };

struct BlockPose {
    PoseKind kind = PoseKind::Standing;
    Cell anchor;
    auto operator<=>(const BlockPose&) const = default;
};

std::vector<Cell> occupied_cells(const BlockPose& p);
BlockPose tentative_pose(const BlockPose& p, Direction d, Variant v);
std::string pose_string(const BlockPose& p);

// Small fixed-size bitset sized at level load.
class Bits {
public:
    Bits() = default;
    explicit Bits(size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    size_t size() const { return n_; }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i, bool v) {
        if (v) w_[i >> 6] |= uint64_t{1} << (i & 63);
        else w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }
    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }
    bool operator==(const Bits&) const = default;

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

// trap_open is indexed by the dense trapdoor index (ids in ascending order),
// consumed by the dense fragile index (cells in row-major order).
struct GameState {
    BlockPose pose;
    Bits trap_open;
    Bits consumed;
    bool operator==(const GameState&) const = default;
};

struct MoveError {
    enum class Kind : uint8_t { Unsupported, OpenTrapdoor, ConsumedTile } kind;
    std::vector<Cell> cells;
};
const char* move_error_name(MoveError::Kind k);

struct MoveOutcome {
    std::optional<GameState> state;
    std::optional<MoveError> error;
    std::vector<int> fired;  // trapdoor ids toggled by this move (empty on error)
    bool ok() const { return state.has_value(); }
};

// Dense view of a level for fast rule evaluation. Everything the rules need
// is looked up through this; Level stays the sparse, serializable form.
class Board {
public:
    explicit Board(const Level& level);

    Variant variant() const { return variant_; }
    Cell goal() const { return goal_; }
    GameState initial_state() const;
    MoveOutcome apply_move(const GameState& s, Direction d) const;
    std::vector<std::pair<Direction, GameState>> legal_moves(const GameState& s) const;
    bool is_goal(const GameState& s) const;

    size_t trapdoor_count() const { return trap_ids_.size(); }
    size_t fragile_count() const { return fragile_cells_.size(); }
    int trapdoor_index(int id) const;  // -1 if unknown
    int trapdoor_id(size_t index) const { return trap_ids_[index]; }
    const std::vector<Cell>& fragile_cells() const { return fragile_cells_; }

    // -1 when outside the bounding box or empty
    int cell_slot(Cell c) const {
        int ix = c.x - x0_, iy = c.y - y0_;
        if (ix < 0 || iy < 0 || ix >= w_ || iy >= h_) return -1;
        return iy * w_ + ix;
    }
    int width() const { return w_; }
    int height() const { return h_; }
    Cell origin() const { return {x0_, y0_}; }

private:
    struct Slot {
        int8_t present = 0;
        TileType type = TileType::Normal;
        int32_t index = -1;  // trapdoor index / switch target index / fragile index
    };
    const Slot* at(Cell c) const {
        int k = cell_slot(c);
        return k < 0 || !grid_[k].present ? nullptr : &grid_[k];
    }

    Variant variant_;
    SwitchOrder order_;
    Cell start_, goal_;
    Bits initial_open_;
    int x0_ = 0, y0_ = 0, w_ = 0, h_ = 0;
    std::vector<Slot> grid_;
    std::vector<int> trap_ids_;
    std::vector<Cell> fragile_cells_;
};

// Convenience wrappers that build a Board per call.
GameState initial_state(const Level& level);
MoveOutcome apply_move(const Level& level, const GameState& s, Direction d);
std::vector<std::pair<Direction, GameState>> legal_moves(const Level& level, const GameState& s);
bool is_goal(const Level& level, const GameState& s);

struct Violation {
    std::string message;
    std::optional<Cell> cell;
    std::optional<int> trapdoor;
};
std::vector<Violation> validate_level(const Level& level);

}  // namespace blox
