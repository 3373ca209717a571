#include <algorithm>

#include "bloxorz/reduction.hpp"
#include "stamps.hpp"

namespace blox {

using namespace detail;

namespace {

// Slot trapdoors whose gadget lives elsewhere are parked on isolated cells so
// the standalone level keeps the switch/trapdoor bijection.
struct Phantoms {
    LevelBuilder& b;
    Cell next;
    int place(bool open, const std::string& instance, const std::string& role) {
        int id = b.new_trapdoor_id();
        b.trapdoor(next, id, open, {instance, role});
        next.x += 2;
        return id;
    }
};

GadgetTemplate finish(const std::string& name, LevelBuilder& b, Cell start, Cell goal,
                      std::map<std::string, Port> ports) {
    if (!b.has(goal)) b.put(goal, Tile{TileType::Goal, 0}, {name, "goal"});
    ReductionArtifact a = b.finish(start, goal, Variant::Block112);
    GadgetTemplate t;
    t.name = name;
    t.level = std::move(a.level);
    for (auto& [c, p] : a.provenance) {
        if (p.role == "corridor" || p.role == "lane") continue;
        t.roles[c] = p.role;
        auto it = t.level.tiles.find(c);
        if (it != t.level.tiles.end() && it->second.type == TileType::Trapdoor) t.slots[p.role] = it->second.id;
    }
    t.ports = std::move(ports);
    return t;
}

Port standing_port(Cell c, std::vector<BlockPose> extra = {}) {
    Port p{c, {BlockPose{PoseKind::Standing, c}}};
    for (auto& e : extra) p.arrivals.push_back(e);
    return p;
}

GadgetTemplate vertex_copy(CopyKind kind, const std::string& name) {
    LevelBuilder b;
    CopySpec s;
    s.corner = {0, 0};
    s.dir = 1;
    s.kind = kind;
    s.instance = name;
    for (int i = 0; i < 3; ++i) s.slot[i] = b.new_trapdoor_id();
    s.open = {true, true, true};
    s.slot_role = kind == CopyKind::Or ? std::array<std::string, 3>{"x", "y", "v1"}
                                       : std::array<std::string, 3>{"v1", "x", "y"};
    b.normal(s.corner, {name, "corner"});
    Cell bottom = stamp_copy(b, s);
    // the gate switches live in edge lanes; here they sit on isolated cells
    for (int i = 0; i < 3; ++i) b.switch_for({20 + 2 * i, 0}, s.slot[i], {name, "switch:" + s.slot_role[i]});
    std::map<std::string, Port> ports;
    ports["edge"] = standing_port(s.corner, {BlockPose{PoseKind::LyingY, {0, 1}}});
    ports["hub"] = standing_port(bottom, {BlockPose{PoseKind::LyingY, {bottom.x, bottom.y - 2}}});
    return finish(name, b, s.corner, {30, 0}, ports);
}

}  // namespace

GadgetTemplate edge_gadget(Orientation o) {
    const bool right = o == Orientation::TowardRight;
    const std::string name = right ? "edge(toward-right)" : "edge(toward-left)";
    LevelBuilder b;
    LaneSpec s;
    s.origin = {0, 0};
    s.instance = name;
    for (int i = 0; i < 3; ++i) {
        s.a[i] = b.new_trapdoor_id();
        s.b[i] = b.new_trapdoor_id();
    }
    s.a_open = !right;
    s.b_open = right;
    Phantoms ph{b, {0, 8}};
    // closed slot = edge points at that vertex
    for (int i = 0; i < 3; ++i) s.left[i] = ph.place(right, name, "v" + std::to_string(i + 1));
    for (int i = 0; i < 3; ++i) s.right[i] = ph.place(!right, name, "u" + std::to_string(i + 1));
    stamp_lane(b, s);
    // short stubs standing in for the corner spines of the vertex copies
    b.line({0, 1}, {0, 3}, {name, "corridor"});
    b.line({kLaneLen - 1, 1}, {kLaneLen - 1, 3}, {name, "corridor"});
    std::map<std::string, Port> ports;
    ports["left"] = standing_port({0, 3}, {BlockPose{PoseKind::LyingY, {0, 1}}});
    ports["right"] = standing_port({kLaneLen - 1, 3}, {BlockPose{PoseKind::LyingY, {kLaneLen - 1, 1}}});
    return finish(name, b, {0, 3}, {0, 12}, ports);
}

GadgetTemplate or_vertex_gadget() { return vertex_copy(CopyKind::Or, "or-vertex"); }
GadgetTemplate and_vertex_gadget() { return vertex_copy(CopyKind::And, "and-vertex"); }

// A passage that crosses an edge lane at a switch cell. The crossing block is
// lying across the lane, so it presses exactly that one switch and cannot
// turn into the lane; lane traffic cannot turn into the passage either.
GadgetTemplate force_close_gadget() {
    const std::string name = "force-close";
    LevelBuilder b;
    int partner = b.new_trapdoor_id();
    int slot = b.new_trapdoor_id();
    b.line({0, 0}, {3, 0}, {name, "lane"});
    b.switch_for({4, 0}, slot, {name, "switch:slot"});
    b.switch_for({5, 0}, partner, {name, "switch:partner"});
    b.normal({6, 0}, {name, "lane"});
    b.line({0, 1}, {0, 3}, {name, "corridor"});
    b.line({6, 1}, {6, 3}, {name, "corridor"});
    b.line({4, -5}, {4, -3}, {name, "passage"});
    b.put({4, -2}, Tile{TileType::Fragile, 0}, {name, "guard"});
    b.normal({4, -1}, {name, "passage"});
    b.put({4, 1}, Tile{TileType::Fragile, 0}, {name, "guard"});
    b.line({4, 2}, {4, 4}, {name, "passage"});
    b.trapdoor({10, 8}, slot, true, {name, "slot"});
    b.trapdoor({12, 8}, partner, true, {name, "partner"});
    std::map<std::string, Port> ports;
    ports["top"] = standing_port({4, -5});
    ports["bottom"] = standing_port({4, 4});
    ports["lane-left"] = standing_port({0, 3});
    ports["lane-right"] = standing_port({6, 3});
    return finish(name, b, {4, -5}, {14, 8}, ports);
}

// Two-switch valve. Main row: T(y), switches x y, T(x). A spur crosses the
// main row at switch x and ends on the slot switch, so the spur presses x and
// the slot together while the main row presses x and y together.
GadgetTemplate force_open_gadget() {
    const std::string name = "force-open";
    LevelBuilder b;
    int tx = b.new_trapdoor_id();
    int ty = b.new_trapdoor_id();
    int slot = b.new_trapdoor_id();
    const Provenance room{name, "room"}, wire{name, "corridor"};
    for (int y = -6; y <= -4; ++y)
        for (int x = -4; x <= -2; ++x) b.normal({x, y}, room);
    b.line({-1, -4}, {7, -4}, wire);   // to the spur
    b.line({7, -3}, {7, -1}, wire);    // spur
    b.switch_for({7, 0}, tx, {name, "switch:x"});
    b.switch_for({7, 1}, slot, {name, "switch:slot"});
    b.line({-3, -3}, {-3, 0}, wire);   // to the main row
    b.line({-2, 0}, {5, 0}, wire);
    b.trapdoor({6, 0}, ty, false, {name, "y"});
    b.switch_for({8, 0}, ty, {name, "switch:y"});
    b.trapdoor({9, 0}, tx, false, {name, "x"});
    b.line({10, 0}, {11, 0}, wire);
    b.trapdoor({20, 8}, slot, false, {name, "slot"});
    b.put({12, 0}, Tile{TileType::Goal, 0}, {name, "exit"});
    std::map<std::string, Port> ports;
    ports["entry"] = standing_port({-3, -6});
    ports["exit"] = standing_port({12, 0});
    return finish(name, b, {-3, -6}, {12, 0}, ports);
}

namespace {

bool closed(const SlotState& s, const std::string& k) { return !s.at(k); }

std::string pad_roles(const std::vector<std::string>& roles, const SlotState& s) {
    std::string r;
    for (auto& k : roles) r += k + "=" + (s.at(k) ? "open " : "closed ");
    if (!r.empty()) r.pop_back();
    return r;
}

}  // namespace

GadgetContract claim1_contract() {
    GadgetContract c;
    c.name = "claim1";
    for (bool right : {true, false}) {
        for (const char* entry : {"left", "right"}) {
            GadgetCase k;
            SlotState s;
            for (int i = 1; i <= 3; ++i) {
                std::string n = std::to_string(i);
                s["A" + n] = !right;
                s["B" + n] = right;
                s["v" + n] = right;
                s["u" + n] = !right;
            }
            k.initial = s;
            k.entry = entry;
            k.name = std::string(right ? "toward-right" : "toward-left") + ", enter " + entry;
            // the block can cross only from the side the edge points away from
            bool crosses = (std::string(entry) == "left") == right;
            k.reach[std::string(entry) == "left" ? "right" : "left"] = crosses;
            k.at_port = [](const std::string&, const SlotState& now) {
                bool some_u = false, some_v = false;
                for (int i = 1; i <= 3; ++i) {
                    some_u = some_u || closed(now, "u" + std::to_string(i));
                    some_v = some_v || closed(now, "v" + std::to_string(i));
                }
                return !(some_u && some_v);
            };
            k.at_port_text = "never a u-slot and a v-slot closed together";
            c.cases.push_back(std::move(k));
        }
    }
    return c;
}

namespace {

GadgetContract vertex_contract(bool is_or) {
    GadgetContract c;
    c.name = is_or ? "claim2" : "claim3";
    const std::vector<std::string> roles = is_or ? std::vector<std::string>{"x", "y", "v1"}
                                                 : std::vector<std::string>{"v1", "x", "y"};
    for (int mask = 0; mask < 8; ++mask) {
        SlotState s;
        for (int i = 0; i < 3; ++i) s[roles[i]] = !(mask >> i & 1);  // bit set = closed
        bool pass;
        if (is_or) pass = closed(s, "x") || closed(s, "y") || closed(s, "v1");
        else pass = closed(s, "v1") || (closed(s, "x") && closed(s, "y"));
        for (const char* entry : {"edge", "hub"}) {
            GadgetCase k;
            k.initial = s;
            k.entry = entry;
            k.name = pad_roles(roles, s) + ", enter " + entry;
            k.reach[std::string(entry) == "edge" ? "hub" : "edge"] = pass;
            c.cases.push_back(std::move(k));
        }
    }
    return c;
}

}  // namespace

GadgetContract or_contract() { return vertex_contract(true); }
GadgetContract and_contract() { return vertex_contract(false); }

GadgetContract force_close_contract() {
    GadgetContract c;
    c.name = "force-close";
    GadgetCase k;
    k.name = "slot open, pass top to bottom";
    k.initial = {{"slot", true}};
    k.entry = "top";
    k.reach = {{"bottom", true}, {"lane-left", false}, {"lane-right", false}};
    k.at_port = [](const std::string& port, const SlotState& s) {
        return port == "bottom" ? !s.at("slot") : s.at("slot");
    };
    k.at_port_text = "slot closed below the lane, open above it";
    c.cases.push_back(k);

    GadgetCase lane;
    lane.name = "lane traffic stays in the lane";
    lane.initial = {{"slot", true}};
    lane.entry = "lane-left";
    lane.reach = {{"lane-right", true}, {"top", false}, {"bottom", false}};
    c.cases.push_back(lane);
    return c;
}

GadgetContract force_open_contract() {
    GadgetContract c;
    c.name = "force-open";
    GadgetCase k;
    k.name = "all closed, intended order";
    k.initial = {{"slot", false}, {"x", false}, {"y", false}};
    k.entry = "entry";
    k.reach = {{"exit", true}};
    k.at_port = [](const std::string& port, const SlotState& s) { return port != "exit" || s.at("slot"); };
    k.at_port_text = "slot open whenever the block stands on the exit";
    c.cases.push_back(k);

    GadgetCase naive;
    naive.name = "all closed, naive straight run";
    naive.initial = k.initial;
    naive.entry = "entry";
    using D = Direction;
    naive.stuck_script = {D::Down, D::Down, D::Down, D::Down, D::Right, D::Right,
                          D::Right, D::Right, D::Right, D::Right, D::Right};
    c.cases.push_back(naive);
    return c;
}

GadgetTemplate corrupt_gate(GadgetTemplate t, const std::string& role) {
    for (auto& [c, r] : t.roles) {
        if (r != role) continue;
        auto it = t.level.tiles.find(c);
        if (it == t.level.tiles.end() || it->second.type != TileType::Trapdoor) continue;
        // pave the gate but keep its switch and slot, so the contract still
        // drives the slot state and the broken gate shows up as a leak
        it->second = Tile{};
        t.name += " [corrupted " + role + "]";
        break;
    }
    return t;
}

}  // namespace blox
