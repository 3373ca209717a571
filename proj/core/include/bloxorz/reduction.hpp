#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bloxorz/engine.hpp"
#include "bloxorz/ncl.hpp"
#include "bloxorz/sat.hpp"

namespace blox {

struct Provenance {
    std::string instance;  // e.g. "edge:e1", "vertex:A@e2", "force:e1", "hub"
    std::string role;      // e.g. "A1", "pair:A1/v1", "gate:e3", "corridor"
    bool operator==(const Provenance&) const = default;
};

struct ReductionArtifact {
    Level level;
    std::map<Cell, Provenance, RowMajor> provenance;
    std::map<int, std::string> binding;  // trapdoor id -> what it encodes
};

// Raised when assembly would place two different tiles on one cell. Never
// expected; treated as a bug.
struct LayoutOverflow : std::logic_error {
    using std::logic_error::logic_error;
};

// Accumulates tiles with provenance. Normal tiles may be laid over existing
// normal tiles (corridor junctions); anything else on an occupied cell throws.
class LevelBuilder {
public:
    void put(Cell c, Tile t, const Provenance& p);
    void normal(Cell c, const Provenance& p) { put(c, Tile{}, p); }
    // inclusive straight segment, horizontal or vertical
    void line(Cell a, Cell b, const Provenance& p);
    int new_trapdoor_id() { return next_id_++; }
    void trapdoor(Cell c, int id, bool open, const Provenance& p);
    void switch_for(Cell c, int id, const Provenance& p);
    void bind(int id, std::string what) { binding_[id] = std::move(what); }
    bool has(Cell c) const { return tiles_.count(c) != 0; }

    ReductionArtifact finish(Cell start, Cell goal, Variant v) const;

private:
    std::map<Cell, Tile, RowMajor> tiles_;
    std::map<Cell, Provenance, RowMajor> prov_;
    std::map<int, bool> open_;
    std::map<int, std::string> binding_;
    int next_id_ = 1;
};

// ---- gadget templates and their contracts ----

struct Port {
    Cell cell;                        // block stands here when at the port
    std::vector<BlockPose> arrivals;  // admissible entry poses
};

struct GadgetTemplate {
    std::string name;
    Level level;  // standalone level; external slots are isolated trapdoor tiles
    std::map<Cell, std::string, RowMajor> roles;
    std::map<std::string, Port> ports;
    std::map<std::string, int> slots;  // role label -> trapdoor id
};

using SlotState = std::map<std::string, bool>;  // role -> open

struct GadgetCase {
    std::string name;
    SlotState initial;                     // overrides for trapdoor roles
    std::string entry;                     // port name
    std::map<std::string, bool> reach;     // port -> must / must not be reachable (standing)
    // must hold for every reachable state with the block standing on a port
    std::function<bool(const std::string& port, const SlotState&)> at_port;
    std::string at_port_text;
    // optional scripted move sequence that must end with no legal move
    std::vector<Direction> stuck_script;
};

struct GadgetContract {
    std::string name;
    std::vector<GadgetCase> cases;
};

struct CaseVerdict {
    std::string name;
    bool pass = true;
    std::string detail;                 // human readable verdict lines
    std::vector<Direction> counterexample;  // moves from the entry pose
    std::optional<BlockPose> entry_pose;
    uint64_t states = 0;
};

struct GadgetReport {
    std::string gadget;
    bool pass = true;
    std::vector<CaseVerdict> cases;
    std::string text() const;
};

GadgetReport verify_gadget(const GadgetTemplate& t, const GadgetContract& c);

enum class Orientation { TowardLeft, TowardRight };

GadgetTemplate edge_gadget(Orientation o);
GadgetTemplate or_vertex_gadget();
GadgetTemplate and_vertex_gadget();
GadgetTemplate force_close_gadget();
GadgetTemplate force_open_gadget();

GadgetContract claim1_contract();
GadgetContract or_contract();   // all 8 slot assignments, both directions
GadgetContract and_contract();
GadgetContract force_close_contract();
GadgetContract force_open_contract();

// Template with one gate trapdoor replaced by a normal tile (harness sanity check).
GadgetTemplate corrupt_gate(GadgetTemplate t, const std::string& role);

// ---- compilers ----

enum class InitMode { Free, AllOpen, AllClosed };
const char* mode_name(InitMode m);
std::optional<InitMode> parse_mode(const std::string& s);  // free | all-open | all-closed

struct GraphInvalid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EmptyFormula : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

ReductionArtifact compile_ncl(const ncl::Graph& g, const ncl::Configuration& init, InitMode mode);
ReductionArtifact compile_sat(const CnfFormula& f);
Level gen_quadratic(int r);

struct ReductionReport {
    bool ncl_reachable = false;
    std::string level_verdict;  // "solvable", "unsolvable", "budget"
    bool pass = false;
    uint64_t states = 0;
    std::string text() const;
};
ReductionReport verify_reduction(const ncl::Graph& g, const ncl::Configuration& init, InitMode mode,
                                 uint64_t budget = 10'000'000);

}  // namespace blox
