#include <gtest/gtest.h>

#include <chrono>

#include "bloxorz/formats.hpp"
#include "bloxorz/reduction.hpp"
#include "bloxorz/solver.hpp"
#include "helpers.hpp"
#include "ncl_suite.hpp"

using namespace blox;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void expect_gadget(const GadgetTemplate& t, const GadgetContract& c) {
    auto t0 = std::chrono::steady_clock::now();
    GadgetReport r = verify_gadget(t, c);
    EXPECT_TRUE(r.pass) << r.text();
    EXPECT_LT(seconds_since(t0), 10.0) << t.name;
    EXPECT_TRUE(validate_level(t.level).empty()) << t.name;
}

// Every tile of a compiled level has an owner, and the artifact is a valid level.
void expect_well_formed(const ReductionArtifact& a) {
    auto v = validate_level(a.level);
    EXPECT_TRUE(v.empty()) << (v.empty() ? "" : v.front().message);
    for (auto& [c, t] : a.level.tiles) {
        auto it = a.provenance.find(c);
        ASSERT_NE(it, a.provenance.end()) << "tile without provenance at " << c.x << "," << c.y;
        EXPECT_FALSE(it->second.instance.empty());
        EXPECT_FALSE(it->second.role.empty());
    }
    EXPECT_EQ(a.provenance.size(), a.level.tiles.size());
    for (auto& [id, open] : a.level.trapdoor_open) EXPECT_TRUE(a.binding.count(id)) << "unbound trapdoor " << id;
}

}  // namespace

TEST(Gadgets, EdgeClaimOne) {
    expect_gadget(edge_gadget(Orientation::TowardRight), claim1_contract());
    expect_gadget(edge_gadget(Orientation::TowardLeft), claim1_contract());
}

TEST(Gadgets, OrAllAssignments) { expect_gadget(or_vertex_gadget(), or_contract()); }
TEST(Gadgets, AndAllAssignments) { expect_gadget(and_vertex_gadget(), and_contract()); }
TEST(Gadgets, ForceClose) { expect_gadget(force_close_gadget(), force_close_contract()); }
TEST(Gadgets, ForceOpen) { expect_gadget(force_open_gadget(), force_open_contract()); }

TEST(Gadgets, ContractsCoverEveryAssignment) {
    EXPECT_EQ(or_contract().cases.size(), 16u);  // 8 assignments x 2 entries
    EXPECT_EQ(and_contract().cases.size(), 16u);
}

TEST(Gadgets, CorruptedGateIsCaught) {
    for (const char* role : {"x", "y", "v1"}) {
        GadgetReport r = verify_gadget(corrupt_gate(or_vertex_gadget(), role), or_contract());
        EXPECT_FALSE(r.pass) << role;
        bool traced = false;
        for (auto& c : r.cases)
            if (!c.pass && !c.counterexample.empty() && c.entry_pose) traced = true;
        EXPECT_TRUE(traced) << role;
    }
    GadgetReport a = verify_gadget(corrupt_gate(and_vertex_gadget(), "v1"), and_contract());
    EXPECT_FALSE(a.pass);
}

TEST(Gadgets, CounterexampleReplays) {
    GadgetTemplate t = corrupt_gate(or_vertex_gadget(), "x");
    GadgetReport r = verify_gadget(t, or_contract());
    for (auto& c : r.cases) {
        if (c.pass || c.counterexample.empty()) continue;
        // the trace is legal from the entry pose under the case's slot setting
        GadgetCase gc;
        for (auto& k : or_contract().cases)
            if (k.name == c.name) gc = k;
        Level lv = t.level;
        for (auto& [role, open] : gc.initial)
            if (t.slots.count(role)) lv.trapdoor_open[t.slots.at(role)] = open;
        Board b(lv);
        GameState s = b.initial_state();
        s.pose = *c.entry_pose;
        for (Direction d : c.counterexample) {
            auto m = b.apply_move(s, d);
            ASSERT_TRUE(m.ok()) << c.name;
            s = *m.state;
        }
        return;
    }
    FAIL() << "no counterexample produced";
}

TEST(CompileNcl, RejectsIllegalInitial) {
    ncl::Graph aa = ncl::and_and_graph();
    EXPECT_THROW(compile_ncl(aa, suite::config(aa, {"Y", "Y", "Y"}), InitMode::Free), GraphInvalid);
    ncl::Graph bad = ncl::or_or_graph();
    bad.edges[0].weight = 1;
    EXPECT_THROW(compile_ncl(bad, {false, true, true}, InitMode::Free), GraphInvalid);
    EXPECT_THROW(compile_ncl(ncl::or_or_graph(), {true}, InitMode::Free), GraphInvalid);
}

TEST(CompileNcl, WellFormedInEveryMode) {
    for (auto& in : suite::instances())
        for (InitMode m : {InitMode::Free, InitMode::AllOpen, InitMode::AllClosed}) {
            SCOPED_TRACE(in.name + " " + mode_name(m));
            ReductionArtifact a = compile_ncl(in.graph, in.init, m);
            expect_well_formed(a);
            bool uniform = true;
            for (auto& [id, open] : a.level.trapdoor_open)
                uniform = uniform && open == (m == InitMode::AllOpen);
            if (m != InitMode::Free) EXPECT_TRUE(uniform);
        }
}

TEST(CompileNcl, Deterministic) {
    for (auto& in : suite::instances()) {
        std::string a = serialize_level(compile_ncl(in.graph, in.init, InitMode::AllOpen).level);
        std::string b = serialize_level(compile_ncl(in.graph, in.init, InitMode::AllOpen).level);
        EXPECT_EQ(a, b) << in.name;
    }
}

// With the target edge's lane removed the goal must be out of reach: the
// start is not a square from which the goal can be reached directly.
TEST(CompileNcl, StartCannotBypassTargetEdge) {
    for (auto& in : suite::instances()) {
        ncl::Graph g = in.graph;
        ReductionArtifact a = compile_ncl(g, in.init, InitMode::Free);
        // every gate passable: switches and trapdoors become plain floor
        Level cut = a.level;
        const std::string lane = "edge:" + g.edges[g.target].name;
        for (auto it = cut.tiles.begin(); it != cut.tiles.end();) {
            if (a.provenance.at(it->first).instance == lane) {
                it = cut.tiles.erase(it);
                continue;
            }
            if (it->second.type == TileType::Trapdoor || it->second.type == TileType::Switch) it->second = Tile{};
            ++it;
        }
        cut.trapdoor_open.clear();
        BfsOptions o;
        o.budget = 2'000'000;
        EXPECT_EQ(bfs_solve(cut, o).status, SolveStatus::Unsolvable) << in.name;
        // and with the lane kept, the same open level is solvable
        Level whole = a.level;
        for (auto& [c, t] : whole.tiles)
            if (t.type == TileType::Trapdoor || t.type == TileType::Switch) t = Tile{};
        whole.trapdoor_open.clear();
        EXPECT_EQ(bfs_solve(whole, o).status, SolveStatus::Solved) << in.name;
    }
}

// Free mode over the whole suite, forced modes on the cheap half; the full
// cross product runs in the acceptance binary.
TEST(Equivalence, SuiteFreeMode) {
    for (auto& in : suite::instances()) {
        ReductionReport r = verify_reduction(in.graph, in.init, InitMode::Free);
        EXPECT_TRUE(r.pass) << in.name << ": " << r.text();
    }
}

TEST(Equivalence, ForcedModesOnSmallInstances) {
    auto all = suite::instances();
    for (size_t i = 0; i < 6; ++i)
        for (InitMode m : {InitMode::AllOpen, InitMode::AllClosed}) {
            ReductionReport r = verify_reduction(all[i].graph, all[i].init, m);
            EXPECT_TRUE(r.pass) << all[i].name << " " << mode_name(m) << ": " << r.text();
        }
}

TEST(Equivalence, ReportWording) {
    ncl::Graph aa = ncl::and_and_graph();
    ReductionReport r = verify_reduction(aa, suite::config(aa, {"X", "Y", "Y"}), InitMode::Free);
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.ncl_reachable);
    EXPECT_EQ(r.level_verdict, "unsolvable");
    EXPECT_EQ(r.text().rfind("PASS", 0), 0u);

    ReductionReport b = verify_reduction(aa, suite::config(aa, {"X", "Y", "Y"}), InitMode::Free, 1000);
    EXPECT_FALSE(b.pass);
    EXPECT_EQ(b.level_verdict, "budget");
}
