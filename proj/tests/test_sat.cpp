#include <gtest/gtest.h>

#include <random>

#include "bloxorz/reduction.hpp"
#include "bloxorz/solver.hpp"
#include "sat_oracle.hpp"

using namespace blox;

TEST(CompileSat, Examples) {
    CnfFormula one{3, {{1, 2, 3}}};
    EXPECT_EQ(bfs_solve(compile_sat(one).level).status, SolveStatus::Solved);
    CnfFormula contra{1, {{1}, {-1}}};
    EXPECT_EQ(bfs_solve(compile_sat(contra).level).status, SolveStatus::Unsolvable);
}

TEST(CompileSat, Errors) {
    EXPECT_THROW(compile_sat({}), EmptyFormula);
    EXPECT_THROW(compile_sat({2, {}}), EmptyFormula);
    EXPECT_THROW(compile_sat({1, {{1, 1, 1, 1}}}), std::invalid_argument);
    EXPECT_THROW(compile_sat({1, {{2}}}), std::invalid_argument);
}

TEST(CompileSat, CrossingsAreFragileExactlyAtNegatedLines) {
    CnfFormula f{2, {{1, -2}, {2}}};
    ReductionArtifact a = compile_sat(f);
    EXPECT_TRUE(validate_level(a.level).empty());
    int fragile = 0;
    for (auto& [c, t] : a.level.tiles)
        if (t.type == TileType::Fragile) {
            ++fragile;
            EXPECT_EQ(a.provenance.at(c).instance, "crossing");
        }
    EXPECT_EQ(fragile, 3);  // one per literal occurrence
    for (auto& [c, t] : a.level.tiles) ASSERT_TRUE(a.provenance.count(c));
}

TEST(CompileSat, Deterministic) {
    CnfFormula f{3, {{1, -2, 3}, {-1}, {2, 3}}};
    EXPECT_EQ(compile_sat(f).level, compile_sat(f).level);
}

TEST(SatEquivalence, ExhaustiveTwoVariables) {
    auto all = sat_oracle::small_formulas();
    EXPECT_GT(all.size(), 100u);
    int sat = 0;
    for (auto& f : all) {
        bool want = sat_oracle::satisfiable(f);
        auto r = bfs_solve(compile_sat(f).level);
        ASSERT_NE(r.status, SolveStatus::BudgetExceeded);
        ASSERT_EQ(r.status == SolveStatus::Solved, want) << sat_oracle::show(f);
        sat += want;
    }
    EXPECT_GT(sat, 0);
    EXPECT_LT(sat, static_cast<int>(all.size()));
}

TEST(SatEquivalence, RandomThreeVariables) {
    std::mt19937 rng(17);
    for (int i = 0; i < 50; ++i) {
        CnfFormula f = sat_oracle::random_formula(rng, 3, 4);
        auto r = bfs_solve(compile_sat(f).level);
        ASSERT_EQ(r.status == SolveStatus::Solved, sat_oracle::satisfiable(f)) << sat_oracle::show(f);
        if (r.solution) EXPECT_TRUE(verify_solution(compile_sat(f).level, r.solution->moves).ok);
    }
}

TEST(Quadratic, Layout) {
    Level two = gen_quadratic(2);
    // s2 t1 start s1 t2 goal
    EXPECT_EQ(two.tiles.at({0, 0}), (Tile{TileType::Switch, 2}));
    EXPECT_EQ(two.tiles.at({1, 0}), (Tile{TileType::Trapdoor, 1}));
    EXPECT_EQ(two.start, (Cell{2, 0}));
    EXPECT_EQ(two.tiles.at({3, 0}), (Tile{TileType::Switch, 1}));
    EXPECT_EQ(two.tiles.at({4, 0}), (Tile{TileType::Trapdoor, 2}));
    EXPECT_EQ(two.goal, (Cell{5, 0}));
    for (int r = 1; r <= 7; ++r) {
        Level lv = gen_quadratic(r);
        EXPECT_TRUE(validate_level(lv).empty());
        EXPECT_EQ(lv.tiles.at({2 * r, 0}), (Tile{TileType::Trapdoor, r})) << "t_r guards the goal";
        EXPECT_EQ(lv.tiles.at({0, 0}), (Tile{TileType::Switch, r})) << "s_r at the far end";
        for (auto& [id, open] : lv.trapdoor_open) EXPECT_TRUE(open);
    }
    EXPECT_THROW(gen_quadratic(0), std::invalid_argument);
}

TEST(Quadratic, LengthsGrowSuperlinearly) {
    std::vector<long> len;
    for (int r = 2; r <= 6; ++r) {
        auto b = bfs_solve(gen_quadratic(r));
        ASSERT_TRUE(b.solution);
        len.push_back(static_cast<long>(b.solution->length()));
    }
    EXPECT_EQ(len.front(), 9);
    for (size_t i = 1; i < len.size(); ++i) EXPECT_GT(len[i], len[i - 1]);
    for (size_t i = 2; i < len.size(); ++i) EXPECT_GT(len[i] - len[i - 1], len[i - 1] - len[i - 2]);
}
