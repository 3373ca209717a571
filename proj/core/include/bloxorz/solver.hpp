#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bloxorz/engine.hpp"

namespace blox {

inline constexpr uint64_t kDefaultStateBudget = 10'000'000;

struct Solution {
    std::vector<Direction> moves;
    GameState final_state;
    size_t length() const { return moves.size(); }
};

enum class SolveStatus { Solved, Unsolvable, BudgetExceeded };

struct BfsOptions {
    uint64_t budget = kDefaultStateBudget;
    std::optional<GameState> from;  // defaults to the level's initial state
};

struct BfsResult {
    SolveStatus status = SolveStatus::Unsolvable;
    std::optional<Solution> solution;
    uint64_t explored = 0;      // distinct states discovered
    uint64_t max_frontier = 0;  // widest BFS layer
};

BfsResult bfs_solve(const Level& level, const BfsOptions& opt = {});

// Packs a state into fixed-width words; injective for states of one board.
class StateCodec {
public:
    explicit StateCodec(const Board& b);
    size_t words() const { return words_; }
    void encode(const GameState& s, uint64_t* out) const;
    GameState decode(const uint64_t* in) const;

private:
    const Board& board_;
    size_t trap_words_, frag_words_, words_;
};

// Counts every state reachable from the start (capped by budget).
struct ReachResult {
    uint64_t states = 0;
    bool budget_hit = false;
};
ReachResult count_reachable(const Level& level, uint64_t budget = kDefaultStateBudget);

enum class ClosureError { VariantMismatch, FragilePresent };

struct ClosureResult {
    std::optional<ClosureError> error;
    std::optional<Solution> solution;  // empty with no error means unsolvable
    size_t iterations = 0;
    std::vector<size_t> reach_sizes;  // |R| per iteration, for the monotonicity check
};

ClosureResult cube_closure_solve(const Level& level);

struct VerifyOutcome {
    bool ok = false;
    std::optional<size_t> failed_at;  // move index; == moves.size() when goal not reached
    std::optional<MoveError> error;
};
VerifyOutcome verify_solution(const Level& level, const std::vector<Direction>& moves);

}  // namespace blox
