#include "bloxorz/solver.hpp"

#include <algorithm>
#include <cstring>

namespace blox {

StateCodec::StateCodec(const Board& b)
    : board_(b),
      trap_words_((b.trapdoor_count() + 63) / 64),
      frag_words_((b.fragile_count() + 63) / 64),
      words_(1 + trap_words_ + frag_words_) {}

void StateCodec::encode(const GameState& s, uint64_t* out) const {
    const Cell o = board_.origin();
    const uint64_t ax = static_cast<uint32_t>(s.pose.anchor.x - o.x + 1);
    const uint64_t ay = static_cast<uint32_t>(s.pose.anchor.y - o.y + 1);
    out[0] = static_cast<uint64_t>(s.pose.kind) | (ax << 2) | (ay << 33);
    auto& tw = s.trap_open.words();
    auto& fw = s.consumed.words();
    for (size_t i = 0; i < trap_words_; ++i) out[1 + i] = tw[i];
    for (size_t i = 0; i < frag_words_; ++i) out[1 + trap_words_ + i] = fw[i];
}

GameState StateCodec::decode(const uint64_t* in) const {
    const Cell o = board_.origin();
    GameState s;
    s.pose.kind = static_cast<PoseKind>(in[0] & 3);
    s.pose.anchor.x = static_cast<int>((in[0] >> 2) & 0x7fffffff) - 1 + o.x;
    s.pose.anchor.y = static_cast<int>(in[0] >> 33) - 1 + o.y;
    s.trap_open = Bits(board_.trapdoor_count());
    s.consumed = Bits(board_.fragile_count());
    for (size_t i = 0; i < trap_words_; ++i) s.trap_open.words()[i] = in[1 + i];
    for (size_t i = 0; i < frag_words_; ++i) s.consumed.words()[i] = in[1 + trap_words_ + i];
    return s;
}

namespace {

// Append-only store of fixed-width keys with an open-addressing index.
class StateTable {
public:
    explicit StateTable(size_t width) : w_(width), slots_(1 << 12, kEmpty) {}

    size_t size() const { return n_; }
    const uint64_t* key(uint32_t i) const { return keys_.data() + static_cast<size_t>(i) * w_; }

    // returns (index, inserted)
    std::pair<uint32_t, bool> insert(const uint64_t* k) {
        if ((n_ + 1) * 2 > slots_.size()) grow();
        size_t mask = slots_.size() - 1;
        for (size_t h = hash(k) & mask;; h = (h + 1) & mask) {
            uint32_t s = slots_[h];
            if (s == kEmpty) {
                slots_[h] = static_cast<uint32_t>(n_);
                keys_.insert(keys_.end(), k, k + w_);
                return {static_cast<uint32_t>(n_++), true};
            }
            if (std::memcmp(key(s), k, w_ * sizeof(uint64_t)) == 0) return {s, false};
        }
    }

private:
    static constexpr uint32_t kEmpty = 0xffffffffu;

    uint64_t hash(const uint64_t* k) const {
        uint64_t h = 0x9e3779b97f4a7c15ull;
        for (size_t i = 0; i < w_; ++i) {
            h ^= k[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ull;
            h ^= h >> 31;
        }
        return h;
    }

    void grow() {
        std::vector<uint32_t> ns(slots_.size() * 2, kEmpty);
        size_t mask = ns.size() - 1;
        for (uint32_t i = 0; i < n_; ++i) {
            size_t h = hash(key(i)) & mask;
            while (ns[h] != kEmpty) h = (h + 1) & mask;
            ns[h] = i;
        }
        slots_.swap(ns);
    }

    size_t w_;
    size_t n_ = 0;
    std::vector<uint64_t> keys_;
    std::vector<uint32_t> slots_;
};

}  // namespace

BfsResult bfs_solve(const Level& level, const BfsOptions& opt) {
    BfsResult res;
    const Board board(level);
    const StateCodec codec(board);
    const size_t W = codec.words();
    StateTable table(W);
    std::vector<uint32_t> parent;
    std::vector<uint8_t> via;
    std::vector<uint64_t> buf(W);

    GameState start = opt.from ? *opt.from : board.initial_state();
    codec.encode(start, buf.data());
    table.insert(buf.data());
    parent.push_back(0);
    via.push_back(0);

    auto finish = [&](uint32_t idx) {
        Solution sol;
        for (uint32_t i = idx; i != 0; i = parent[i]) sol.moves.push_back(static_cast<Direction>(via[i]));
        std::reverse(sol.moves.begin(), sol.moves.end());
        sol.final_state = codec.decode(table.key(idx));
        res.status = SolveStatus::Solved;
        res.solution = std::move(sol);
        res.explored = table.size();
    };

    if (board.is_goal(start)) {
        finish(0);
        return res;
    }

    size_t layer_begin = 0;
    size_t layer_end = 1;
    res.max_frontier = 1;
    while (layer_begin < layer_end) {
        for (size_t i = layer_begin; i < layer_end; ++i) {
            const GameState s = codec.decode(table.key(static_cast<uint32_t>(i)));
            for (Direction d : kDirections) {
                auto o = board.apply_move(s, d);
                if (!o.ok()) continue;
                codec.encode(*o.state, buf.data());
                auto [idx, fresh] = table.insert(buf.data());
                if (!fresh) continue;
                parent.push_back(static_cast<uint32_t>(i));
                via.push_back(static_cast<uint8_t>(d));
                if (board.is_goal(*o.state)) {
                    finish(idx);
                    return res;
                }
                if (table.size() >= opt.budget) {
                    res.status = SolveStatus::BudgetExceeded;
                    res.explored = table.size();
                    return res;
                }
            }
        }
        layer_begin = layer_end;
        layer_end = table.size();
        res.max_frontier = std::max<uint64_t>(res.max_frontier, layer_end - layer_begin);
    }
    res.status = SolveStatus::Unsolvable;
    res.explored = table.size();
    return res;
}

ReachResult count_reachable(const Level& level, uint64_t budget) {
    ReachResult r;
    const Board board(level);
    const StateCodec codec(board);
    StateTable table(codec.words());
    std::vector<uint64_t> buf(codec.words());
    codec.encode(board.initial_state(), buf.data());
    table.insert(buf.data());
    for (size_t i = 0; i < table.size(); ++i) {
        const GameState s = codec.decode(table.key(static_cast<uint32_t>(i)));
        for (Direction d : kDirections) {
            auto o = board.apply_move(s, d);
            if (!o.ok()) continue;
            codec.encode(*o.state, buf.data());
            table.insert(buf.data());
            if (table.size() >= budget) {
                r.states = table.size();
                r.budget_hit = true;
                return r;
            }
        }
    }
    r.states = table.size();
    return r;
}

VerifyOutcome verify_solution(const Level& level, const std::vector<Direction>& moves) {
    VerifyOutcome v;
    const Board board(level);
    GameState s = board.initial_state();
    for (size_t i = 0; i < moves.size(); ++i) {
        auto o = board.apply_move(s, moves[i]);
        if (!o.ok()) {
            v.failed_at = i;
            v.error = o.error;
            return v;
        }
        s = std::move(*o.state);
    }
    if (!board.is_goal(s)) {
        v.failed_at = moves.size();
        return v;
    }
    v.ok = true;
    return v;
}

}  // namespace blox
