// Tile stencils shared by the standalone gadget templates and compile_ncl.
//
// Everything lives on 1-wide corridors. A 1x2 block moving along a 1-wide
// corridor stands on every third cell, so corridor corners fix the phase:
// standing cells sit on a 3-lattice and the two cells in between are only
// ever covered together. Switch pairs use exactly that.
#pragma once

#include <array>
#include <string>

#include "bloxorz/reduction.hpp"

namespace blox::detail {

// Edge lane, positions 0..54 left to right. Corners at 0 and 54 turn down.
inline constexpr int kLaneLen = 55;
inline constexpr std::array<int, 3> kTrapA = {3, 6, 9};      // A1 A2 A3
inline constexpr std::array<int, 3> kTrapB = {51, 48, 45};   // B1 B2 B3
// first cell of each switch pair: (A1,v1) (A2,v2) (A3,v3) (B3,u3) (B2,u2) (B1,u1)
inline constexpr std::array<int, 6> kPair = {10, 16, 22, 28, 34, 40};
// normal pair right after each switch pair; a crossing can pass there
inline constexpr std::array<int, 6> kPlainPair = {13, 19, 25, 31, 37, 43};

struct LaneSpec {
    Cell origin;  // position 0
    std::string instance;
    std::array<int, 3> a{}, b{};            // lane trapdoor ids A1..3, B1..3
    std::array<int, 3> left{}, right{};     // slot trapdoor ids toggled with A_i (v_i) / B_i (u_i)
    bool a_open = false, b_open = true;
    // per pair: true puts the A/B switch on the first cell, false the slot switch
    std::array<bool, 6> lane_first{true, true, true, true, true, true};
};

// index i (0-based) of pair k: pairs 0..2 carry A_{k+1}, pairs 3..5 carry B_{6-k}
inline int pair_index(int k) { return k < 3 ? k : 5 - k; }

inline void stamp_lane(LevelBuilder& b, const LaneSpec& s) {
    auto at = [&](int p) { return Cell{s.origin.x + p, s.origin.y}; };
    for (int p = 0; p < kLaneLen; ++p) {
        bool special = false;
        for (int i = 0; i < 3; ++i) special = special || p == kTrapA[i] || p == kTrapB[i];
        for (int k : kPair) special = special || p == k || p == k + 1;
        if (!special) b.normal(at(p), {s.instance, p == 0 || p == kLaneLen - 1 ? "corner" : "lane"});
    }
    for (int i = 0; i < 3; ++i) {
        b.trapdoor(at(kTrapA[i]), s.a[i], s.a_open, {s.instance, "A" + std::to_string(i + 1)});
        b.trapdoor(at(kTrapB[i]), s.b[i], s.b_open, {s.instance, "B" + std::to_string(i + 1)});
    }
    for (int k = 0; k < 6; ++k) {
        int i = pair_index(k);
        bool a_side = k < 3;
        std::string n = std::to_string(i + 1);
        int lane_id = a_side ? s.a[i] : s.b[i];
        int slot_id = a_side ? s.left[i] : s.right[i];
        std::string lane_role = (a_side ? "switch:A" : "switch:B") + n;
        std::string slot_role = (a_side ? "switch:v" : "switch:u") + n;
        Cell first = at(kPair[k]), second = at(kPair[k] + 1);
        if (s.lane_first[k]) {
            b.switch_for(first, lane_id, {s.instance, lane_role});
            b.switch_for(second, slot_id, {s.instance, slot_role});
        } else {
            b.switch_for(first, slot_id, {s.instance, slot_role});
            b.switch_for(second, lane_id, {s.instance, lane_role});
        }
    }
}

enum class CopyKind { Or, And };

struct CopySpec {
    Cell corner;   // lane corner the copy hangs from
    int dir = 1;   // ladder grows toward +x (1) or -x (-1)
    CopyKind kind = CopyKind::Or;
    std::string instance;
    std::array<int, 3> slot{};        // OR: any order; AND: w2, w1a, w1b
    std::array<bool, 3> open{};
    std::array<std::string, 3> slot_role;
    int exit_len = 6;                 // spine length below the ladder (6 reaches the hub row)
};

inline constexpr int kLadderTop = 3;
inline constexpr int kLadderBottom = 9;

// Spine down from the corner, a ladder whose rungs carry the gates, and an
// exit spine. OR: three rungs with one gate each. AND: one rung gated by w2,
// one rung gated by w1a and w1b in series.
inline Cell stamp_copy(LevelBuilder& b, const CopySpec& s) {
    auto at = [&](int dx, int dy) { return Cell{s.corner.x + s.dir * dx, s.corner.y + dy}; };
    const Provenance wire{s.instance, "corridor"};
    b.line(at(0, 1), at(0, kLadderTop), wire);
    int rungs = s.kind == CopyKind::Or ? 3 : 2;
    b.line(at(0, kLadderTop), at(3 * (rungs - 1), kLadderTop), wire);
    b.line(at(0, kLadderBottom), at(3 * (rungs - 1), kLadderBottom), wire);
    for (int r = 0; r < rungs; ++r) {
        for (int y = kLadderTop + 1; y < kLadderBottom; ++y) {
            int gate = -1;
            if (s.kind == CopyKind::Or && y == 6) gate = r;
            if (s.kind == CopyKind::And && r == 0 && y == 6) gate = 0;
            if (s.kind == CopyKind::And && r == 1 && y == 5) gate = 1;
            if (s.kind == CopyKind::And && r == 1 && y == 7) gate = 2;
            if (gate < 0) b.normal(at(3 * r, y), wire);
            else b.trapdoor(at(3 * r, y), s.slot[gate], s.open[gate], {s.instance, s.slot_role[gate]});
        }
    }
    b.line(at(0, kLadderBottom), at(0, kLadderBottom + s.exit_len), wire);
    return at(0, kLadderBottom + s.exit_len);
}

}  // namespace blox::detail
