#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdseal/grouping.hpp"

namespace fdseal {

// Balanced piece sizes for splitting a class of size f into `factor` copies:
// sizes differ by at most one and sum to f. Pieces of size zero (f < factor)
// are dropped.
std::vector<size_t> split_pieces(size_t f, uint32_t factor);

// Exact number of scale copies needed for ascending sizes and 1-based split
// point j: members before j stay whole, members from j on split into factor
// pieces, everything padded to the largest emitted piece.
size_t pad_cost(const std::vector<size_t>& sizes, size_t j, uint32_t factor);

size_t pad_target(const std::vector<size_t>& sizes, size_t j, uint32_t factor);

struct SplitDecision {
    size_t j = 0;      // 1-based; j = k+1 means nothing is split
    size_t cost = 0;   // scale copies added
    size_t target = 0; // homogenized frequency of the group
};

// Minimizes pad_cost over all split points, ties broken toward larger j.
// Split points whose target frequency would drop to 1 are excluded when the
// group has any member of size ≥ 2: a group flattened to all-unique values
// erases the repeated combinations that keep discovered structure honest.
SplitDecision find_split_point(const std::vector<size_t>& sizes, uint32_t factor);

// --- staged per-MAS plan, consumed by conflict resolution ---

struct StagedPiece {
    size_t ecg_index = 0;
    size_t member_index = 0; // into Ecg::members
    uint64_t copy_index = 1;
    std::vector<size_t> rows; // original row positions (empty for fake members)
    size_t fake_rows = 0;     // synthetic rows contributed when the member is fake
    size_t pad = 0;           // scale copies on top
    std::string scope;        // encryption scope (the owning group id)
};

struct StagedEcg {
    Ecg ecg;
    SplitDecision split;
    std::vector<size_t> member_order; // member indices sorted ascending by size
    std::vector<StagedPiece> pieces;
};

struct StagedMas {
    size_t mas_index = 0;
    AttrSet attrs;
    std::vector<StagedEcg> ecgs;
    std::vector<size_t> piece_of_row;     // row -> flat piece index
    std::vector<size_t> real_size_of_row; // row -> # original records in its piece
    std::vector<size_t> class_of_row;     // row -> flat (ecg, member) id
    std::vector<std::pair<size_t, size_t>> flat_pieces; // (ecg index, piece index)

    size_t fake_rows_total = 0;
    size_t pad_rows_total = 0;

    const StagedPiece& piece(size_t flat) const {
        return ecgs[flat_pieces[flat].first].pieces[flat_pieces[flat].second];
    }
    StagedPiece& piece(size_t flat) {
        return ecgs[flat_pieces[flat].first].pieces[flat_pieces[flat].second];
    }
};

// Runs grouping and split-point planning for one MAS and assigns records to
// pieces (record-id order, balanced chunks).
StagedMas plan_split_scale(const Mas& mas, size_t mas_index, const SecurityConfig& config,
                           size_t n_rows, TokenGen& tokens);

} // namespace fdseal
