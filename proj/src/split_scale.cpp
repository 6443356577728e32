#include "fdseal/split_scale.hpp"

#include <algorithm>

namespace fdseal {

std::vector<size_t> split_pieces(size_t f, uint32_t factor) {
    std::vector<size_t> out;
    const size_t base = f / factor;
    const size_t rem = f % factor;
    for (uint32_t i = 0; i < factor; ++i) {
        size_t s = base + (i < rem ? 1 : 0);
        if (s > 0) out.push_back(s);
    }
    return out;
}

static std::vector<size_t> emitted_pieces(const std::vector<size_t>& sizes, size_t j,
                                          uint32_t factor) {
    std::vector<size_t> pieces;
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (i + 1 < j) {
            pieces.push_back(sizes[i]);
        } else {
            auto parts = split_pieces(sizes[i], factor);
            pieces.insert(pieces.end(), parts.begin(), parts.end());
        }
    }
    return pieces;
}

size_t pad_target(const std::vector<size_t>& sizes, size_t j, uint32_t factor) {
    size_t target = 0;
    for (size_t p : emitted_pieces(sizes, j, factor)) target = std::max(target, p);
    return target;
}

size_t pad_cost(const std::vector<size_t>& sizes, size_t j, uint32_t factor) {
    if (factor < 2) throw_input("pad_cost: split factor must be at least 2");
    if (j < 1 || j > sizes.size() + 1) throw_input("pad_cost: split point out of range");
    auto pieces = emitted_pieces(sizes, j, factor);
    size_t target = 0;
    for (size_t p : pieces) target = std::max(target, p);
    size_t cost = 0;
    for (size_t p : pieces) cost += target - p;
    return cost;
}

SplitDecision find_split_point(const std::vector<size_t>& sizes, uint32_t factor) {
    if (factor < 2) throw_input("find_split_point: split factor must be at least 2");
    if (sizes.empty()) throw_input("find_split_point: empty group");
    const size_t max_size = *std::max_element(sizes.begin(), sizes.end());

    SplitDecision best;
    bool have = false;
    for (size_t j = 1; j <= sizes.size() + 1; ++j) {
        size_t target = pad_target(sizes, j, factor);
        if (max_size >= 2 && target < 2) continue;
        size_t cost = pad_cost(sizes, j, factor);
        if (!have || cost < best.cost || (cost == best.cost && j > best.j)) {
            best = SplitDecision{j, cost, target};
            have = true;
        }
    }
    if (!have) throw_internal("find_split_point: no feasible split point");
    return best;
}

StagedMas plan_split_scale(const Mas& mas, size_t mas_index, const SecurityConfig& config,
                           size_t n_rows, TokenGen& tokens) {
    StagedMas staged;
    staged.mas_index = mas_index;
    staged.attrs = mas.attrs;
    staged.piece_of_row.assign(n_rows, SIZE_MAX);
    staged.real_size_of_row.assign(n_rows, 0);
    staged.class_of_row.assign(n_rows, SIZE_MAX);

    auto ecgs = build_ecgs(mas, mas_index, config, tokens);
    staged.ecgs.reserve(ecgs.size());

    for (auto& ecg : ecgs) {
        StagedEcg se;
        se.ecg = std::move(ecg);

        se.member_order.resize(se.ecg.members.size());
        for (size_t i = 0; i < se.member_order.size(); ++i) se.member_order[i] = i;
        std::sort(se.member_order.begin(), se.member_order.end(), [&](size_t a, size_t b) {
            const auto& ma = se.ecg.members[a];
            const auto& mb = se.ecg.members[b];
            if (ma.size != mb.size) return ma.size < mb.size;
            return ma.min_record < mb.min_record;
        });

        std::vector<size_t> sizes;
        sizes.reserve(se.member_order.size());
        for (size_t mi : se.member_order) sizes.push_back(se.ecg.members[mi].size);
        se.split = find_split_point(sizes, config.split_factor);

        staged.fake_rows_total += se.ecg.fake_rows;

        for (size_t pos = 0; pos < se.member_order.size(); ++pos) {
            const size_t mi = se.member_order[pos];
            const auto& member = se.ecg.members[mi];
            std::vector<size_t> piece_sizes;
            if (pos + 1 < se.split.j) piece_sizes = {member.size};
            else piece_sizes = split_pieces(member.size, config.split_factor);

            size_t offset = 0;
            for (size_t pi = 0; pi < piece_sizes.size(); ++pi) {
                StagedPiece piece;
                piece.ecg_index = staged.ecgs.size();
                piece.member_index = mi;
                piece.copy_index = pi + 1;
                piece.scope = se.ecg.id;
                piece.pad = se.split.target - piece_sizes[pi];
                if (member.fake) {
                    piece.fake_rows = piece_sizes[pi];
                } else {
                    const auto& members = mas.partition.classes[member.class_index].members;
                    piece.rows.assign(members.begin() + offset,
                                      members.begin() + offset + piece_sizes[pi]);
                }
                offset += piece_sizes[pi];
                staged.pad_rows_total += piece.pad;
                se.pieces.push_back(std::move(piece));
            }
        }
        staged.ecgs.push_back(std::move(se));
    }

    // flat piece table and per-row lookups for the conflict stage
    size_t class_base = 0;
    for (size_t ei = 0; ei < staged.ecgs.size(); ++ei) {
        auto& se = staged.ecgs[ei];
        for (size_t pi = 0; pi < se.pieces.size(); ++pi) {
            const size_t flat = staged.flat_pieces.size();
            staged.flat_pieces.emplace_back(ei, pi);
            const size_t class_id = class_base + se.pieces[pi].member_index;
            for (size_t row : se.pieces[pi].rows) {
                staged.piece_of_row[row] = flat;
                staged.real_size_of_row[row] = se.pieces[pi].rows.size();
                staged.class_of_row[row] = class_id;
            }
        }
        class_base += se.ecg.members.size();
    }
    return staged;
}

} // namespace fdseal
