#include "fdseal/conflict.hpp"

#include <algorithm>
#include <unordered_map>

namespace fdseal {

std::vector<ConflictRecord> detect_conflicts(const std::vector<StagedMas>& staged,
                                             const MasReport& report, size_t n_rows) {
    std::vector<ConflictRecord> out;
    if (staged.size() < 2) return out;

    // type 1: padded pieces demand copies that no other MAS asked for
    for (const auto& sm : staged) {
        for (const auto& se : sm.ecgs) {
            for (const auto& piece : se.pieces) {
                if (piece.pad == 0 || piece.rows.empty()) continue;
                ConflictRecord c;
                c.kind = ConflictRecord::Kind::type1;
                c.row = piece.rows.front();
                c.mas_x = sm.mas_index;
                c.copies = piece.rows.size() + piece.pad;
                out.push_back(std::move(c));
            }
        }
    }

    // type 2: per overlapping pair, records whose pieces are plural on both
    // sides. An EC pair sharing two records cannot happen for maximal sets.
    for (auto [i, j] : report.overlapping()) {
        const auto& si = staged[i];
        const auto& sj = staged[j];
        AttrSet shared = attr_intersect(si.attrs, sj.attrs);

        std::unordered_map<uint64_t, size_t> ec_pair_seen;
        for (size_t row = 0; row < n_rows; ++row) {
            const size_t pi = si.piece_of_row[row];
            const size_t pj = sj.piece_of_row[row];
            if (pi == SIZE_MAX || pj == SIZE_MAX)
                throw_internal("detect_conflicts: record missing from a MAS partition");

            // class identity ignores the copy split: count record overlap of
            // the underlying equivalence classes
            const uint64_t ec_key = static_cast<uint64_t>(si.class_of_row[row]) << 32 |
                                    static_cast<uint64_t>(sj.class_of_row[row]);
            if (++ec_pair_seen[ec_key] > 1)
                throw_internal("equivalence-class pair shares multiple records; "
                               "maximality of attribute sets is violated");

            if (si.real_size_of_row[row] >= 2 && sj.real_size_of_row[row] >= 2) {
                ConflictRecord c;
                c.kind = ConflictRecord::Kind::type2;
                c.row = row;
                c.mas_x = i;
                c.mas_y = j;
                c.shared = shared;
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

bool resolve_type2(ConflictResolution& res, size_t row, size_t mas_y) {
    size_t host = res.carrier[row][mas_y];
    auto& host_row = res.rows[host];
    if (host_row.claims.size() == 1) return false; // already on its own row

    host_row.claims.erase(
        std::remove(host_row.claims.begin(), host_row.claims.end(), mas_y),
        host_row.claims.end());

    VirtualRowPlan split;
    split.base_row = row;
    split.claims = {mas_y};
    split.is_base = false;
    res.rows.push_back(std::move(split));
    res.carrier[row][mas_y] = res.rows.size() - 1;
    return true;
}

ConflictResolution resolve_all(const std::vector<StagedMas>& staged, const MasReport& report,
                               size_t n_rows, Rng& rng) {
    ConflictResolution res;
    res.rows.reserve(n_rows);
    const size_t q = staged.size();

    std::vector<size_t> all_claims(q);
    for (size_t i = 0; i < q; ++i) all_claims[i] = i;
    for (size_t row = 0; row < n_rows; ++row) {
        VirtualRowPlan vr;
        vr.base_row = row;
        vr.claims = all_claims;
        vr.is_base = true;
        res.rows.push_back(std::move(vr));
    }
    res.carrier.assign(n_rows, std::vector<size_t>(q, 0));
    for (size_t row = 0; row < n_rows; ++row)
        for (size_t m = 0; m < q; ++m)
            res.carrier[row][m] = row;

    auto conflicts = detect_conflicts(staged, report, n_rows);
    for (const auto& c : conflicts) {
        if (c.kind == ConflictRecord::Kind::type1) res.report.type1_count++;
        else res.report.type2_count++;
    }

    // the pair order is randomized but the detached-claim set is not order
    // sensitive, so the output row count never varies
    auto pairs = report.overlapping();
    rng.shuffle(pairs);
    res.report.resolution_order = pairs;

    for (auto [i, j] : pairs) {
        for (const auto& c : conflicts) {
            if (c.kind != ConflictRecord::Kind::type2) continue;
            if (c.mas_x != i || c.mas_y != j) continue;
            if (resolve_type2(res, c.row, c.mas_y))
                res.report.records_added++;
        }
    }
    return res;
}

} // namespace fdseal
