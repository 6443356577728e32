#pragma once

#include <cstdint>
#include <vector>

#include "fdseal/rng.hpp"
#include "fdseal/split_scale.hpp"

namespace fdseal {

// Conflicts between independently encrypted attribute sets. Type 1: a record
// is scale-padded under one set but not another. Type 2: two overlapping
// sets pin a shared attribute of one record to different ciphertexts.
struct ConflictRecord {
    enum class Kind : uint8_t { type1, type2 };
    Kind kind = Kind::type2;
    size_t row = 0;    // original row position
    size_t mas_x = 0;  // scaling MAS (type 1) / first of the pair (type 2)
    size_t mas_y = 0;  // type 2 only
    AttrSet shared;    // Z = attrs(x) ∩ attrs(y), type 2 only
    size_t copies = 0; // type 1: total copies the record must reach
};

struct ConflictReport {
    size_t type1_count = 0;
    size_t type2_count = 0;   // number of conflicting piece pairs (static)
    size_t records_added = 0; // replacement rows created by type-2 handling
    std::vector<std::pair<size_t, size_t>> resolution_order;
};

// Which MAS claims of one original record a physical output row carries.
// A record starts as one row claiming every MAS; each type-2 conflict forces
// the claim of the pair's second MAS onto a row of its own.
struct VirtualRowPlan {
    size_t base_row = 0;
    std::vector<size_t> claims; // sorted MAS indices
    bool is_base = false;
};

struct ConflictResolution {
    std::vector<VirtualRowPlan> rows;
    // carrier[row][mas] -> index into rows: where that MAS's claim lives
    std::vector<std::vector<size_t>> carrier;
    ConflictReport report;
};

// Static detection against the staged plans. A record is torn between two
// overlapping MASs when both of its pieces hold two or more real records:
// each side then demands equality with a different set of neighbours.
// Throws Error(internal) when an equivalence-class pair shares two or more
// records, which contradicts MAS maximality.
std::vector<ConflictRecord> detect_conflicts(const std::vector<StagedMas>& staged,
                                             const MasReport& report, size_t n_rows);

// Moves mas_y's claim for `row` onto its own output row unless it is
// already alone. Returns true when a row was added.
bool resolve_type2(ConflictResolution& res, size_t row, size_t mas_y);

// Full resolution: detects conflicts, walks overlapping pairs in seeded
// random order, and returns the virtual-row layout. The resulting row count
// does not depend on the order.
ConflictResolution resolve_all(const std::vector<StagedMas>& staged, const MasReport& report,
                               size_t n_rows, Rng& rng);

} // namespace fdseal
