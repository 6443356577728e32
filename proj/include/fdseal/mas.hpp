#pragma once

#include <vector>

#include "fdseal/partition.hpp"
#include "fdseal/relation.hpp"

namespace fdseal {

// Maximal attribute set: has a value combination occurring more than once,
// and no strict superset does.
struct Mas {
    AttrSet attrs;
    Partition partition;
};

struct MasReport {
    std::vector<Mas> mas_list;
    size_t q = 0;             // number of MASs
    size_t overlap_pairs = 0; // h: MAS pairs sharing at least one attribute

    // indices of MAS pairs (i < j) that share an attribute
    std::vector<std::pair<size_t, size_t>> overlapping() const;
};

// Bottom-up lattice walk with apriori pruning. Attributes whose own
// partition is all-singletons can never appear in a MAS and are skipped.
MasReport find_mas(const Relation& rel);

// Independent exhaustive check over all 2^m attribute sets; refuses m > 12.
bool verify_mas(const Relation& rel, const MasReport& report);

} // namespace fdseal
