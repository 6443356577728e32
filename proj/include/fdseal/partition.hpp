#pragma once

#include <string>
#include <vector>

#include "fdseal/relation.hpp"

namespace fdseal {

// One group of records sharing a value tuple on an attribute set. The
// representative is that tuple; size equals the tuple's frequency.
struct EquivalenceClass {
    std::vector<std::string> representative; // projected on attrs, in attr order
    std::vector<size_t> members;             // row positions, sorted ascending
    size_t size() const { return members.size(); }
};

struct Partition {
    AttrSet attrs;
    std::vector<EquivalenceClass> classes; // sorted by smallest member

    size_t class_count() const { return classes.size(); }
    bool all_singletons() const;
    bool has_plural_class() const;

    // row position -> index into classes; rebuilt on demand
    std::vector<size_t> class_of(size_t n_rows) const;
};

Partition compute_partition(const Relation& rel, const AttrSet& attrs);
Partition compute_partition_by_name(const Relation& rel,
                                    const std::vector<std::string>& attr_names);

// Product refinement: result covers attrs(p1) ∪ attrs(p2) and equals
// compute_partition over the union. Both inputs must partition the same
// number of rows.
Partition partition_product(const Partition& p1, const Partition& p2, size_t n_rows);

// true iff every class of p1 is contained in some class of p2
bool refines(const Partition& p1, const Partition& p2, size_t n_rows);

} // namespace fdseal
