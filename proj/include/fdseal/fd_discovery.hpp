#pragma once

#include <string>
#include <vector>

#include "fdseal/partition.hpp"
#include "fdseal/relation.hpp"

namespace fdseal {

// Non-trivial functional dependency with a single right-hand attribute and
// non-empty left-hand side.
struct Fd {
    AttrSet lhs;
    AttrIndex rhs = 0;

    bool operator==(const Fd&) const = default;
    auto operator<=>(const Fd&) const = default;
};

struct FdSet {
    std::vector<Fd> fds; // sorted, minimal, deduplicated
    bool contains(const Fd& fd) const;
};

struct FdDiff {
    std::vector<Fd> only_a;
    std::vector<Fd> only_b;
    bool empty() const { return only_a.empty() && only_b.empty(); }
};

// Level-wise discovery over stripped partitions with rhs-candidate pruning.
// Returns exactly the minimal non-trivial FDs. Refuses m > max_attrs.
FdSet discover_fds(const Relation& rel, size_t max_attrs = 20);

// π_lhs refines π_{rhs}. Trivial FDs (rhs ∈ lhs) are always true.
bool fd_holds(const Relation& rel, const Fd& fd);

FdDiff compare_fd_sets(const FdSet& a, const FdSet& b);

std::string fd_to_string(const std::vector<std::string>& attributes, const Fd& fd);

} // namespace fdseal
