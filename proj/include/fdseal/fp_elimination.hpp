#pragma once

#include <string>
#include <vector>

#include "fdseal/grouping.hpp"
#include "fdseal/mas.hpp"

namespace fdseal {

// Candidate rule X -> Y inside one maximal attribute set. Nodes are shared
// between MASs: each (lhs, rhs) combination is checked once.
struct FdLatticeNode {
    AttrSet lhs;
    AttrIndex rhs = 0;
    size_t parent_mas = 0; // canonical MAS whose partition is consulted
};

struct FdLattice {
    std::vector<AttrSet> level1;      // one per MAS
    std::vector<FdLatticeNode> nodes; // deduplicated, |lhs| descending then lexicographic
};

FdLattice build_fd_lattice(const MasReport& report);

// true iff two classes of the MAS partition agree on lhs but differ on rhs,
// evaluated on the original plaintext partition
bool has_violation_witness(const Partition& mas_partition, const AttrSet& mas_attrs,
                           const AttrSet& lhs, AttrIndex rhs);

// Two records agreeing exactly on the node's lhs and nowhere else. Tokens
// are fresh everywhere; the lhs tokens are shared within the pair.
struct ArtificialPairPlan {
    size_t node = 0; // index into the lattice the plan was built from
    AttrSet lhs;
    AttrIndex rhs = 0;
    size_t pair_index = 0;
    std::vector<std::string> row1; // full-width plaintext token rows
    std::vector<std::string> row2;
};

struct FpPlan {
    FdLattice lattice;
    std::vector<size_t> inserted_nodes; // maximum false positives found
    std::vector<ArtificialPairPlan> pairs;
    size_t rows_added() const { return pairs.size() * 2; }
};

// Walks the lattice top-down; for every maximum false-positive rule, plans
// k = ⌈1/α⌉ artificial pairs. Witness checks run on the plaintext
// partitions: ciphertext classes are collision-free by construction and
// would never show one.
FpPlan plan_fp_elimination(const Relation& original, const MasReport& report,
                           const SecurityConfig& config, TokenGen& tokens);

} // namespace fdseal
