#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdseal/error.hpp"

namespace fdseal {

using RecordId = uint64_t;
using AttrIndex = uint32_t;
using AttrSet = std::vector<AttrIndex>; // kept sorted, no duplicates

// Where a row of an outsourced table came from. Only the data owner ever
// sees this; the outsourced file carries no trace of it.
struct Provenance {
    enum class Kind : uint8_t {
        original,
        scale_copy,     // padding row duplicating an emitted ciphertext tuple
        conflict_split, // one side of a conflict-resolution replacement pair
        fake_ec,        // member row of a padding equivalence class
        fp_artificial,  // member of an inserted violation pair
    };

    Kind kind = Kind::original;
    RecordId of = 0;      // original / conflict_split / scale_copy: source id
    uint32_t side = 0;    // conflict_split: 1 or 2; fp_artificial: 1 or 2
    uint32_t pair_index = 0; // fp_artificial

    static Provenance original(RecordId id) { return {Kind::original, id, 0, 0}; }
    static Provenance scale_copy(RecordId of) { return {Kind::scale_copy, of, 0, 0}; }
    static Provenance conflict_split(RecordId of, uint32_t side) {
        return {Kind::conflict_split, of, side, 0};
    }
    static Provenance fake_ec() { return {Kind::fake_ec, 0, 0, 0}; }
    static Provenance fp_artificial(uint32_t pair_index, uint32_t side) {
        return {Kind::fp_artificial, 0, side, pair_index};
    }
};

struct Record {
    RecordId id = 0;
    std::vector<std::string> cells;
    Provenance provenance;
};

// A rectangular table of opaque text tokens. Cells of an encrypted relation
// hold the serialized ciphertext form; FD machinery only ever compares
// tokens for equality, so plaintext and ciphertext tables share this type.
struct Relation {
    enum class CellKind : uint8_t { plain, cipher };

    std::vector<std::string> attributes;
    std::vector<Record> rows;
    CellKind cell_kind = CellKind::plain;

    size_t arity() const { return attributes.size(); }
    size_t size() const { return rows.size(); }

    AttrIndex attr_index(const std::string& name) const;
    bool has_attr(const std::string& name) const;

    // throws Error(internal) if a structural invariant is broken
    void check_invariants() const;
};

AttrSet attr_set(std::initializer_list<AttrIndex> idx);
AttrSet attr_union(const AttrSet& a, const AttrSet& b);
AttrSet attr_intersect(const AttrSet& a, const AttrSet& b);
AttrSet attr_minus(const AttrSet& a, const AttrSet& b);
bool attr_subset(const AttrSet& a, const AttrSet& b); // a ⊆ b
std::string attr_names(const Relation& rel, const AttrSet& attrs);

// Number of records whose projection on `attrs` equals `value`.
// attrs empty matches every record.
size_t frequency(const Relation& rel, const std::vector<std::string>& attrs,
                 const std::vector<std::string>& value);

} // namespace fdseal
