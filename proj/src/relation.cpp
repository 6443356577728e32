#include "fdseal/relation.hpp"

#include <algorithm>
#include <unordered_set>

namespace fdseal {

AttrIndex Relation::attr_index(const std::string& name) const {
    for (size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i] == name) return static_cast<AttrIndex>(i);
    throw_input("unknown attribute: " + name);
}

bool Relation::has_attr(const std::string& name) const {
    return std::find(attributes.begin(), attributes.end(), name) != attributes.end();
}

void Relation::check_invariants() const {
    std::unordered_set<RecordId> seen;
    seen.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.cells.size() != attributes.size())
            throw_internal("record cell count does not match schema arity");
        if (!seen.insert(r.id).second)
            throw_internal("duplicate record id");
    }
}

AttrSet attr_set(std::initializer_list<AttrIndex> idx) {
    AttrSet s(idx);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

AttrSet attr_union(const AttrSet& a, const AttrSet& b) {
    AttrSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

AttrSet attr_intersect(const AttrSet& a, const AttrSet& b) {
    AttrSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

AttrSet attr_minus(const AttrSet& a, const AttrSet& b) {
    AttrSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool attr_subset(const AttrSet& a, const AttrSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string attr_names(const Relation& rel, const AttrSet& attrs) {
    std::string out;
    for (size_t i = 0; i < attrs.size(); ++i) {
        if (i) out += ",";
        out += rel.attributes[attrs[i]];
    }
    return out;
}

size_t frequency(const Relation& rel, const std::vector<std::string>& attrs,
                 const std::vector<std::string>& value) {
    if (attrs.size() != value.size())
        throw_input("frequency: attribute and value tuple lengths differ");
    std::vector<AttrIndex> idx;
    idx.reserve(attrs.size());
    for (const auto& a : attrs) idx.push_back(rel.attr_index(a));

    size_t count = 0;
    for (const auto& r : rel.rows) {
        bool match = true;
        for (size_t i = 0; i < idx.size(); ++i) {
            if (r.cells[idx[i]] != value[i]) {
                match = false;
                break;
            }
        }
        if (match) ++count;
    }
    return count;
}

} // namespace fdseal
