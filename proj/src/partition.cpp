#include "fdseal/partition.hpp"

#include <algorithm>
#include <unordered_map>

namespace fdseal {

bool Partition::all_singletons() const {
    for (const auto& c : classes)
        if (c.size() > 1) return false;
    return true;
}

bool Partition::has_plural_class() const { return !all_singletons(); }

std::vector<size_t> Partition::class_of(size_t n_rows) const {
    std::vector<size_t> out(n_rows, SIZE_MAX);
    for (size_t ci = 0; ci < classes.size(); ++ci)
        for (size_t row : classes[ci].members)
            out[row] = ci;
    return out;
}

static void sort_classes(Partition& p) {
    for (auto& c : p.classes)
        std::sort(c.members.begin(), c.members.end());
    std::sort(p.classes.begin(), p.classes.end(),
              [](const EquivalenceClass& a, const EquivalenceClass& b) {
                  return a.members.front() < b.members.front();
              });
}

Partition compute_partition(const Relation& rel, const AttrSet& attrs) {
    if (attrs.empty()) throw_input("compute_partition: empty attribute set");
    for (AttrIndex a : attrs)
        if (a >= rel.arity()) throw_input("compute_partition: attribute index out of range");

    Partition p;
    p.attrs = attrs;

    // key rows by their projected tuple, using \x1F as separator; tokens are
    // free-form so lengths are embedded to keep keys unambiguous
    std::unordered_map<std::string, size_t> index;
    index.reserve(rel.size());
    std::string key;
    for (size_t row = 0; row < rel.rows.size(); ++row) {
        key.clear();
        for (AttrIndex a : attrs) {
            const std::string& tok = rel.rows[row].cells[a];
            key += std::to_string(tok.size());
            key.push_back('\x1F');
            key += tok;
        }
        auto [it, fresh] = index.try_emplace(key, p.classes.size());
        if (fresh) {
            EquivalenceClass ec;
            ec.representative.reserve(attrs.size());
            for (AttrIndex a : attrs) ec.representative.push_back(rel.rows[row].cells[a]);
            p.classes.push_back(std::move(ec));
        }
        p.classes[it->second].members.push_back(row);
    }
    sort_classes(p);
    return p;
}

Partition compute_partition_by_name(const Relation& rel,
                                    const std::vector<std::string>& attr_names) {
    AttrSet attrs;
    attrs.reserve(attr_names.size());
    for (const auto& n : attr_names) attrs.push_back(rel.attr_index(n));
    std::sort(attrs.begin(), attrs.end());
    attrs.erase(std::unique(attrs.begin(), attrs.end()), attrs.end());
    return compute_partition(rel, attrs);
}

Partition partition_product(const Partition& p1, const Partition& p2, size_t n_rows) {
    // standard probe-table product: label rows by p1 class, then cut each
    // p2 class along those labels
    std::vector<size_t> label(n_rows, SIZE_MAX);
    for (size_t ci = 0; ci < p1.classes.size(); ++ci)
        for (size_t row : p1.classes[ci].members)
            label[row] = ci;

    Partition out;
    out.attrs = attr_union(p1.attrs, p2.attrs);

    std::unordered_map<size_t, size_t> bucket; // p1 class -> out class
    for (const auto& c2 : p2.classes) {
        bucket.clear();
        for (size_t row : c2.members) {
            size_t l = label[row];
            if (l == SIZE_MAX) throw_internal("partition_product: inputs cover different rows");
            auto [it, fresh] = bucket.try_emplace(l, out.classes.size());
            if (fresh) {
                EquivalenceClass ec;
                // representative tuples of products are not used by callers;
                // keep the pair of parent representatives for debuggability
                ec.representative = p1.classes[l].representative;
                ec.representative.insert(ec.representative.end(),
                                         c2.representative.begin(),
                                         c2.representative.end());
                out.classes.push_back(std::move(ec));
            }
            out.classes[it->second].members.push_back(row);
        }
    }
    sort_classes(out);
    return out;
}

bool refines(const Partition& p1, const Partition& p2, size_t n_rows) {
    std::vector<size_t> label(n_rows, SIZE_MAX);
    for (size_t ci = 0; ci < p2.classes.size(); ++ci)
        for (size_t row : p2.classes[ci].members)
            label[row] = ci;

    for (const auto& c : p1.classes) {
        size_t expect = label[c.members.front()];
        for (size_t row : c.members)
            if (label[row] != expect) return false;
    }
    return true;
}

} // namespace fdseal
