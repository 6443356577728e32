#include "fdseal/mas.hpp"

#include <algorithm>
#include <map>

namespace fdseal {

std::vector<std::pair<size_t, size_t>> MasReport::overlapping() const {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t i = 0; i < mas_list.size(); ++i)
        for (size_t j = i + 1; j < mas_list.size(); ++j)
            if (!attr_intersect(mas_list[i].attrs, mas_list[j].attrs).empty())
                out.emplace_back(i, j);
    return out;
}

MasReport find_mas(const Relation& rel) {
    if (rel.size() == 0) throw_input("find_mas: empty relation");

    MasReport report;

    // single attributes with at least one repeated value; anything else can
    // never appear in a MAS (repeats only shrink when attributes are added)
    std::vector<std::pair<AttrIndex, Partition>> singles;
    for (AttrIndex a = 0; a < rel.arity(); ++a) {
        Partition p = compute_partition(rel, AttrSet{a});
        if (p.has_plural_class())
            singles.emplace_back(a, std::move(p));
    }

    // level walk: every set is enumerated once, in sorted-attribute order,
    // by extending with single attributes past its maximum
    std::vector<std::pair<AttrSet, Partition>> level;
    for (auto& [a, p] : singles)
        level.emplace_back(AttrSet{a}, p);

    std::vector<AttrSet> candidates;
    while (!level.empty()) {
        std::vector<std::pair<AttrSet, Partition>> next;
        for (auto& [attrs, part] : level) {
            candidates.push_back(attrs);
            for (auto& [a, apart] : singles) {
                if (a <= attrs.back()) continue;
                Partition product = partition_product(part, apart, rel.size());
                if (product.has_plural_class()) {
                    AttrSet child = attrs;
                    child.push_back(a);
                    next.emplace_back(std::move(child), std::move(product));
                }
            }
        }
        level = std::move(next);
    }

    // keep maximal candidates only
    for (const auto& attrs : candidates) {
        bool dominated = false;
        for (const auto& other : candidates) {
            if (other.size() > attrs.size() && attr_subset(attrs, other)) {
                dominated = true;
                break;
            }
        }
        if (!dominated)
            report.mas_list.push_back(Mas{attrs, compute_partition(rel, attrs)});
    }
    std::sort(report.mas_list.begin(), report.mas_list.end(),
              [](const Mas& a, const Mas& b) { return a.attrs < b.attrs; });

    report.q = report.mas_list.size();
    report.overlap_pairs = report.overlapping().size();
    return report;
}

bool verify_mas(const Relation& rel, const MasReport& report) {
    const size_t m = rel.arity();
    if (m > 12) throw_input("verify_mas: refusing exhaustive check for m > 12");

    // exhaustively find all attribute sets with a repeated combination
    std::vector<uint32_t> plural; // bitmasks
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
        AttrSet attrs;
        for (AttrIndex a = 0; a < m; ++a)
            if (mask & (1u << a)) attrs.push_back(a);
        if (compute_partition(rel, attrs).has_plural_class())
            plural.push_back(mask);
    }
    std::vector<uint32_t> expected;
    for (uint32_t x : plural) {
        bool maximal = true;
        for (uint32_t y : plural)
            if (x != y && (x & y) == x) { maximal = false; break; }
        if (maximal) expected.push_back(x);
    }
    std::sort(expected.begin(), expected.end());

    std::vector<uint32_t> got;
    for (const auto& mas : report.mas_list) {
        uint32_t mask = 0;
        for (AttrIndex a : mas.attrs) mask |= 1u << a;
        got.push_back(mask);
        // each reported set must itself have a repeated combination
        if (!compute_partition(rel, mas.attrs).has_plural_class()) return false;
    }
    std::sort(got.begin(), got.end());
    return got == expected;
}

} // namespace fdseal
