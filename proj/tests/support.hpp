#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// here stay brute-force on purpose: they must not share logic with the
// implementation they check.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fdseal/fd_discovery.hpp"
#include "fdseal/relation.hpp"
#include "fdseal/rng.hpp"

namespace testsupport {

using namespace fdseal;

inline Relation make_relation(std::vector<std::string> attrs,
                              std::vector<std::vector<std::string>> rows) {
    Relation rel;
    rel.attributes = std::move(attrs);
    for (size_t i = 0; i < rows.size(); ++i) {
        Record r;
        r.id = i;
        r.cells = std::move(rows[i]);
        r.provenance = Provenance::original(i);
        rel.rows.push_back(std::move(r));
    }
    return rel;
}

// Small fixed tables used across suites.

// 4 rows over A,B,C with constant (a1,b1): the smallest FD-bearing table.
inline Relation repeated_pair_table() {
    return make_relation({"A", "B", "C"}, {{"a1", "b1", "c1"},
                                           {"a1", "b1", "c2"},
                                           {"a1", "b1", "c3"},
                                           {"a1", "b1", "c1"}});
}

// 6 rows over A,B,C with two overlapping maximal sets {A,B} and {B,C} and
// the dependency C -> B.
inline Relation overlapping_sets_table() {
    return make_relation({"A", "B", "C"}, {{"a3", "b2", "c1"},
                                           {"a1", "b2", "c1"},
                                           {"a2", "b2", "c1"},
                                           {"a2", "b2", "c2"},
                                           {"a3", "b2", "c2"},
                                           {"a1", "b1", "c3"}});
}

// 14 rows over A,B where A -> B does not hold: four classes sized 5,4,3,2.
inline Relation skewed_classes_table() {
    std::vector<std::vector<std::string>> rows;
    auto add = [&](const std::string& a, const std::string& b, size_t count) {
        for (size_t i = 0; i < count; ++i) rows.push_back({a, b});
    };
    add("a1", "b1", 5);
    add("a1", "b2", 4);
    add("a2", "b3", 2);
    add("a2", "b4", 3);
    return make_relation({"A", "B"}, std::move(rows));
}

// All-pairs FD check, the oracle for discovery and preservation tests.
inline bool fd_holds_bruteforce(const Relation& rel, const AttrSet& lhs, AttrIndex rhs) {
    for (size_t i = 0; i < rel.rows.size(); ++i) {
        for (size_t j = i + 1; j < rel.rows.size(); ++j) {
            bool lhs_equal = true;
            for (AttrIndex a : lhs)
                if (rel.rows[i].cells[a] != rel.rows[j].cells[a]) {
                    lhs_equal = false;
                    break;
                }
            if (lhs_equal && rel.rows[i].cells[rhs] != rel.rows[j].cells[rhs]) return false;
        }
    }
    return true;
}

// Enumerates every minimal non-trivial FD by brute force (m <= ~8).
inline FdSet discover_fds_bruteforce(const Relation& rel) {
    const size_t m = rel.arity();
    FdSet out;
    std::vector<std::pair<uint32_t, AttrIndex>> valid; // (lhs mask, rhs)
    for (AttrIndex rhs = 0; rhs < m; ++rhs) {
        for (uint32_t mask = 1; mask < (1u << m); ++mask) {
            if (mask & (1u << rhs)) continue;
            AttrSet lhs;
            for (AttrIndex a = 0; a < m; ++a)
                if (mask & (1u << a)) lhs.push_back(a);
            if (fd_holds_bruteforce(rel, lhs, rhs)) valid.emplace_back(mask, rhs);
        }
    }
    for (auto [mask, rhs] : valid) {
        bool minimal = true;
        for (auto [other, orhs] : valid)
            if (orhs == rhs && other != mask && (other & mask) == other) {
                minimal = false;
                break;
            }
        if (minimal) {
            AttrSet lhs;
            for (AttrIndex a = 0; a < m; ++a)
                if (mask & (1u << a)) lhs.push_back(a);
            out.fds.push_back(Fd{lhs, rhs});
        }
    }
    std::sort(out.fds.begin(), out.fds.end());
    return out;
}

// Random tables with planted structure: low-cardinality columns create
// repeated combinations, a functional column plants an FD.
struct GenOptions {
    size_t min_attrs = 3, max_attrs = 7;
    size_t min_rows = 50, max_rows = 2000;
    bool skewed = false;
    bool plant_fd = true;
};

inline Relation random_relation(Rng& rng, const GenOptions& opt) {
    const size_t m = opt.min_attrs + rng.below(opt.max_attrs - opt.min_attrs + 1);
    const size_t n = opt.min_rows + rng.below(opt.max_rows - opt.min_rows + 1);

    std::vector<std::string> attrs;
    for (size_t a = 0; a < m; ++a) attrs.push_back(std::string(1, static_cast<char>('A' + a)));

    // per-column domain sizes; small domains make repeats and collisions
    std::vector<size_t> domain(m);
    for (size_t a = 0; a < m; ++a) domain[a] = 2 + rng.below(opt.skewed ? 6 : 20);

    std::vector<std::vector<std::string>> rows(n, std::vector<std::string>(m));
    for (size_t i = 0; i < n; ++i) {
        for (size_t a = 0; a < m; ++a) {
            size_t v;
            if (opt.skewed) {
                // geometric-ish skew: low values dominate
                v = 0;
                while (v + 1 < domain[a] && rng.unit() < 0.55) ++v;
            } else {
                v = rng.below(domain[a]);
            }
            rows[i][a] = attrs[a] + std::to_string(v);
        }
    }
    if (opt.plant_fd && m >= 2) {
        // col1 = f(col0): plants the FD A -> B
        for (size_t i = 0; i < n; ++i) {
            size_t h = 0;
            for (char c : rows[i][0]) h = h * 31 + static_cast<size_t>(c);
            rows[i][1] = attrs[1] + std::to_string(h % domain[1]);
        }
    }
    return make_relation(std::move(attrs), std::move(rows));
}

} // namespace testsupport
