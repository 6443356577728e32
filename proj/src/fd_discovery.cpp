#include "fdseal/fd_discovery.hpp"

#include <algorithm>
#include <unordered_map>

namespace fdseal {

bool FdSet::contains(const Fd& fd) const {
    return std::binary_search(fds.begin(), fds.end(), fd);
}

namespace {

using Mask = uint32_t;

// stripped partition: only classes of size >= 2 matter for FD validity
struct Stripped {
    std::vector<std::vector<uint32_t>> classes;
    size_t error = 0; // ||π|| - |π|; equal errors across X ⊆ X∪{a} certify the FD

    void compute_error() {
        error = 0;
        for (const auto& c : classes) error += c.size() - 1;
    }
};

Stripped strip_single(const Relation& rel, AttrIndex a) {
    std::unordered_map<std::string, std::vector<uint32_t>> groups;
    for (uint32_t row = 0; row < rel.rows.size(); ++row)
        groups[rel.rows[row].cells[a]].push_back(row);
    Stripped s;
    for (auto& [_, rows] : groups)
        if (rows.size() >= 2) s.classes.push_back(std::move(rows));
    s.compute_error();
    return s;
}

// probe-table product, standard stripped-partition refinement
Stripped strip_product(const Stripped& a, const Stripped& b, std::vector<int64_t>& probe,
                       size_t n_rows) {
    Stripped out;
    std::vector<std::vector<uint32_t>> buckets(a.classes.size());
    for (size_t ci = 0; ci < a.classes.size(); ++ci)
        for (uint32_t row : a.classes[ci])
            probe[row] = static_cast<int64_t>(ci);

    for (const auto& c : b.classes) {
        std::vector<size_t> touched;
        for (uint32_t row : c) {
            if (probe[row] < 0) continue;
            auto& bucket = buckets[probe[row]];
            if (bucket.empty()) touched.push_back(static_cast<size_t>(probe[row]));
            bucket.push_back(row);
        }
        for (size_t t : touched) {
            if (buckets[t].size() >= 2) out.classes.push_back(buckets[t]);
            buckets[t].clear();
        }
    }

    for (const auto& c : a.classes)
        for (uint32_t row : c)
            probe[row] = -1;
    (void)n_rows;
    out.compute_error();
    return out;
}

AttrSet mask_to_set(Mask m) {
    AttrSet out;
    for (AttrIndex a = 0; m; ++a, m >>= 1)
        if (m & 1) out.push_back(a);
    return out;
}

} // namespace

FdSet discover_fds(const Relation& rel, size_t max_attrs) {
    const size_t m = rel.arity();
    if (m > max_attrs || m > 20)
        throw_input("discover_fds: attribute count exceeds the configured cap");

    FdSet result;
    if (m < 2 || rel.size() == 0) return result;

    const Mask all = static_cast<Mask>((1u << m) - 1);
    std::vector<int64_t> probe(rel.size(), -1);

    std::unordered_map<Mask, Stripped> parts;
    std::unordered_map<Mask, Mask> rhs_cand; // C+
    rhs_cand[0] = all;

    std::vector<Mask> level;
    for (AttrIndex a = 0; a < m; ++a) {
        Mask x = 1u << a;
        parts[x] = strip_single(rel, a);
        rhs_cand[x] = all;
        level.push_back(x);
    }

    while (!level.empty()) {
        // candidate rhs sets for this level
        for (Mask x : level) {
            Mask c = all;
            for (AttrIndex a = 0; a < m; ++a)
                if (x & (1u << a)) c &= rhs_cand[x ^ (1u << a)];
            rhs_cand[x] = c;
        }

        // dependency checks X\{a} -> a for a in X ∩ C+(X)
        for (Mask x : level) {
            if ((x & (x - 1)) == 0) continue; // need |X| >= 2
            Mask candidates = x & rhs_cand[x];
            for (AttrIndex a = 0; a < m; ++a) {
                if (!(candidates & (1u << a))) continue;
                Mask lhs = x ^ (1u << a);
                if (parts[lhs].error == parts[x].error) {
                    result.fds.push_back(Fd{mask_to_set(lhs), a});
                    rhs_cand[x] &= ~(1u << a);
                    rhs_cand[x] &= x; // drop R \ X
                }
            }
        }

        // prune exhausted nodes, then join sets sharing all but the last attr
        std::vector<Mask> kept;
        for (Mask x : level)
            if (rhs_cand[x] != 0) kept.push_back(x);

        std::sort(kept.begin(), kept.end());
        std::vector<Mask> next;
        for (size_t i = 0; i < kept.size(); ++i) {
            for (size_t j = i + 1; j < kept.size(); ++j) {
                Mask a = kept[i], b = kept[j];
                Mask hi_a = Mask(1) << (31 - __builtin_clz(a));
                if ((a ^ hi_a) != (b ^ (Mask(1) << (31 - __builtin_clz(b)))))
                    continue; // prefix join: equal after removing top bit
                Mask x = a | b;
                bool ok = true;
                for (AttrIndex t = 0; t < m && ok; ++t)
                    if (x & (1u << t))
                        ok = parts.count(x ^ (1u << t)) > 0 && rhs_cand.count(x ^ (1u << t)) > 0 &&
                             rhs_cand[x ^ (1u << t)] != 0;
                if (!ok) continue;
                parts[x] = strip_product(parts[a], parts[b], probe, rel.size());
                next.push_back(x);
            }
        }

        if (!next.empty()) {
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            // validity checks only reach one level down; older partitions
            // are dead weight
            const int keep = __builtin_popcount(next.front()) - 1;
            std::erase_if(parts, [&](const auto& kv) {
                return __builtin_popcount(kv.first) < keep;
            });
        }
        level = std::move(next);
    }

    std::sort(result.fds.begin(), result.fds.end());
    result.fds.erase(std::unique(result.fds.begin(), result.fds.end()), result.fds.end());
    return result;
}

bool fd_holds(const Relation& rel, const Fd& fd) {
    if (fd.lhs.empty()) throw_input("fd_holds: empty left-hand side");
    if (std::find(fd.lhs.begin(), fd.lhs.end(), fd.rhs) != fd.lhs.end())
        return true; // trivial
    Partition lhs = compute_partition(rel, fd.lhs);
    Partition rhs = compute_partition(rel, AttrSet{fd.rhs});
    return refines(lhs, rhs, rel.size());
}

FdDiff compare_fd_sets(const FdSet& a, const FdSet& b) {
    FdDiff diff;
    std::set_difference(a.fds.begin(), a.fds.end(), b.fds.begin(), b.fds.end(),
                        std::back_inserter(diff.only_a));
    std::set_difference(b.fds.begin(), b.fds.end(), a.fds.begin(), a.fds.end(),
                        std::back_inserter(diff.only_b));
    return diff;
}

std::string fd_to_string(const std::vector<std::string>& attributes, const Fd& fd) {
    std::string out;
    for (size_t i = 0; i < fd.lhs.size(); ++i) {
        if (i) out += ",";
        out += attributes[fd.lhs[i]];
    }
    out += " -> ";
    out += attributes[fd.rhs];
    return out;
}

} // namespace fdseal
