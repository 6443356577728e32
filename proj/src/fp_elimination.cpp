#include "fdseal/fp_elimination.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace fdseal {

FdLattice build_fd_lattice(const MasReport& report) {
    FdLattice lattice;
    std::map<std::pair<AttrSet, AttrIndex>, size_t> seen; // (lhs, rhs) -> canonical mas

    for (size_t mi = 0; mi < report.mas_list.size(); ++mi) {
        const AttrSet& mas = report.mas_list[mi].attrs;
        lattice.level1.push_back(mas);
        if (mas.size() < 2) continue;
        for (AttrIndex rhs : mas) {
            AttrSet rest = attr_minus(mas, AttrSet{rhs});
            // all non-empty subsets of M − {rhs}
            const size_t subsets = size_t{1} << rest.size();
            for (size_t bits = 1; bits < subsets; ++bits) {
                AttrSet lhs;
                for (size_t i = 0; i < rest.size(); ++i)
                    if (bits & (size_t{1} << i)) lhs.push_back(rest[i]);
                seen.try_emplace({lhs, rhs}, mi);
            }
        }
    }

    lattice.nodes.reserve(seen.size());
    for (const auto& [key, mi] : seen)
        lattice.nodes.push_back(FdLatticeNode{key.first, key.second, mi});
    // top-down: larger left-hand sides first, lexicographic within a level
    std::stable_sort(lattice.nodes.begin(), lattice.nodes.end(),
                     [](const FdLatticeNode& a, const FdLatticeNode& b) {
                         if (a.lhs.size() != b.lhs.size()) return a.lhs.size() > b.lhs.size();
                         if (a.lhs != b.lhs) return a.lhs < b.lhs;
                         return a.rhs < b.rhs;
                     });
    return lattice;
}

bool has_violation_witness(const Partition& mas_partition, const AttrSet& mas_attrs,
                           const AttrSet& lhs, AttrIndex rhs) {
    std::vector<size_t> lhs_pos;
    lhs_pos.reserve(lhs.size());
    for (AttrIndex a : lhs) {
        auto it = std::find(mas_attrs.begin(), mas_attrs.end(), a);
        if (it == mas_attrs.end()) throw_input("witness check: lhs outside the MAS");
        lhs_pos.push_back(static_cast<size_t>(it - mas_attrs.begin()));
    }
    auto rit = std::find(mas_attrs.begin(), mas_attrs.end(), rhs);
    if (rit == mas_attrs.end()) throw_input("witness check: rhs outside the MAS");
    const size_t rhs_pos = static_cast<size_t>(rit - mas_attrs.begin());

    std::unordered_map<std::string, const std::string*> rhs_of;
    std::string key;
    for (const auto& ec : mas_partition.classes) {
        key.clear();
        for (size_t p : lhs_pos) {
            key += std::to_string(ec.representative[p].size());
            key.push_back('\x1F');
            key += ec.representative[p];
        }
        auto [it, fresh] = rhs_of.try_emplace(key, &ec.representative[rhs_pos]);
        if (!fresh && *it->second != ec.representative[rhs_pos]) return true;
    }
    return false;
}

FpPlan plan_fp_elimination(const Relation& original, const MasReport& report,
                           const SecurityConfig& config, TokenGen& tokens) {
    FpPlan plan;
    plan.lattice = build_fd_lattice(report);
    const size_t k = config.min_group_size();
    const size_t m = original.arity();

    // rhs -> lhs sets already handled; a node is covered once any superset
    // of its lhs was inserted for the same rhs
    std::unordered_map<AttrIndex, std::vector<AttrSet>> inserted_lhs;
    auto covered = [&](const FdLatticeNode& node) {
        auto it = inserted_lhs.find(node.rhs);
        if (it == inserted_lhs.end()) return false;
        for (const AttrSet& big : it->second)
            if (attr_subset(node.lhs, big)) return true;
        return false;
    };

    for (size_t ni = 0; ni < plan.lattice.nodes.size(); ++ni) {
        const auto& node = plan.lattice.nodes[ni];
        if (covered(node)) continue;
        const Mas& mas = report.mas_list[node.parent_mas];
        if (!has_violation_witness(mas.partition, mas.attrs, node.lhs, node.rhs)) continue;

        inserted_lhs[node.rhs].push_back(node.lhs);
        plan.inserted_nodes.push_back(ni);

        for (size_t pi = 0; pi < k; ++pi) {
            ArtificialPairPlan pair;
            pair.node = ni;
            pair.lhs = node.lhs;
            pair.rhs = node.rhs;
            pair.pair_index = pi;
            pair.row1.resize(m);
            pair.row2.resize(m);
            for (AttrIndex a = 0; a < m; ++a) {
                const bool in_lhs =
                    std::binary_search(node.lhs.begin(), node.lhs.end(), a);
                if (in_lhs) {
                    std::string shared = tokens.fresh();
                    pair.row1[a] = shared;
                    pair.row2[a] = shared;
                } else {
                    // rhs, remaining MAS attributes and attributes outside
                    // the MAS all differ between the two rows
                    pair.row1[a] = tokens.fresh();
                    pair.row2[a] = tokens.fresh();
                }
            }
            plan.pairs.push_back(std::move(pair));
        }
    }
    return plan;
}

} // namespace fdseal
