#include "fdseal/grouping.hpp"

#include <algorithm>
#include <cmath>

namespace fdseal {

size_t SecurityConfig::min_group_size() const {
    return static_cast<size_t>(std::ceil(1.0 / alpha - 1e-12));
}

void SecurityConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw_input("alpha must lie strictly between 0 and 1");
    if (split_factor < 2)
        throw_input("split factor must be at least 2");
    if (lambda_bits != 128 && lambda_bits != 256)
        throw_input("unsupported security parameter lambda");
    if (min_group_size() < 2)
        throw_input("alpha implies group size below 2");
}

static const char* kFreshPrefix = "~";

TokenGen::TokenGen(Rng rng, std::unordered_set<std::string> domain)
    : rng_(std::move(rng)), taken_(std::move(domain)) {}

std::string TokenGen::fresh() {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::string t = kFreshPrefix + rng_.hex_token(128);
        if (taken_.insert(t).second) return t;
    }
    throw_internal("token generator exhausted retries");
}

std::unordered_set<std::string> TokenGen::domain_of(const Relation& rel) {
    std::unordered_set<std::string> domain;
    domain.reserve(rel.size() * rel.arity());
    for (const auto& r : rel.rows)
        for (const auto& c : r.cells)
            domain.insert(c);
    return domain;
}

bool collides(const EquivalenceClass& c1, const EquivalenceClass& c2, const AttrSet& mas_attrs) {
    if (c1.representative.size() != mas_attrs.size() ||
        c2.representative.size() != mas_attrs.size())
        throw_input("collides: classes do not match the attribute set");
    for (size_t i = 0; i < mas_attrs.size(); ++i)
        if (c1.representative[i] == c2.representative[i]) return true;
    return false;
}

std::vector<Ecg> build_ecgs(const Mas& mas, size_t mas_index, const SecurityConfig& config,
                            TokenGen& tokens) {
    const size_t k = config.min_group_size();
    const auto& classes = mas.partition.classes;

    // ascending by size; equal sizes ordered by smallest member
    std::vector<size_t> order(classes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (classes[a].size() != classes[b].size())
            return classes[a].size() < classes[b].size();
        return classes[a].members.front() < classes[b].members.front();
    });

    std::vector<bool> grouped(classes.size(), false);
    std::vector<Ecg> out;

    for (size_t pos = 0; pos < order.size(); ++pos) {
        size_t seed = order[pos];
        if (grouped[seed]) continue;

        Ecg ecg;
        ecg.id = "m" + std::to_string(mas_index) + ".g" + std::to_string(out.size());
        ecg.mas_index = mas_index;

        // per-attribute token sets make the collision test O(|M|)
        std::vector<std::unordered_set<std::string>> used(mas.attrs.size());
        auto admit = [&](const std::vector<std::string>& rep) {
            for (size_t i = 0; i < rep.size(); ++i)
                if (used[i].count(rep[i])) return false;
            return true;
        };
        auto add_real = [&](size_t ci) {
            grouped[ci] = true;
            EcgMember m;
            m.fake = false;
            m.class_index = ci;
            m.size = classes[ci].size();
            m.min_record = classes[ci].members.front();
            ecg.members.push_back(std::move(m));
            for (size_t i = 0; i < classes[ci].representative.size(); ++i)
                used[i].insert(classes[ci].representative[i]);
        };

        add_real(seed);
        for (size_t scan = pos + 1; scan < order.size() && ecg.members.size() < k; ++scan) {
            size_t ci = order[scan];
            if (grouped[ci]) continue;
            if (admit(classes[ci].representative)) add_real(ci);
        }

        // pad with fake classes sized like the smallest real member
        const size_t fake_size = classes[seed].size();
        while (ecg.members.size() < k) {
            EcgMember m;
            m.fake = true;
            m.size = fake_size;
            m.min_record = ~RecordId{0};
            m.fake_tokens.reserve(mas.attrs.size());
            for (size_t i = 0; i < mas.attrs.size(); ++i)
                m.fake_tokens.push_back(tokens.fresh());
            ecg.fake_count += 1;
            ecg.fake_rows += fake_size;
            ecg.members.push_back(std::move(m));
        }
        out.push_back(std::move(ecg));
    }
    return out;
}

} // namespace fdseal
