#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "fdseal/mas.hpp"
#include "fdseal/rng.hpp"

namespace fdseal {

struct SecurityConfig {
    double alpha = 0.2;        // adversary success bound
    uint32_t split_factor = 2; // number of ciphertext copies a split EC becomes
    uint32_t lambda_bits = 128;
    uint64_t seed = 0;

    // k: minimum number of collision-free classes per group
    size_t min_group_size() const;
    void validate() const;
};

// Issues tokens guaranteed absent from the original value domain and from
// each other: reserved prefix + 128-bit hex, redrawn on collision.
class TokenGen {
  public:
    TokenGen(Rng rng, std::unordered_set<std::string> domain);

    std::string fresh();

    static std::unordered_set<std::string> domain_of(const Relation& rel);

  private:
    Rng rng_;
    std::unordered_set<std::string> taken_;
};

struct EcgMember {
    bool fake = false;
    size_t class_index = 0;                // into the MAS partition when real
    std::vector<std::string> fake_tokens;  // per MAS attribute when fake
    size_t size = 0;
    RecordId min_record = 0; // ordering identity; fakes sort last
};

// Group of ≥ k pairwise collision-free equivalence classes; the unit the
// splitting and scaling stage homogenizes.
struct Ecg {
    std::string id; // encryption scope
    size_t mas_index = 0;
    std::vector<EcgMember> members;
    size_t fake_count = 0;
    size_t fake_rows = 0; // total records the fake members contribute
};

// true iff the classes agree on at least one attribute of the MAS
bool collides(const EquivalenceClass& c1, const EquivalenceClass& c2, const AttrSet& mas_attrs);

// Greedy closest-size packing: seed each group with the smallest ungrouped
// class, then walk the size-ascending order adding non-colliding classes
// until the group reaches k; pad with fakes when the walk runs dry.
std::vector<Ecg> build_ecgs(const Mas& mas, size_t mas_index, const SecurityConfig& config,
                            TokenGen& tokens);

} // namespace fdseal
