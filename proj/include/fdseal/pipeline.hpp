#pragma once

#include "fdseal/attack_sim.hpp"
#include "fdseal/cipher.hpp"
#include "fdseal/conflict.hpp"
#include "fdseal/fd_discovery.hpp"
#include "fdseal/fp_elimination.hpp"
#include "fdseal/manifest.hpp"
#include "fdseal/report.hpp"
#include "fdseal/split_scale.hpp"

namespace fdseal {

// Security scopes of one run, kept next to the manifest so structural
// guarantees can be re-checked against the emitted bytes.
struct ScopeLog {
    struct EcgScope {
        size_t mas_index = 0;
        AttrSet attrs;
        std::string id;
        size_t k = 0;      // member count
        size_t target = 0; // homogenized frequency
        std::vector<std::vector<size_t>> piece_rows; // output positions per piece
    };
    struct FpScope {
        AttrSet lhs;
        AttrIndex rhs = 0;
        size_t k = 0;
        std::vector<size_t> rows;
    };
    std::vector<EcgScope> ecgs;
    std::vector<FpScope> fp_batches;
};

struct EncryptResult {
    Relation encrypted;
    Manifest manifest;
    RunReport report;
    ScopeLog scopes;
};

// The full owner-side pipeline: maximal attribute sets, grouping,
// splitting and scaling, conflict resolution, false-positive elimination,
// cell encryption, and a final row shuffle.
EncryptResult encrypt_dataset(const Relation& original, const Key& key,
                              const SecurityConfig& config);

// Exact restoration of the original table from the manifest recipe.
Relation decrypt_dataset(const Relation& encrypted, const Manifest& manifest, const Key& key);

// Baselines for the attack simulator.
Relation encrypt_deterministic(const Relation& original, const Key& key);
Relation encrypt_naive_probabilistic(const Relation& original, const Key& key);

struct AlphaCheckResult {
    size_t scopes_checked = 0;
    size_t violations = 0;
    std::vector<std::string> details;
    bool pass() const { return violations == 0; }
};

// Checks, per group scope and attribute, that the output rows show at least
// k distinct values and that every piece tuple reaches exactly the group's
// homogenized frequency; false-positive batches must show k lhs tuples of
// frequency two.
AlphaCheckResult structural_alpha_check(const Relation& encrypted, const ScopeLog& scopes,
                                        size_t k);

struct VerifyResult {
    bool fd_pass = false;
    FdDiff fd_diff;
    bool alpha_pass = false;
    double weak_cell_fraction = 0.0; // cells in frequency classes with < k values
};

// Ciphertext-side verification without the key: FD-set equality plus a
// per-attribute frequency-class width check.
VerifyResult verify_datasets(const Relation& original, const Relation& encrypted,
                             double alpha, double weak_cell_tolerance = 0.0);

} // namespace fdseal
