#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fdseal/relation.hpp"
#include "fdseal/rng.hpp"

namespace fdseal {

// Adversary knowledge for the frequency game: exact per-attribute value
// frequencies of the original table.
struct FrequencyKnowledge {
    std::vector<std::string> attributes;
    std::vector<std::unordered_map<std::string, size_t>> freq;

    static FrequencyKnowledge from_relation(const Relation& d);
};

// One frequency bucket of one attribute, the adversary's reconstruction of
// an equivalence-class group.
struct BucketObservation {
    std::string attribute;
    size_t freq = 0;              // shared ciphertext frequency
    size_t distinct_ciphers = 0;  // y
    size_t candidates = 0;        // matching plaintext values
    size_t split_candidates = 0;  // k': candidates that must have been split
    size_t expected_ciphers = 0;  // ϖ'·k' + (candidates - k')
    double theoretical_success = 0.0; // 1/y
};

struct AttackReport {
    size_t trials = 0;
    size_t successes = 0;
    double rate = 0.0;
    double mean_candidates = 0.0;
    uint32_t estimated_split_factor = 1; // ϖ'
    bool shape_warning = false; // scheme under test does not look homogenized
    std::vector<BucketObservation> buckets;
};

// Ground truth for scoring: plaintext of a ciphertext value of an attribute.
using PlainLookup = std::function<std::string(AttrIndex, const std::string&)>;

// Frequency-matching game: the adversary sees a random ciphertext value, its
// frequency, and the plaintext frequency distribution, then guesses
// uniformly among plaintexts of matching frequency.
AttackReport run_freq_game(const Relation& original, const Relation& encrypted,
                           const PlainLookup& truth, size_t trials, Rng& rng);

// Known-scheme attack: estimate the split factor from maximum frequencies,
// bucket ciphertexts by frequency, map buckets to plaintext candidates whose
// frequency fits under the estimated factor, and guess within the bucket.
// Guessing is uniform over candidates; alpha_aware weights candidates by
// their estimated piece multiplicity instead — an exploratory strengthening
// with no claimed bound.
AttackReport run_kerckhoffs_attack(const FrequencyKnowledge& knowledge,
                                   const Relation& encrypted, const PlainLookup& truth,
                                   size_t trials, Rng& rng, uint32_t threads = 1,
                                   bool alpha_aware = false);

} // namespace fdseal
