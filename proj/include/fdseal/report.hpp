#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fdseal {

// Per-run accounting: sizes, stage additions, overhead ratios, timings, and
// the bound checks that must hold on every run.
struct RunReport {
    size_t n = 0; // original records
    size_t m = 0; // attributes
    size_t q = 0; // MAS count
    size_t h = 0; // overlapping MAS pairs

    std::vector<size_t> ec_counts; // per MAS

    size_t grouping_fake_rows = 0;
    size_t scaling_pad_rows = 0;
    size_t conflict_added_rows = 0;
    size_t conflict_type1 = 0;
    size_t conflict_type2 = 0;
    size_t fp_added_rows = 0;
    size_t fp_nodes = 0;
    size_t output_rows = 0;

    double overhead_grouping = 0.0; // (s'-s)/s per stage
    double overhead_scaling = 0.0;
    double overhead_conflict = 0.0;
    double overhead_fp = 0.0;
    double overhead_total = 0.0;

    double seconds_mas = 0.0;
    double seconds_split_scale = 0.0;
    double seconds_conflict = 0.0;
    double seconds_fp = 0.0;
    double seconds_encrypt = 0.0;
    double seconds_total = 0.0;

    double alpha = 0.2;
    uint32_t split_factor = 2;
    uint32_t lambda_bits = 128;
    uint64_t seed = 0;

    std::vector<size_t> mas_sizes; // |M_i|

    // conflict additions ≤ h·n; fp additions zero or within
    // [2k, min(2k·m·C(m−1,⌊(m−1)/2⌋), 2k·Σ|Mᵢ|·C(|Mᵢ|−1,⌊(|Mᵢ|−1)/2⌋))]
    void check_bounds() const;

    size_t fp_upper_bound() const;

    std::string to_json() const;
    static RunReport from_json(const std::string& text);
    std::string to_text() const;
};

// C(n, k) with saturation at SIZE_MAX to keep bound formulas safe
size_t binomial(size_t n, size_t k);

} // namespace fdseal
