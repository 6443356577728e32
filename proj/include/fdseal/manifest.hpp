#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdseal/relation.hpp"

namespace fdseal {

// Client-secret ledger tying the outsourced table back to the original:
// provenance per output row plus, per original record, where the authentic
// encryption of each cell lives. Never leaves the data owner.
struct Manifest {
    std::vector<std::string> attributes;
    size_t original_rows = 0;
    size_t output_rows = 0;

    double alpha = 0.2;
    uint32_t split_factor = 2;
    uint32_t lambda_bits = 128;
    uint64_t seed = 0;
    std::string key_fp;

    std::vector<Provenance> row_provenance; // by output row position

    // restoration recipe: base output row per original record, plus
    // overrides for cells whose authentic ciphertext lives elsewhere
    std::vector<size_t> base_row;
    struct CellOverride {
        size_t record = 0;
        AttrIndex attr = 0;
        size_t row = 0;
    };
    std::vector<CellOverride> overrides;

    void validate(size_t encrypted_rows) const;
};

void write_manifest(const Manifest& manifest, const std::string& path);
Manifest read_manifest(const std::string& path);

} // namespace fdseal
