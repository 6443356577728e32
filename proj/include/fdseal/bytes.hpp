#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fdseal {

using Bytes = std::vector<uint8_t>;

std::string to_hex(const Bytes& b);
Bytes from_hex(const std::string& s); // throws Error(input) on bad hex

std::string base64_encode(const Bytes& b);
Bytes base64_decode(const std::string& s); // throws Error(input)

inline void append_bytes(Bytes& out, const void* p, size_t n) {
    const auto* c = static_cast<const uint8_t*>(p);
    out.insert(out.end(), c, c + n);
}

inline void append_str(Bytes& out, const std::string& s) {
    append_bytes(out, s.data(), s.size());
}

inline void append_u64(Bytes& out, uint64_t v) {
    for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

} // namespace fdseal
