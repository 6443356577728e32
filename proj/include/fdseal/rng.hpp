#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fdseal {

// All pipeline randomness flows through one seeded generator so that runs
// are reproducible; stage-local generators are derived with fixed labels.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed), seed_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t next_u64() { return gen_(); }

    // in [0, n)
    uint64_t below(uint64_t n) {
        std::uniform_int_distribution<uint64_t> d(0, n - 1);
        return d(gen_);
    }

    double unit() {
        std::uniform_real_distribution<double> d(0.0, 1.0);
        return d(gen_);
    }

    Rng derive(const std::string& label) const {
        uint64_t h = 1469598103934665603ull ^ seed_;
        for (char c : label) {
            h ^= static_cast<uint8_t>(c);
            h *= 1099511628211ull;
        }
        return Rng(h);
    }

    std::string hex_token(size_t bits = 128) {
        static const char* hex = "0123456789abcdef";
        std::string s;
        s.reserve(bits / 4);
        for (size_t i = 0; i < bits / 4; ++i)
            s.push_back(hex[below(16)]);
        return s;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        std::shuffle(v.begin(), v.end(), gen_);
    }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
    uint64_t seed_;
};

} // namespace fdseal
