#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace evograph {

// Stable 64-bit FNV-1a. Used for content-addressed ids and seed derivation;
// must never depend on platform or standard-library hashing.
uint64_t fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ull);

// Hash of several fields with an unambiguous separator between them.
uint64_t hash_fields(std::initializer_list<std::string_view> fields);

// 16-digit lowercase hex rendering, the id format used across file schemas.
std::string hex64(uint64_t value);

// Every random decision in the pipeline descends from one root seed through
// this derivation, so scoped seeds can be reproduced independently of
// execution order or thread count.
uint64_t derive_seed(uint64_t parent_seed, std::initializer_list<std::string_view> scope);

// Deterministic PRNG with a fixed algorithm (splitmix64). std:: engines and
// distributions are implementation-defined, which would break byte-identical
// outputs across toolchains.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next();

    // Uniform in [0, bound). bound must be > 0.
    uint64_t below(uint64_t bound);

    // Uniform in [0, 1).
    double next_double();

    // Indices of a uniform sample of k items out of n, in ascending order.
    std::vector<size_t> sample_indices(size_t n, size_t k);

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // Uniform sample without replacement, preserving input order.
    template <typename T>
    std::vector<T> sample(const std::vector<T>& items, size_t k) {
        std::vector<T> out;
        for (size_t idx : sample_indices(items.size(), k)) out.push_back(items[idx]);
        return out;
    }

private:
    uint64_t state_;
};

} // namespace evograph
