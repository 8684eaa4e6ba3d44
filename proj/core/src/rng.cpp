#include "evograph/rng.hpp"

#include <algorithm>

namespace evograph {

uint64_t fnv1a64(std::string_view data, uint64_t seed) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

uint64_t hash_fields(std::initializer_list<std::string_view> fields) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& f : fields) {
        h = fnv1a64(f, h);
        // Unit separator keeps ("ab","c") distinct from ("a","bc").
        h ^= 0x1f;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

uint64_t derive_seed(uint64_t parent_seed, std::initializer_list<std::string_view> scope) {
    uint64_t h = parent_seed ^ 0x9e3779b97f4a7c15ull;
    for (const auto& s : scope) {
        h = fnv1a64(s, h);
        h ^= 0x1f;
        h *= 0x100000001b3ull;
    }
    // Avoid the all-zero state for the generator.
    return h == 0 ? 0x9e3779b97f4a7c15ull : h;
}

uint64_t SplitMix64::next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t SplitMix64::below(uint64_t bound) {
    // Fixed-point multiply keeps the mapping platform-independent; the
    // O(bound / 2^64) bias is irrelevant at pipeline scales.
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
}

double SplitMix64::next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<size_t> SplitMix64::sample_indices(size_t n, size_t k) {
    if (k > n) k = n;
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    // Partial Fisher-Yates: the first k slots are the sample.
    for (size_t i = 0; i < k; ++i) {
        size_t j = i + static_cast<size_t>(below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace evograph
