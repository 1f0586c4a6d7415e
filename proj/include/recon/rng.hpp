#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace recon {

// Deterministic RNG helpers.  std::mt19937_64 is the bit source (its output
// sequence is specified exactly), but the derived draws are hand-rolled:
// std::uniform_int_distribution and std::shuffle are implementation-defined
// and would break byte-identical outputs across standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // uniform in [0, bound), bound > 0; rejection sampling, no modulo bias
    uint64_t bounded(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    int bounded_int(int bound) { return static_cast<int>(bounded(static_cast<uint64_t>(bound))); }

    // uniform in [lo, hi] inclusive
    int range_int(int lo, int hi) { return lo + bounded_int(hi - lo + 1); }

    // uniform double in [0, 1) with 53 random bits
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return u01() < p; }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T> &v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), ascending; partial Fisher-Yates
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> all(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
        for (int i = 0; i < k; ++i) {
            const int j = i + bounded_int(n - i);
            std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
        }
        all.resize(static_cast<size_t>(k));
        std::sort(all.begin(), all.end());
        return all;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace recon
