#pragma once

#include <cmath>
#include <cstdint>

namespace discrimlab {

// SplitMix64-style counter generator. The n-th output is a pure function of
// (key, n), so a stream can be split into independent substreams by remixing
// the key with a stream index; results never depend on scheduling. Copyable
// value semantics: pass by value to hand a sampler its own stream.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed)
        : key_(mix(seed ^ 0x6A09E667F3BCC909ull)) {}

    std::uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ull;
        return mix(counter_ ^ key_);
    }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // standard normal via the Marsaglia polar method (second value cached)
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // independent substream; derived from the key only, not the position
    CounterRng split(std::uint64_t stream) const {
        CounterRng child(0);
        child.key_ = mix(key_ ^ mix(stream + 0x632BE59BD9B4E019ull));
        child.counter_ = 0;
        child.has_spare_ = false;
        return child;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Seed of the idx-th substream of a master seed; used to key per-row samplers
// so that concurrent sweep rows reproduce regardless of execution order.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t idx) {
    return CounterRng(master).split(idx).next_u64();
}

}  // namespace discrimlab
