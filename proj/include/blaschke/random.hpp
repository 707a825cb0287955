#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace blaschke {

/// Counter-based generator: the n-th draw of stream s under seed k is a pure
/// function of (k, s, n), so streams can be split across threads and replayed.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform (area measure) in the disk of radius r.
    std::complex<double> in_disk(double r) {
        const double rho = r * std::sqrt(uniform());
        return std::polar(rho, 2.0 * std::numbers::pi * uniform());
    }
    std::complex<double> on_circle() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

    CounterRng split(std::uint64_t stream) const { return CounterRng(key_, stream); }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace blaschke
