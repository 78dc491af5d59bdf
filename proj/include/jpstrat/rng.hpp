#ifndef JPSTRAT_RNG_HPP
#define JPSTRAT_RNG_HPP

#include <jpstrat/special.hpp>

#include <cstdint>

namespace jps {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}
}  // namespace detail

// Counter-mode splitmix64 keyed by (seed, stream).  Output depends only on
// (seed, stream, draw index), so replicate streams are reproducible for any
// scheduling of work across threads.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(detail::mix64(seed ^ detail::mix64(stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() {
        ctr_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix64(key_ ^ ctr_);
    }

    // strictly inside (0,1), 52-bit resolution
    double u01() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    double normal() { return normal_quantile(u01()); }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace jps

#endif  // JPSTRAT_RNG_HPP
