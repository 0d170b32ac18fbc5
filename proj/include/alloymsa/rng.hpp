#pragma once

#include <cstdint>
#include <random>

namespace alloymsa {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// independent stream for trial t of a run seeded with master
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t t) {
    return splitmix64(splitmix64(master) ^ splitmix64(t + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // uniform on [0, 1) from the top 53 bits
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace alloymsa
