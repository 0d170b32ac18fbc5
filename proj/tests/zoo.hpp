#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "alloymsa/configuration.hpp"
#include "alloymsa/density.hpp"
#include "alloymsa/lattice.hpp"
#include "alloymsa/potential.hpp"
#include "alloymsa/rng.hpp"

namespace zoo {

using namespace alloymsa;

struct Named {
    std::string name;
    SingleSitePotential u;
};

inline SingleSitePotential delta1(double alpha = 20) {
    return SingleSitePotential(1, {{LatticePoint{0}, 1.0}}, 1.0, alpha);
}
inline SingleSitePotential delta2(double alpha = 20) {
    return SingleSitePotential(2, {{LatticePoint{0, 0}, 1.0}}, 1.0, alpha);
}
// mean zero, first moment one
inline SingleSitePotential pair() {
    return SingleSitePotential(1, {{LatticePoint{0}, 1.0}, {LatticePoint{1}, -1.0}}, 2.0, 0.5);
}
inline SingleSitePotential second_difference() {
    return SingleSitePotential(
        1, {{LatticePoint{-1}, 1.0}, {LatticePoint{0}, -2.0}, {LatticePoint{1}, 1.0}}, 2.0, 0.5);
}
inline SingleSitePotential dipole2() {
    return SingleSitePotential(
        2, {{LatticePoint{0, 0}, 1.0}, {LatticePoint{1, 0}, -0.5}, {LatticePoint{0, 1}, -0.5}}, 2.0, 0.5);
}
// (-1)^k e^{-2|k|}, cut at |k| <= 8
inline SingleSitePotential alternating1() {
    return SingleSitePotential::truncated(
        1,
        [](const LatticePoint& k) { return (k[0] % 2 ? -1.0 : 1.0) * std::exp(-2.0 * std::abs(k[0])); },
        1.0, 2.0, 8);
}
// sgn(k) e^{-|k|}
inline SingleSitePotential antisymmetric1() {
    return SingleSitePotential::truncated(
        1,
        [](const LatticePoint& k) {
            const int s = (k[0] > 0) - (k[0] < 0);
            return s * std::exp(-std::abs(k[0]));
        },
        1.0, 1.0, 10);
}
inline SingleSitePotential exponential2() {
    return SingleSitePotential::truncated(
        2,
        [](const LatticePoint& k) {
            return (k[0] % 2 ? -1.0 : 1.0) * std::exp(-1.0 * (std::abs(k[0]) + std::abs(k[1])));
        },
        1.0, 1.0, 6);
}

inline std::vector<Named> all() {
    return {{"delta1", delta1()},           {"delta2", delta2()},
            {"pair", pair()},               {"second_difference", second_difference()},
            {"dipole2", dipole2()},         {"alternating1", alternating1()},
            {"antisymmetric1", antisymmetric1()}, {"exponential2", exponential2()}};
}

inline std::vector<Named> finitely_supported() {
    std::vector<Named> out;
    for (auto& n : all())
        if (n.u.exact_support()) out.push_back(n);
    return out;
}

// hand-rolled generators on top of the library stream
struct Gen {
    Rng rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double real(double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(rng.bits() % std::uint64_t(hi - lo + 1)); }
    LatticePoint point(int d, int r) {
        LatticePoint x(d);
        for (int i = 0; i < d; ++i) x[i] = integer(-r, r);
        return x;
    }
    // random finitely supported potential within a (C, alpha) certificate
    SingleSitePotential potential(int d, int radius, double alpha) {
        std::vector<PotentialEntry> e;
        const Box b(LatticePoint(d), radius);
        for (std::size_t i = 0; i < b.size(); ++i) {
            const LatticePoint k = b.point(i);
            const double v = real(-1, 1) * std::exp(-alpha * static_cast<double>(k.norm1()));
            if (v != 0) e.push_back({k, v});
        }
        return SingleSitePotential(d, std::move(e), 1.0, alpha);
    }
};

}  // namespace zoo
