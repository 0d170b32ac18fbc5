#include "alloymsa/potential.hpp"

#include <algorithm>
#include <cmath>

#include "alloymsa/error.hpp"
#include "alloymsa/numerics.hpp"

namespace alloymsa {

double exponential_tail_mass(int d, double alpha, int r) {
    const double q = std::exp(-alpha);
    const double s = (1 + q) / (1 - q);
    const double gap = 2 * std::pow(q, r + 1) / (1 - q);  // s - t
    const double t = s - gap;
    // s^d - t^d = (s - t) sum_i s^i t^(d-1-i), no cancellation
    double acc = 0;
    for (int i = 0; i < d; ++i) acc += std::pow(s, i) * std::pow(t, d - 1 - i);
    return gap * acc;
}

SingleSitePotential::SingleSitePotential(int d, std::vector<PotentialEntry> entries, double C,
                                         double alpha, bool exact_support,
                                         double truncation_residual, int truncation_radius)
    : d_(d), C_(C), alpha_(alpha), residual_(truncation_residual), exact_(exact_support) {
    require(d >= 1 && d <= kMaxDim, ErrorKind::parameter, "potential dimension out of range");
    require(C > 0 && std::isfinite(C), ErrorKind::parameter, "decay constant C must be positive");
    require(alpha > 0 && std::isfinite(alpha), ErrorKind::parameter,
            "decay rate alpha must be positive");
    require(truncation_residual >= 0, ErrorKind::parameter, "truncation residual must be >= 0");

    std::sort(entries.begin(), entries.end(),
              [](const PotentialEntry& a, const PotentialEntry& b) { return a.k < b.k; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        require(entries[i].k.dim() == d, ErrorKind::parameter,
                "potential entry " + entries[i].k.str() + " has wrong dimension");
        require(std::isfinite(entries[i].value), ErrorKind::parameter,
                "potential value is not finite");
        if (i > 0)
            require(!(entries[i].k == entries[i - 1].k), ErrorKind::parameter,
                    "duplicate potential entry at " + entries[i].k.str());
    }
    for (const auto& e : entries) {
        if (e.value == 0.0) continue;
        const double cap = C * std::exp(-alpha * static_cast<double>(e.k.norm1()));
        require(std::abs(e.value) <= cap * (1 + 1e-12), ErrorKind::parameter,
                "entry at " + e.k.str() + " violates |u(k)| <= C exp(-alpha |k|_1)");
        entries_.push_back(e);
        radius_ = std::max(radius_, e.k.norm_inf());
    }
    require(!entries_.empty(), ErrorKind::parameter, "single-site potential is identically zero");
    if (truncation_radius >= 0) {
        require(truncation_radius >= radius_, ErrorKind::parameter,
                "tabulated entries exceed the truncation radius");
        radius_ = truncation_radius;
    }
    if (exact_) {
        require(residual_ == 0.0, ErrorKind::parameter,
                "an exactly supported potential carries no truncation residual");
    } else {
        const double tail = C * exponential_tail_mass(d, alpha, radius_);
        require(residual_ >= tail * (1 - 1e-12), ErrorKind::parameter,
                "truncation residual is below the certified exponential tail");
    }

    Box cube(LatticePoint(d), radius_ == 0 ? 0.5 : radius_);
    dense_.assign(cube.size(), 0.0);
    CompensatedSum sum;
    for (const auto& e : entries_) {
        dense_[*cube.index_of(e.k)] = e.value;
        sum.add(e.value);
        l1_ += std::abs(e.value);
        if (e.value > 0) pos_ += e.value;
        else neg_ -= e.value;
        max_abs_ = std::max(max_abs_, std::abs(e.value));
    }
    mean_ = sum.value();
}

SingleSitePotential SingleSitePotential::truncated(
    int d, const std::function<double(const LatticePoint&)>& f, double C, double alpha,
    int radius) {
    require(radius >= 0, ErrorKind::parameter, "truncation radius must be >= 0");
    Box cube(LatticePoint(d), radius == 0 ? 0.5 : radius);
    std::vector<PotentialEntry> entries;
    for (std::size_t i = 0; i < cube.size(); ++i) {
        LatticePoint k = cube.point(i);
        entries.push_back({k, f(k)});
    }
    double residual = C * exponential_tail_mass(d, alpha, radius);
    return SingleSitePotential(d, std::move(entries), C, alpha, false, residual, radius);
}

SingleSitePotential SingleSitePotential::delta(int d) {
    return SingleSitePotential(d, {{LatticePoint(d), 1.0}}, 1.0, 1.0);
}

double SingleSitePotential::at(const LatticePoint& k) const {
    int s = 2 * radius_ + 1;
    std::size_t idx = 0;
    for (int r = 0; r < d_; ++r) {
        int o = k[r];
        if (o < -radius_ || o > radius_) return 0.0;
        idx = idx * s + static_cast<std::size_t>(o + radius_);
    }
    return dense_[idx];
}

double SingleSitePotential::positive_part(const LatticePoint& k) const {
    return std::max(at(k), 0.0);
}

double SingleSitePotential::negative_part(const LatticePoint& k) const {
    return std::max(-at(k), 0.0);
}

}  // namespace alloymsa
