#pragma once

#include <cstdint>
#include <vector>

#include "alloymsa/density.hpp"
#include "alloymsa/lattice.hpp"
#include "alloymsa/rng.hpp"

namespace alloymsa {

// Coupling constants on a box Gamma, a constant value outside.
class Configuration {
public:
    Configuration(Box domain, std::vector<double> couplings, double exterior_value = 0.0);
    static Configuration constant(const Box& domain, double value, double exterior_value = 0.0);

    const Box& domain() const { return domain_; }
    const std::vector<double>& couplings() const { return couplings_; }
    double exterior_value() const { return exterior_; }
    double at(const LatticePoint& k) const;

    // couplings copied onto another domain (values outside this domain read as exterior)
    Configuration on_domain(const Box& domain, double exterior_value) const;
    Configuration with_exterior(double exterior_value) const;
    // fresh i.i.d. couplings inside gamma, everything else unchanged; the
    // domain grows to cover gamma if needed
    Configuration resampled(const Box& gamma, const DisorderModel& model, Rng& rng) const;

    bool supported_by(const DisorderModel& model) const;

private:
    Box domain_;
    std::vector<double> couplings_;
    double exterior_;
};

Configuration sample_configuration(const DisorderModel& model, const Box& box, std::uint64_t seed);
Configuration sample_configuration(const DisorderModel& model, const Box& box, Rng& rng);

// smallest box around the union of two boxes of equal dimension
Box bounding_box(const Box& a, const Box& b);

}  // namespace alloymsa
