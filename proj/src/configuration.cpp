#include "alloymsa/configuration.hpp"

#include <algorithm>
#include <cmath>

#include "alloymsa/error.hpp"

namespace alloymsa {

Configuration::Configuration(Box domain, std::vector<double> couplings, double exterior_value)
    : domain_(std::move(domain)), couplings_(std::move(couplings)), exterior_(exterior_value) {
    require(couplings_.size() == domain_.size(), ErrorKind::parameter,
            "coupling count does not match the configuration domain");
}

Configuration Configuration::constant(const Box& domain, double value, double exterior_value) {
    return Configuration(domain, std::vector<double>(domain.size(), value), exterior_value);
}

double Configuration::at(const LatticePoint& k) const {
    if (auto i = domain_.index_of(k)) return couplings_[*i];
    return exterior_;
}

Configuration Configuration::on_domain(const Box& domain, double exterior_value) const {
    std::vector<double> c(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) c[i] = at(domain.point(i));
    return Configuration(domain, std::move(c), exterior_value);
}

Configuration Configuration::with_exterior(double exterior_value) const {
    return Configuration(domain_, couplings_, exterior_value);
}

Configuration Configuration::resampled(const Box& gamma, const DisorderModel& model,
                                       Rng& rng) const {
    Configuration out = domain_.contains(gamma) ? *this
                                                : on_domain(bounding_box(domain_, gamma), exterior_);
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        double w = model.quantile(rng.uniform());
        out.couplings_[*out.domain_.index_of(gamma.point(i))] = w;
    }
    return out;
}

bool Configuration::supported_by(const DisorderModel& model) const {
    for (double w : couplings_)
        if (!model.in_support(w)) return false;
    return exterior_ == 0.0 || model.in_support(exterior_);
}

Configuration sample_configuration(const DisorderModel& model, const Box& box, Rng& rng) {
    std::vector<double> c(box.size());
    for (auto& w : c) w = model.quantile(rng.uniform());
    return Configuration(box, std::move(c), 0.0);
}

Configuration sample_configuration(const DisorderModel& model, const Box& box,
                                   std::uint64_t seed) {
    Rng rng(seed);
    return sample_configuration(model, box, rng);
}

Box bounding_box(const Box& a, const Box& b) {
    require(a.dim() == b.dim(), ErrorKind::parameter, "boxes of different dimension");
    LatticePoint c(a.dim());
    int radius = 0;
    for (int r = 0; r < a.dim(); ++r) {
        int lo = std::min(a.center()[r] - a.radius(), b.center()[r] - b.radius());
        int hi = std::max(a.center()[r] + a.radius(), b.center()[r] + b.radius());
        c[r] = static_cast<int>(std::floor(0.5 * (lo + hi)));
        radius = std::max({radius, c[r] - lo, hi - c[r]});
    }
    return Box(c, radius == 0 ? 0.5 : radius);
}

}  // namespace alloymsa
