#include "alloymsa/wegner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alloymsa/error.hpp"
#include "alloymsa/hamiltonian.hpp"
#include "alloymsa/numerics.hpp"
#include "alloymsa/spectral.hpp"

namespace alloymsa {

double wegner_constant_chain(const SingleSitePotential& u, const LeadingIndexData& lead, double l) {
    const PositivityReport cert = positivity_certificate(u, lead, l);
    require(cert.holds, ErrorKind::precondition,
            "positivity certificate fails at l = " + std::to_string(l) + " (min " +
                std::to_string(cert.min_value) + ")");
    const Box gamma(LatticePoint(u.dim()), cert.radius);
    CompensatedSum s;
    for (std::size_t i = 0; i < gamma.size(); ++i)
        s.add(std::abs(monomial(gamma.point(i), lead.leading)));
    const Box box(LatticePoint(u.dim()), l);
    return 2.0 / std::abs(lead.c_u) * static_cast<double>(box.size()) * s.value();
}

double uniform_wegner_constant(const SingleSitePotential& u, const LeadingIndexData& lead) {
    const double a = u.alpha();
    const int d = u.dim();
    // R_l = max(2l + D, D'), so 2 ceil(R_l) + 1 <= 4l + 2 D+ + 2 D' + 3 <= K (2l + 1)
    const double D = (2 / a) * std::log(2 * std::pow(3.0, d) * u.C() /
                                        (std::abs(lead.c_u) * (1 - std::exp(-a / 2))));
    const double n = d + lead.order();
    const double Dp = 8 * n * n / (a * a);
    const double K = std::max(2.0, 2 * std::max(D, 0.0) + 2 * Dp + 3);
    return 2.0 / std::abs(lead.c_u) * std::pow(K, d) * std::pow(K / 2, lead.order());
}

WegnerBoundReport wegner_bound(const SingleSitePotential& u, const LeadingIndexData& lead,
                               const DisorderModel& model, double l, const Interval& I) {
    require(I.lo <= I.hi, ErrorKind::parameter, "interval needs E1 <= E2");
    WegnerBoundReport r;
    r.c_w_chain = wegner_constant_chain(u, lead, l);
    r.R_l = companion_radius(u, lead, l);
    r.radius = enumeration_radius(u, lead, l);
    r.bv_norm = density_bv_norm(model);
    r.interval_length = I.length();
    r.bound = r.interval_length == 0 ? 0.0 : 0.5 * r.bv_norm * r.interval_length * r.c_w_chain;
    r.c_w_uniform = uniform_wegner_constant(u, lead);
    r.volume_form = r.interval_length == 0
                        ? 0.0
                        : r.c_w_uniform * r.bv_norm * r.interval_length *
                              std::pow(2 * l + 1, 2 * u.dim() + lead.order());
    return r;
}

WegnerSample sample_eigenvalue_counts(const SingleSitePotential& u, const LeadingIndexData& lead,
                                      const DisorderModel& model, double l,
                                      std::span<const Interval> intervals,
                                      const Configuration& exterior, std::size_t trials,
                                      std::uint64_t seed, Execution ex) {
    require(trials >= 1, ErrorKind::parameter, "at least one trial is required");
    for (const auto& I : intervals)
        require(I.lo <= I.hi, ErrorKind::parameter, "interval needs E1 <= E2");
    WegnerSample out;
    out.intervals.assign(intervals.begin(), intervals.end());
    out.radius = enumeration_radius(u, lead, l);
    const LatticePoint origin(u.dim());
    const Box box(origin, l);
    require(box.size() <= capacity_limit(), ErrorKind::capacity,
            "box with " + std::to_string(box.size()) + " points exceeds the dense capacity");
    // couplings beyond Lambda_{l + supp} never reach the box, so only the
    // part of Gamma inside it is redrawn
    int supp = 0;
    for (const auto& e : u.entries()) supp = std::max(supp, e.k.norm_inf());
    const int reach_r = box.radius() + supp;
    const Box gamma(origin, std::min(out.radius, reach_r));
    const Configuration base = exterior.on_domain(Box(origin, reach_r), exterior.exterior_value());

    auto per_trial = run_trials<std::vector<double>>(
        trials,
        [&](std::size_t t) {
            Rng rng(trial_seed(seed, t));
            const Configuration cfg = base.resampled(gamma, model, rng);
            const auto ev = eigenvalues(
                restrict_hamiltonian(u, cfg, box, BoundaryKind::dirichlet_truncation));
            std::vector<double> c(out.intervals.size());
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = static_cast<double>(count_in(ev, out.intervals[i]));
            return c;
        },
        ex);

    out.counts.assign(out.intervals.size(), std::vector<double>(trials));
    for (std::size_t t = 0; t < trials; ++t)
        for (std::size_t i = 0; i < out.intervals.size(); ++i) out.counts[i][t] = per_trial[t][i];
    for (const auto& c : out.counts) out.stats.push_back(mean_and_error(c));
    return out;
}

MeanError estimate_partial_expectation(const SingleSitePotential& u, const LeadingIndexData& lead,
                                       const DisorderModel& model, double l, const Interval& I,
                                       const Configuration& exterior, std::size_t trials,
                                       std::uint64_t seed, Execution ex) {
    const Interval one[] = {I};
    return sample_eigenvalue_counts(u, lead, model, l, one, exterior, trials, seed, ex).stats[0];
}

ExponentFit exponent_fit(std::span<const double> ls, std::span<const double> means, int d) {
    require(ls.size() == means.size(), ErrorKind::parameter, "scale and mean counts differ");
    require(ls.size() >= 3, ErrorKind::fit, "exponent fit needs at least 3 scales");
    require(d >= 1, ErrorKind::parameter, "dimension must be positive");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        require(means[i] > 0, ErrorKind::fit,
                "mean at l = " + std::to_string(ls[i]) + " is zero, log undefined");
        x.push_back(std::log(2 * ls[i] + 1));
        y.push_back(std::log(means[i]));
    }
    const LinearFit f = least_squares(x, y);
    return {f.slope / d, f.intercept, f.r2};
}

}  // namespace alloymsa
