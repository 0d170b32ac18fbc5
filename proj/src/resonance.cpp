#include "alloymsa/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alloymsa/error.hpp"
#include "alloymsa/hamiltonian.hpp"
#include "alloymsa/numerics.hpp"
#include "alloymsa/spectral.hpp"
#include "alloymsa/wegner.hpp"

namespace alloymsa {

namespace {

int support_radius(const SingleSitePotential& u) {
    int r = 0;
    for (const auto& e : u.entries()) r = std::max(r, e.k.norm_inf());
    return r;
}

}  // namespace

PerturbationRadius perturbation_radius(const SingleSitePotential& u, const DisorderModel& model,
                                       double l) {
    require(l > 0, ErrorKind::parameter, "perturbation radius needs l > 0");
    PerturbationRadius r;
    const double wp = model.omega_plus();
    r.formula = wp * tail_bound(u, l, 3 * l);
    const LatticePoint origin(u.dim());
    const Box box(origin, l);
    const Box enlarged(origin, 4 * l);
    double worst = 0;
    for (std::size_t i = 0; i < box.size(); ++i) {
        const LatticePoint x = box.point(i);
        CompensatedSum s;
        for (const auto& e : u.entries())
            if (!enlarged.contains(x - e.k)) s.add(std::abs(e.value));
        worst = std::max(worst, s.value() + s.rounding_bound());
    }
    r.exact_leak = wp == 0 ? 0.0 : wp * (worst + u.truncation_residual());
    r.radius = std::min(r.formula, r.exact_leak);
    return r;
}

SpectrumBracket spectrum_bracket(const SingleSitePotential& u, const DisorderModel& model,
                                 const Configuration& config, const Box& box) {
    const Box enlarged(box.center(), 4 * box.half_side());
    require(config.domain().center() == enlarged.center() &&
                config.domain().radius() == enlarged.radius(),
            ErrorKind::geometry, "bracket configuration must live on Lambda_{4l}(x)");
    const Configuration zeroed = config.with_exterior(0.0);
    SpectrumBracket b{box, enlarged, {}, 0.0};
    b.base_spectrum =
        eigenvalues(restrict_hamiltonian(u, zeroed, box, BoundaryKind::dirichlet_truncation));
    b.radius = perturbation_radius(u, model, box.half_side()).radius;
    return b;
}

const char* to_string(ResonanceClass c) {
    switch (c) {
        case ResonanceClass::certified_in_A: return "certified_in_A";
        case ResonanceClass::certified_out_A: return "certified_out_A";
        case ResonanceClass::indeterminate: return "indeterminate";
    }
    return "?";
}

double spectral_distance(std::span<const double> a, std::span<const double> b) {
    double best = INFINITY;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        best = std::min(best, std::abs(a[i] - b[j]));
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return best;
}

namespace {

ResonanceClass classify_distance(double d0, double d1, double d2, double eps) {
    if (d0 < eps) return ResonanceClass::certified_in_A;
    if (d0 - d1 - d2 >= eps) return ResonanceClass::certified_out_A;
    return ResonanceClass::indeterminate;
}

}  // namespace

ResonanceClass classify_resonance(const SpectrumBracket& b1, const SpectrumBracket& b2, double eps) {
    require(!b1.enlarged.intersects(b2.enlarged), ErrorKind::geometry,
            "enlarged boxes overlap; the two spectra are not independent");
    return classify_distance(spectral_distance(b1.base_spectrum, b2.base_spectrum), b1.radius,
                             b2.radius, eps);
}

std::vector<ResonanceEstimate> estimate_resonance_probability(
    const SingleSitePotential& u, const LeadingIndexData& lead, const DisorderModel& model,
    const LatticePoint& x, const LatticePoint& y, double l1, double l2, std::span<const double> eps,
    std::size_t trials, std::uint64_t seed, Execution ex) {
    require(trials >= 1, ErrorKind::parameter, "at least one trial is required");
    for (double e : eps) require(e >= 0, ErrorKind::parameter, "eps must be nonnegative");
    const Box box1(x, l1), box2(y, l2);
    const Box big1(x, 4 * l1), big2(y, 4 * l2);
    require(!big1.intersects(big2), ErrorKind::geometry,
            "enlarged boxes overlap; the two spectra are not independent");
    const double R2 = companion_radius(u, lead, l2);
    require(4 * l2 >= R2, ErrorKind::precondition,
            "need 4 l2 >= R_l2 (R = " + std::to_string(R2) + ")");

    const double d1 = perturbation_radius(u, model, l1).radius;
    const double d2 = perturbation_radius(u, model, l2).radius;

    auto dist = run_trials<double>(
        trials,
        [&](std::size_t t) {
            Rng rng(trial_seed(seed, t));
            const Configuration c1 = sample_configuration(model, big1, rng);
            const Configuration c2 = sample_configuration(model, big2, rng);
            const auto s1 =
                eigenvalues(restrict_hamiltonian(u, c1, box1, BoundaryKind::dirichlet_truncation));
            const auto s2 =
                eigenvalues(restrict_hamiltonian(u, c2, box2, BoundaryKind::dirichlet_truncation));
            return spectral_distance(s1, s2);
        },
        ex);

    const double bv = density_bv_norm(model);
    const double chain = wegner_constant_chain(u, lead, l2);
    const double cw = uniform_wegner_constant(u, lead);
    const double C1 = 2 * cw * bv;
    const double C2 = 2 * model.omega_plus() * tail_constant(u);
    const int d = u.dim();
    const double big = std::max(l1, l2), small = std::min(l1, l2);

    std::vector<ResonanceEstimate> out;
    for (double e : eps) {
        ResonanceEstimate r;
        r.eps = e;
        r.trials = trials;
        r.delta1 = d1;
        r.delta2 = d2;
        std::vector<double> lo(trials), hi(trials);
        for (std::size_t t = 0; t < trials; ++t) {
            const auto c = classify_distance(dist[t], d1, d2, e);
            lo[t] = c == ResonanceClass::certified_in_A;
            hi[t] = c != ResonanceClass::certified_out_A;
        }
        const MeanError mlo = mean_and_error(lo), mhi = mean_and_error(hi);
        r.p_lo = mlo.mean;
        r.sigma_lo = mlo.std_error;
        r.p_hi = mhi.mean;
        r.sigma_hi = mhi.std_error;
        r.theory_bound = static_cast<double>(box1.size()) * bv * (e + d1 + d2) * chain;
        r.C1 = C1;
        r.C2 = C2;
        r.c_w = cw;
        r.theory_bound_uniform = C1 * std::pow(2 * big + 1, 3 * d + lead.order()) *
                                 (e + C2 * std::exp(-3 * small * u.alpha() / 2));
        out.push_back(r);
    }
    return out;
}

ResonanceEstimate estimate_resonance_probability(
    const SingleSitePotential& u, const LeadingIndexData& lead, const DisorderModel& model,
    const LatticePoint& x, const LatticePoint& y, double l1, double l2, double eps,
    std::size_t trials, std::uint64_t seed, Execution ex) {
    const double e[] = {eps};
    return estimate_resonance_probability(u, lead, model, x, y, l1, l2, e, trials, seed, ex)[0];
}

BracketCheck bracket_soundness(const SingleSitePotential& u, const DisorderModel& model,
                               const Configuration& config, const Box& box,
                               std::size_t completions, std::uint64_t seed) {
    const SpectrumBracket b = spectrum_bracket(u, model, config, box);
    BracketCheck out;
    out.completions = completions;
    out.radius = b.radius;
    // couplings that can reach the box
    const double reach = std::max(4 * box.half_side(), box.half_side() + support_radius(u) + 1);
    const Box outer(box.center(), reach);
    for (std::size_t c = 0; c < completions; ++c) {
        Rng rng(trial_seed(seed, c));
        Configuration full = sample_configuration(model, outer, rng);
        std::vector<double> w = full.couplings();
        for (std::size_t i = 0; i < config.domain().size(); ++i)
            w[*outer.index_of(config.domain().point(i))] = config.couplings()[i];
        const Configuration completed(outer, std::move(w), 0.0);
        const auto ev =
            eigenvalues(restrict_hamiltonian(u, completed, box, BoundaryKind::dirichlet_truncation));
        double shift = 0;
        for (std::size_t j = 0; j < ev.size(); ++j)
            shift = std::max(shift, std::abs(ev[j] - b.base_spectrum[j]));
        out.max_shift = std::max(out.max_shift, shift);
        // eigenvalue rounding is far below 1e-12 at these sizes
        if (shift > b.radius + 1e-12) ++out.violations;
    }
    return out;
}

}  // namespace alloymsa
