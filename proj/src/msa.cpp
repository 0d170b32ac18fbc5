#include "alloymsa/msa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alloymsa/error.hpp"
#include "alloymsa/numerics.hpp"
#include "alloymsa/resonance.hpp"
#include "alloymsa/spectral.hpp"
#include "alloymsa/wegner.hpp"

namespace alloymsa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b) with -inf allowed
double lse(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// ln(c L + e) for L = e^{lnL}
double log_affine(double lnL, double c, double e) { return lnL + std::log(c + e * std::exp(-lnL)); }

}  // namespace

double auto_zeta(const MSAParameters& p, int d, int order) {
    return p.kappa * (5.0 * d + order + 2 * p.xi) + 1;
}

bool regularity_test(const BoxOperator& op, const LatticePoint& center, double m, double E) {
    require(op.box.contains(center), ErrorKind::geometry, "center outside the operator box");
    std::vector<double> col;
    try {
        col = GreensSolver(op, E).column(center);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::resonant_energy) return false;
        throw;
    }
    const double thr = std::exp(-m * op.box.half_side());
    for (const auto& w : op.box.interior_boundary())
        if (std::abs(col[op.index_of(w)]) > thr) return false;
    return true;
}

bool nonresonance_test(std::span<const double> spectrum, double E, double zeta, double l) {
    return distance_to_spectrum(spectrum, E) >= 0.5 * std::pow(l, -zeta);
}

bool nonresonance_test(const BoxOperator& op, double E, double zeta, double l) {
    const auto ev = eigenvalues(op);
    return nonresonance_test(ev, E, zeta, l);
}

const char* to_string(Regularity r) {
    switch (r) {
        case Regularity::certified_regular: return "certified_regular";
        case Regularity::certified_irregular: return "certified_irregular";
        case Regularity::indeterminate: return "indeterminate";
    }
    return "?";
}

UniformRegularity classify_regularity(double green_max, double dist, double delta, double m,
                                      double l) {
    UniformRegularity r;
    r.green_max = green_max;
    r.dist = dist;
    r.delta = delta;
    r.threshold = std::exp(-m * l);
    if (delta == 0) {
        // exterior cannot reach the box: the plain test decides
        if (dist < kResonanceGuard || green_max > r.threshold)
            r.verdict = Regularity::certified_irregular;
        else
            r.verdict = Regularity::certified_regular;
        return r;
    }
    if (delta >= dist) {
        r.slack = kInf;
        r.verdict = Regularity::indeterminate;
        return r;
    }
    // |G' - G| <= delta |G|^2 / (1 - delta |G|) with |G| = 1/dist
    r.slack = delta / (dist * (dist - delta));
    if (green_max + r.slack <= r.threshold)
        r.verdict = Regularity::certified_regular;
    else if (green_max - r.slack > r.threshold)
        r.verdict = Regularity::certified_irregular;
    else
        r.verdict = Regularity::indeterminate;
    return r;
}

UniformRegularity uniform_regularity_test(const SingleSitePotential& u, const DisorderModel& model,
                                          const Configuration& config, double l, double m,
                                          double E) {
    const Box box(config.domain().center(), l);
    require(config.domain().radius() == Box(box.center(), 4 * l).radius(), ErrorKind::geometry,
            "configuration must live on Lambda_{4l}(center)");
    const BoxOperator op = restrict_hamiltonian(u, config.with_exterior(0.0), box,
                                                BoundaryKind::dirichlet_truncation);
    const auto ev = eigenvalues(op);
    const double delta = perturbation_radius(u, model, l).radius;
    const double dist = distance_to_spectrum(ev, E);
    double g = kInf;
    if (dist >= kResonanceGuard) {
        const auto col = GreensSolver(op, E, ev).column(box.center());
        g = 0;
        for (const auto& w : box.interior_boundary()) g = std::max(g, std::abs(col[op.index_of(w)]));
    }
    return classify_regularity(g, dist, delta, m, l);
}

std::vector<double> energy_grid(const Interval& I, std::size_t points) {
    require(I.lo <= I.hi, ErrorKind::parameter, "interval needs E1 <= E2");
    if (points == 0) return {};
    if (points == 1) return {0.5 * (I.lo + I.hi)};
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = I.lo + (I.hi - I.lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return g;
}

namespace {

struct BoxVerdicts {
    std::vector<char> not_regular;  // per energy
    bool any_not_regular = false;
    bool any_irregular = false;
};

BoxVerdicts box_verdicts(const SingleSitePotential& u, const Configuration& config, double l,
                         double m, std::span<const double> energies, double delta) {
    const Box box(config.domain().center(), l);
    const BoxOperator op = restrict_hamiltonian(u, config.with_exterior(0.0), box,
                                                BoundaryKind::dirichlet_truncation);
    const SpectrumResult spec = eigensolve(op, true);
    const SpectralResolvent res(op, spec);
    const std::size_t c = op.index_of(box.center());
    std::vector<std::size_t> boundary;
    for (const auto& w : box.interior_boundary()) boundary.push_back(op.index_of(w));
    BoxVerdicts out;
    out.not_regular.assign(energies.size(), 0);
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const double E = energies[i];
        const double dist = res.distance(E);
        double g = kInf;
        if (dist >= kResonanceGuard) {
            g = 0;
            for (std::size_t w : boundary) g = std::max(g, std::abs(res(E, c, w)));
        }
        const auto r = classify_regularity(g, dist, delta, m, l);
        if (r.verdict != Regularity::certified_regular) {
            out.not_regular[i] = 1;
            out.any_not_regular = true;
        }
        if (r.verdict == Regularity::certified_irregular) out.any_irregular = true;
    }
    return out;
}

}  // namespace

SingularityEstimate estimate_singularity_probability(const SingleSitePotential& u,
                                                     const DisorderModel& model, double l,
                                                     double m, std::span<const double> energies,
                                                     std::size_t trials, std::uint64_t seed,
                                                     Execution ex) {
    require(trials >= 1, ErrorKind::parameter, "at least one trial is required");
    SingularityEstimate out;
    out.trials = trials;
    out.energies.assign(energies.begin(), energies.end());
    out.per_energy_hi.assign(energies.size(), 0.0);
    out.delta = perturbation_radius(u, model, l).radius;
    if (energies.empty()) {
        out.singular.assign(trials, 0);
        return out;
    }
    const Box big(LatticePoint(u.dim()), 4 * l);
    auto verdicts = run_trials<BoxVerdicts>(
        trials,
        [&](std::size_t t) {
            Rng rng(trial_seed(seed, t));
            const Configuration cfg = sample_configuration(model, big, rng);
            return box_verdicts(u, cfg, l, m, energies, out.delta);
        },
        ex);
    std::vector<double> hi(trials), lo(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        hi[t] = verdicts[t].any_not_regular;
        lo[t] = verdicts[t].any_irregular;
        out.singular.push_back(verdicts[t].any_not_regular);
        for (std::size_t i = 0; i < energies.size(); ++i)
            out.per_energy_hi[i] += verdicts[t].not_regular[i];
    }
    for (auto& p : out.per_energy_hi) p /= static_cast<double>(trials);
    const MeanError mh = mean_and_error(hi);
    out.p_hi = mh.mean;
    out.sigma_hi = mh.std_error;
    out.p_lo = mean_and_error(lo).mean;
    return out;
}

PairSingularity sample_pair_singularity(const SingleSitePotential& u, const DisorderModel& model,
                                        const LatticePoint& x, const LatticePoint& y, double l,
                                        double m, std::span<const double> energies,
                                        std::size_t trials, std::uint64_t seed, Execution ex) {
    const Box bx(x, 4 * l), by(y, 4 * l);
    require(!bx.intersects(by), ErrorKind::geometry, "enlarged boxes overlap");
    const double delta = perturbation_radius(u, model, l).radius;
    auto flags = run_trials<std::pair<char, char>>(
        trials,
        [&](std::size_t t) {
            Rng rng(trial_seed(seed, t));
            const Configuration cx = sample_configuration(model, bx, rng);
            const Configuration cy = sample_configuration(model, by, rng);
            return std::pair<char, char>(
                box_verdicts(u, cx, l, m, energies, delta).any_not_regular,
                box_verdicts(u, cy, l, m, energies, delta).any_not_regular);
        },
        ex);
    PairSingularity out;
    for (const auto& f : flags) {
        out.first.push_back(f.first);
        out.second.push_back(f.second);
    }
    return out;
}

double l_bar(double beta, double kappa, double q, double m0) {
    const double r = (1 - q) * m0 / ((1 - q) * m0 + m0 + 1);
    return std::pow(r, -kappa / (1 - beta));
}

double threshold_scan(const std::function<bool(double)>& cond, double log_max, double step) {
    const int n = static_cast<int>(std::ceil(log_max / step));
    int last_fail = -1;
    for (int i = 0; i <= n; ++i)
        if (!cond(i * step)) last_fail = i;
    if (last_fail < 0) return 1.0;
    if (last_fail == n) return kInf;
    double lo = last_fail * step, hi = (last_fail + 1) * step;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cond(mid))
            hi = mid;
        else
            lo = mid;
    }
    return std::exp(hi);
}

ParameterReport validate_parameters(const MSAParameters& p, const LeadingIndexData& lead,
                                    const SingleSitePotential& u, const DisorderModel& model) {
    ParameterReport r;
    const int d = u.dim();
    const int N = lead.order();
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) r.violated.push_back(what);
    };
    check(p.xi > 2 * d, "xi > 2d");
    check(p.kappa > 1 && p.kappa < 2 * p.xi / (p.xi + 2 * d), "kappa in (1, 2 xi/(xi + 2d))");
    check(p.beta > 2 - p.kappa && p.beta < 1, "beta in (2 - kappa, 1)");
    check(p.q > 0 && p.q < 1, "q in (0, 1)");
    check(p.m0 > 0, "m0 > 0");
    check(p.l0 > 1, "l0 > 1");
    check(p.m0 > std::pow(p.l0, p.beta - 1), "m0 > l0^(beta-1)");

    r.zeta_nr = p.zeta_nr > 0 ? p.zeta_nr : auto_zeta(p, d, N);
    r.gamma = 0.5 * ((1 - p.beta) / p.kappa + 1 - 1 / p.kappa);
    r.l_bar = l_bar(p.beta, p.kappa, p.q, p.m0);

    const double k = p.kappa, xi = p.xi, beta = p.beta, g = r.gamma, zeta = r.zeta_nr;
    const double bv = density_bv_norm(model);
    const double C1 = 2 * uniform_wegner_constant(u, lead) * bv;
    const double C2 = 2 * model.omega_plus() * tail_constant(u);
    const double lnC1 = C1 > 0 ? std::log(C1) : -kInf;
    const double lnC2 = C2 > 0 ? std::log(C2) : -kInf;
    const double a = u.alpha();

    auto& t = r.thresholds;
    t["l1*"] = threshold_scan([&](double ll) {
        return 4 * d * std::log(2.0) + 4 * (k * d - xi) * ll <= -std::log(3.0) - 2 * xi * k * ll;
    });
    t["l2*"] = threshold_scan([&](double ll) { return log_affine(ll, 24, 2) <= k * ll; });
    t["l3*"] = std::isfinite(C1) ? threshold_scan([&](double ll) {
        const double lnL = k * ll;
        const double lhs = std::log(16.0) + lnC1 + (5.0 * d + N) * log_affine(lnL, 2, 1) +
                           lse(-zeta * ll, lnC2 - 12 * a * std::exp(ll));
        return lhs <= -std::log(3.0) - 2 * xi * lnL;
    })
                                 : kInf;
    t["l4*"] = threshold_scan([&](double ll) {
        return d * std::log(2.0) + std::log(d) + (d - 1) * log_affine(ll, 1, 1) -
                   std::exp(beta * ll) <
               0;
    });
    t["l5*"] = threshold_scan([&](double ll) {
        return (2 * d + 1) * std::log(2.0) + 2 * std::log(d) +
                   (d - 1) * (log_affine(ll, 24, 3) + log_affine(ll, 1, 1)) +
                   zeta * log_affine(ll, 24, 2) - std::exp(beta * ll) <
               0;
    });
    t["l6*"] = threshold_scan([&](double ll) {
        const double lnL = k * ll;
        const double ln_a = lse(std::log(2.0) / k - lnL / k, std::log(63.0) + (1 / k - 1) * lnL);
        const double ln_b =
            lse(std::log(2.0) / k - lnL / k +
                    std::log(d * std::log(4.0) + std::log(d) + d / k * lnL),
                std::log(std::log(2.0) + zeta * lnL) - lnL);
        return ln_a <= -g * lnL && ln_b <= -g * lnL;
    });
    t["l7*"] = threshold_scan([&](double ll) {
        const double lnL = k * ll;
        const double s = (1 - beta) / k;
        return std::exp((beta - 1 + s) * lnL) + std::exp(-g * lnL) + std::exp((s - g) * lnL) < 1;
    });
    r.l_star = 1;
    for (const auto& [name, v] : t) r.l_star = std::max(r.l_star, v);
    check(p.l0 >= r.l_star, "l0 >= l*");
    check(p.l0 >= r.l_bar, "l0 >= l_bar");
    if (p.kappa > 1 && p.beta < 1 && p.l0 > 1)
        check(mass_loss_series(p) <= (1 - p.q) * p.m0, "mass-loss series <= (1-q) m0");
    r.ok = r.violated.empty();
    return r;
}

double next_mass(double m, double log_L, double beta, double kappa) {
    const double x = std::exp(-(1 - beta) / kappa * log_L);
    return m * (1 - x) - x;
}

double mass_loss_series(const MSAParameters& p) {
    const double e = (1 - p.beta) / p.kappa;
    CompensatedSum series;
    double log_l = std::log(p.l0);
    for (int j = 0; j < 1000000; ++j) {
        log_l *= p.kappa;
        const double term = std::exp(-e * log_l);
        series.add(term);
        if (term < 1e-30 * series.value() || term == 0) break;
    }
    return (p.m0 + 1) * series.value();
}

ScaleSchedule scale_schedule(const MSAParameters& p, int k_max) {
    require(k_max >= 0, ErrorKind::parameter, "k_max must be nonnegative");
    require(p.kappa > 1 && p.beta < 1 && p.q > 0 && p.q < 1 && p.m0 > 0 && p.l0 > 1,
            ErrorKind::parameter, "schedule needs kappa > 1, beta < 1, q in (0,1), m0 > 0, l0 > 1");
    ScaleSchedule s;
    s.m_inf = p.q * p.m0;
    s.l_bar = l_bar(p.beta, p.kappa, p.q, p.m0);
    const double e = (1 - p.beta) / p.kappa;
    const double log_l0 = std::log(p.l0);
    const double x = std::exp(-e * log_l0);
    s.geometric_bound = (p.m0 + 1) * x / (1 - x);
    s.exact_series = mass_loss_series(p);
    const double budget = (1 - p.q) * p.m0;
    if (s.geometric_bound > budget * (1 + 1e-12))
        fail(ErrorKind::schedule, "k = 0: mass-loss bound " + std::to_string(s.geometric_bound) +
                                      " exceeds (1-q) m0 = " + std::to_string(budget) +
                                      " (l0 below l_bar = " + std::to_string(s.l_bar) + ")");
    // for kappa below 3^(1/3) the geometric bound can undercount the series
    if (s.exact_series > budget * (1 + 1e-12))
        fail(ErrorKind::schedule, "k = 0: mass-loss series " + std::to_string(s.exact_series) +
                                      " exceeds (1-q) m0 = " + std::to_string(budget));
    double m = p.m0, log_l = log_l0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            log_l *= p.kappa;
            m = next_mass(m, log_l, p.beta, p.kappa);
        }
        s.log_l.push_back(log_l);
        s.l.push_back(std::exp(log_l));
        s.m.push_back(m);
        const double floor_m = std::exp((p.beta - 1) * log_l);
        if (!(m > floor_m))
            fail(ErrorKind::schedule, "k = " + std::to_string(k) + ": m_k = " + std::to_string(m) +
                                          " not above l_k^(beta-1) = " + std::to_string(floor_m));
        if (m < s.m_inf - 1e-12 * p.m0)
            fail(ErrorKind::schedule, "k = " + std::to_string(k) + ": m_k = " + std::to_string(m) +
                                          " below m_inf = " + std::to_string(s.m_inf));
    }
    s.mass_loss = p.m0 - s.m.back();
    return s;
}

}  // namespace alloymsa
