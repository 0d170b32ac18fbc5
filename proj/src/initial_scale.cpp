#include "alloymsa/initial_scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "alloymsa/error.hpp"
#include "alloymsa/hamiltonian.hpp"
#include "alloymsa/numerics.hpp"
#include "alloymsa/spectral.hpp"
#include "alloymsa/wegner.hpp"

namespace alloymsa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int support_radius(const SingleSitePotential& u) {
    int r = 0;
    for (const auto& e : u.entries()) r = std::max(r, e.k.norm_inf());
    return r;
}

// lambda_2 of the free Neumann box in any dimension equals the path value
double neumann_lambda2(double l) {
    const double n = 2.0 * floor_snap(l) + 1;
    return 2 - 2 * std::cos(std::numbers::pi / n);
}

double lse(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

NeumannGap neumann_gap(double l, int d) {
    require(l >= 1, ErrorKind::parameter, "neumann gap needs l >= 1");
    NeumannGap g;
    g.l = l;
    g.formula = 2 - 2 * std::cos(std::numbers::pi / l);
    g.closed_form = neumann_lambda2(l);
    g.bound = 4 / (l * l);
    const auto ev = eigenvalues(free_operator(Box(LatticePoint(d), l), BoundaryKind::neumann));
    g.exact = ev.at(1);
    return g;
}

double beta0(const SingleSitePotential& u) {
    require(u.mean() > 0, ErrorKind::precondition, "beta0 needs u-bar > 0");
    return 65.0 / 32.0 + 8 * u.l1_norm() / u.mean();
}

TempleReport temple_lower_bound(const SingleSitePotential& u, const Configuration& config, double l,
                                double beta, int R) {
    require(l >= 1 && beta > 0, ErrorKind::parameter, "temple bound needs l >= 1, beta > 0");
    require(u.mean() > 0, ErrorKind::precondition, "temple bound needs u-bar > 0");
    TempleReport r;
    const Box box(LatticePoint(u.dim()), l);
    const double n = static_cast<double>(box.size());
    const double small = 1 / (8 * beta * l * l);
    r.level = 8 / (beta * l * l * u.l1_norm());
    std::vector<double> wt = config.couplings();
    for (double& w : wt) w = std::min(w, r.level);
    const Configuration trunc(config.domain(), std::move(wt),
                              std::min(config.exterior_value(), r.level));
    const auto v = assemble_potential(u, config, box);
    const auto vt = assemble_potential(u, trunc, box);
    r.shift_max = -kInf;
    r.v_trunc_min = kInf;
    CompensatedSum h1, h2;
    for (std::size_t i = 0; i < box.size(); ++i) {
        r.shift_max = std::max(r.shift_max, vt[i] - v[i]);
        r.v_trunc_min = std::min(r.v_trunc_min, vt[i]);
        // the free Neumann part annihilates constants, so h psi = v~ psi
        h1.add(vt[i]);
        h2.add(vt[i] * vt[i]);
    }
    r.h_mean = h1.value() / n;
    r.h2_mean = h2.value() / n;
    r.lambda2_free = neumann_lambda2(l);
    r.xi = r.lambda2_free - small;

    CompensatedSum outer;
    const Box wide(box.center(), l + R);
    for (std::size_t i = 0; i < wide.size(); ++i) outer.add(trunc.at(wide.point(i)));
    r.chain_value = 0.75 * u.mean() / n * outer.value() - 0.375 / (beta * l * l);

    require(r.shift_max <= small * (1 + 1e-12), ErrorKind::precondition,
            "truncation raises the potential by " + std::to_string(r.shift_max) +
                " > l^-2/(8 beta); negative part too large");
    require(r.v_trunc_min >= -small * (1 + 1e-12), ErrorKind::precondition,
            "truncated potential drops to " + std::to_string(r.v_trunc_min) +
                " < -l^-2/(8 beta)");
    require(r.h_mean < r.xi, ErrorKind::precondition,
            "Temple inapplicable: <h> = " + std::to_string(r.h_mean) +
                " >= xi = " + std::to_string(r.xi));
    r.lambda_hat = r.h_mean - r.h2_mean / (r.xi - r.h_mean) - small;
    return r;
}

int temple_radius(const SingleSitePotential& u) {
    require(u.mean() > 0, ErrorKind::precondition, "temple radius needs u-bar > 0");
    const double l1 = u.l1_norm_bound();
    const double factor = tail_constant(u) * (16 / l1 + u.mean() / (4 * l1 * l1));
    // factor e^{-alpha R/2} <= 1/8
    const double R = 2 / u.alpha() * std::log(8 * factor);
    int r = std::max(1, static_cast<int>(std::ceil(R)));
    while (r > 1 && factor * std::exp(-u.alpha() * (r - 1) / 2) <= 0.125) --r;
    while (factor * std::exp(-u.alpha() * r / 2) > 0.125) ++r;
    return r;
}

double l10_star(const SingleSitePotential& u, int R) {
    const int d = u.dim();
    const double A = 8 * tail_constant(u) * std::exp(-u.alpha() * R / 2) / u.l1_norm_bound();
    auto holds = [&](long l) {
        const double vol = std::pow(2.0 * l + 1, d);
        const double inner = l >= R ? std::pow(2.0 * (l - R) + 1, d) : 0.0;
        return inner / vol * A + 32.0 * d * R * std::pow(double(l + R), d - 1) / vol <= A + 0.125;
    };
    // the left side decreases like 1/l; scan far enough past the last failure
    long last_fail = 0;
    const long cap = 4096L * R * d + 4096;
    for (long l = 1; l <= cap; ++l)
        if (!holds(l)) last_fail = l;
    return static_cast<double>(last_fail + 1);
}

SmallCouplingReport small_coupling_implication(const SingleSitePotential& u,
                                               const DisorderModel& model, double l, double beta,
                                               std::size_t trials, std::uint64_t seed,
                                               Execution ex) {
    SmallCouplingReport r;
    r.trials = trials;
    r.beta0 = beta0(u);
    r.R = temple_radius(u);
    r.l9_star = 2.0 * r.R;
    r.l10_star = l10_star(u, r.R);
    r.l8_star = std::max(r.l9_star, r.l10_star);
    const double wp = model.omega_plus();
    r.delta_required = wp > 0 ? 1 / (l * l * 8 * beta * wp) : kInf;
    r.negative_mass = u.negative_part_bound();
    if (beta < r.beta0) r.violations.push_back("beta >= beta0");
    if (l < r.l8_star) r.violations.push_back("l >= l8*");
    if (r.negative_mass > r.delta_required)
        r.violations.push_back("negative part <= l^-2/(8 beta omega_+)");

    const Box box(LatticePoint(u.dim()), l);
    const Box reach(box.center(), l + support_radius(u) + 1);
    const double lam_thr = 1 / (beta * l * l);
    const double w_thr = 4 / (beta * l * l * u.mean());
    const double need = 13.0 / 12.0 * static_cast<double>(box.size()) / 2;
    // 0: vacuous, 1: implication holds, 2: counterexample
    auto outcome = run_trials<int>(
        trials,
        [&](std::size_t t) {
            Rng rng(trial_seed(seed, t));
            const Configuration cfg = sample_configuration(model, reach, rng);
            const auto ev = eigenvalues(restrict_hamiltonian(u, cfg, box, BoundaryKind::neumann));
            if (!(ev[0] < lam_thr)) return 0;
            std::size_t small = 0;
            for (std::size_t i = 0; i < box.size(); ++i)
                if (cfg.at(box.point(i)) < w_thr) ++small;
            return static_cast<double>(small) > need ? 1 : 2;
        },
        ex);
    for (int o : outcome) {
        if (o > 0) ++r.triggered;
        if (o == 2) ++r.counterexamples;
    }
    return r;
}

bool is_admissible(double l, double zeta, double beta0) {
    const double lt = std::pow(l, 1 - zeta / 2) / std::sqrt(beta0);
    const long a = static_cast<long>(std::floor(2 * l + 1));
    const long b = static_cast<long>(std::floor(2 * lt + 1));
    if (b < 1 || a % b != 0) return false;
    const long q = a / b;
    return q >= 3 && q % 2 == 1;
}

std::vector<double> admissible_lengths(double zeta, double beta0, double l_min, double l_max) {
    require(l_min < l_max, ErrorKind::parameter, "admissible scan needs l_min < l_max");
    require(zeta > 0 && zeta < 2 && beta0 > 0, ErrorKind::parameter,
            "admissible scan needs zeta in (0,2), beta0 > 0");
    std::vector<double> out;
    for (double l = l_min; l <= l_max; l += 1)
        if (is_admissible(l, zeta, beta0)) out.push_back(l);
    return out;
}

LifshitzReport lifshitz_probe(const SingleSitePotential& u, const DisorderModel& model,
                              const LifshitzParameters& p, double l, std::size_t trials,
                              std::uint64_t seed, Execution ex) {
    LifshitzReport r;
    r.l = l;
    r.zeta = p.zeta;
    r.beta0 = p.beta0 > 0 ? p.beta0 : beta0(u);
    require(is_admissible(l, p.zeta, r.beta0), ErrorKind::parameter,
            "l = " + std::to_string(l) + " is not admissible");
    const int d = u.dim();
    r.trials = trials;
    r.threshold = std::pow(l, p.zeta - 2);
    const double wp = model.omega_plus();
    r.delta = wp > 0 ? r.threshold / (8 * wp) : kInf;
    r.l_tilde = std::pow(l, 1 - p.zeta / 2) / std::sqrt(r.beta0);
    const double sub = std::floor(2 * r.l_tilde + 1);
    r.n = std::floor(2 * l + 1) / sub;
    r.chain_bound = std::pow(r.n, d) * std::exp(-std::pow(sub, d) * (121.0 / 144.0));
    r.closed_form_bound = std::pow(std::floor(2 * l + 1), d) *
                      std::exp(-std::pow(std::pow(l, -p.zeta / 2) / std::sqrt(r.beta0), d));
    r.xi_bound = std::pow(l, -p.xi);
    r.p_small = model.cdf(p.epsilon0);
    if (r.p_small > 1.0 / 12.0) r.violations.push_back("P(omega_0 < eps0) <= 1/12");
    if (u.negative_part_bound() > r.delta)
        r.violations.push_back("negative part <= l^(zeta-2)/(8 omega_+)");
    r.assumption_ok = r.violations.empty();

    const Box box(LatticePoint(d), l);
    const Box reach(box.center(), l + support_radius(u) + 1);
    auto lam = run_trials<double>(
        trials,
        [&](std::size_t t) {
            Rng rng(trial_seed(seed, t));
            const Configuration cfg = sample_configuration(model, reach, rng);
            return eigenvalues(
                restrict_hamiltonian(u, cfg, box, BoundaryKind::dirichlet_truncation))[0];
        },
        ex);
    std::vector<double> hit(trials);
    for (std::size_t t = 0; t < trials; ++t) hit[t] = lam[t] < r.threshold;
    const MeanError me = mean_and_error(hit);
    r.p_emp = me.mean;
    r.sigma = me.std_error;
    r.lambda1_mean = mean_and_error(lam).mean;
    return r;
}

LargeDisorderReport large_disorder_probe(const SingleSitePotential& u, const LeadingIndexData& lead,
                                         const DisorderModel& model, const MSAParameters& p) {
    require(p.l0 > 0 && p.m0 > 0 && p.xi > 0, ErrorKind::parameter,
            "large disorder probe needs l0, m0, xi > 0");
    LargeDisorderReport r;
    const int d = u.dim();
    const double bv = density_bv_norm(model);
    r.C1_hat = 2 * uniform_wegner_constant(u, lead);
    r.C1 = bv * r.C1_hat;
    r.C2 = 2 * model.omega_plus() * tail_constant(u);
    const double log_target = -2 * p.xi * std::log(p.l0);
    r.target = std::exp(log_target);
    const double log_pref = std::log(r.C1_hat) + (3.0 * d + lead.order()) * std::log(2 * p.l0 + 1);
    const double log_tail = r.C2 > 0 ? std::log(r.C2) - 1.5 * p.l0 * u.alpha() : -kInf;
    for (int sign : {1, -1}) {
        const double log_br = lse(std::log(2.0) + sign * p.m0 * p.l0, log_tail);
        const double log_rhs = (bv > 0 ? std::log(bv) : -kInf) + log_pref + log_br;
        const double rhs = std::exp(log_rhs);
        const double max_bv = std::exp(log_target - log_pref - log_br);
        const bool ok = log_rhs <= log_target;
        if (sign > 0) {
            r.rhs_positive = rhs;
            r.max_bv_positive = max_bv;
            r.satisfies_positive = ok;
        } else {
            r.rhs_negative = rhs;
            r.max_bv_negative = max_bv;
            r.satisfies_negative = ok;
        }
    }
    return r;
}

double epsilon_l(const SingleSitePotential& u, const DisorderModel& model, double zeta, double l) {
    return std::pow(l, zeta - 2) -
           model.omega_plus() * tail_constant(u) * std::exp(-1.5 * l * u.alpha());
}

double l14_star(const SingleSitePotential& u, const DisorderModel& model, double zeta) {
    return threshold_scan([&](double ll) {
        const double c = model.omega_plus() * tail_constant(u);
        if (c == 0) return true;
        // l^{zeta-2} > c e^{-3 l alpha/2} in logs
        return (zeta - 2) * ll > std::log(c) - 1.5 * std::exp(ll) * u.alpha();
    });
}

L0Report eval_l0(const SingleSitePotential& u, const LeadingIndexData& lead,
                 const DisorderModel& model, const MSAParameters& p, double zeta, double eps) {
    require(eps > 0 && eps < 1, ErrorKind::parameter, "eps must lie in (0,1)");
    L0Report r;
    const double gap = zeta - (2 - 2 * (1 - p.beta) / p.kappa);
    r.first_term = gap > 0 ? std::pow(3 / ((1 - p.q) * (1 - eps)), 2 / gap) : kInf;
    r.l14 = l14_star(u, model, zeta);
    r.l16 = threshold_scan([&](double ll) {
        return std::log(1 - eps) + (zeta / 2 - 1) * ll > (p.beta - 1) * ll;
    });
    r.l_star = validate_parameters(p, lead, u, model).l_star;
    r.value = std::max({r.first_term, r.l14, r.l16, r.l_star});
    r.not_computed = {"l11*", "l15*"};
    return r;
}

}  // namespace alloymsa
