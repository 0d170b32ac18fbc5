#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alloymsa/configuration.hpp"
#include "alloymsa/density.hpp"
#include "alloymsa/genfun.hpp"
#include "alloymsa/msa.hpp"
#include "alloymsa/parallel.hpp"
#include "alloymsa/potential.hpp"

namespace alloymsa {

struct NeumannGap {
    double l = 0;
    double formula = 0;      // 2 - 2 cos(pi / l)
    double exact = 0;        // lambda_2 of the free Neumann box, eigensolve
    double closed_form = 0;  // 2 - 2 cos(pi / (2 floor(l) + 1))
    double bound = 0;        // 4 l^-2
};

NeumannGap neumann_gap(double l, int d);

// 65/32 + 8 |u|_1 / u-bar; needs u-bar > 0
double beta0(const SingleSitePotential& u);

struct TempleReport {
    double lambda_hat = 0;
    double h_mean = 0;  // <psi, h psi> for the truncated couplings
    double h2_mean = 0;
    double xi = 0;
    double lambda2_free = 0;
    double level = 0;        // truncation level 8 l^-2 / (beta |u|_1)
    double shift_max = 0;    // max (v_trunc - v)
    double v_trunc_min = 0;  // min v_trunc
    double chain_value = 0;  // 3/4 (u-bar/|L|) sum_{L_{l+R}} w~ - 3/8 l^-2 / beta
};

// Temple lower bound for lambda_1 of the Neumann operator on Lambda_l(0);
// the preconditions of the argument are checked and raise precondition errors
TempleReport temple_lower_bound(const SingleSitePotential& u, const Configuration& config, double l,
                                double beta, int R = 0);

struct SmallCouplingReport {
    std::size_t trials = 0;
    std::size_t triggered = 0;  // lambda_1 < l^-2 / beta
    std::size_t counterexamples = 0;
    double beta0 = 0;
    int R = 0;
    double l8_star = 0, l9_star = 0, l10_star = 0;
    double delta_required = 0;  // l^-2 / (8 beta omega_+)
    double negative_mass = 0;
    std::vector<std::string> violations;  // preconditions that fail
};

// smallest R with C-hat e^{-alpha R/2} [16/|u|_1 + u-bar/(4 |u|_1^2)] <= 1/8
int temple_radius(const SingleSitePotential& u);
double l10_star(const SingleSitePotential& u, int R);

SmallCouplingReport small_coupling_implication(const SingleSitePotential& u,
                                               const DisorderModel& model, double l, double beta,
                                               std::size_t trials, std::uint64_t seed,
                                               Execution ex = default_execution());

// unit-step scan of l in [l_min, l_max] with floor(2l+1)/floor(2 l~ + 1) in {3, 5, ...}
std::vector<double> admissible_lengths(double zeta, double beta0, double l_min, double l_max);
bool is_admissible(double l, double zeta, double beta0);

struct LifshitzParameters {
    double zeta = 1;
    double xi = 1;
    double beta0 = 0;  // 0 means derive from u
    double epsilon0 = 0;
};

struct LifshitzReport {
    double l = 0;
    double zeta = 0, beta0 = 0, delta = 0;
    std::size_t trials = 0;
    double p_emp = 0, sigma = 0;
    double xi_bound = 0;    // l^-xi
    double chain_bound = 0;    // n^d exp(-|Lambda_l~| (11/12)^2)
    double closed_form_bound = 0;  // floor(2l+1)^d exp(-(l^{-zeta/2} beta0^{-1/2})^d)
    double lambda1_mean = 0;
    double l_tilde = 0;
    double n = 0;
    double threshold = 0;  // l^{-2+zeta}
    double p_small = 0;    // P(omega_0 < epsilon_0)
    bool assumption_ok = false;
    std::vector<std::string> violations;
};

LifshitzReport lifshitz_probe(const SingleSitePotential& u, const DisorderModel& model,
                              const LifshitzParameters& p, double l, std::size_t trials,
                              std::uint64_t seed, Execution ex = default_execution());

struct LargeDisorderReport {
    double C1_hat = 0, C1 = 0, C2 = 0;
    double target = 0;  // l0^{-2 xi}
    // both exponent signs of the 2 e^{+-m0 l0} term
    double rhs_positive = 0, rhs_negative = 0;
    bool satisfies_positive = false, satisfies_negative = false;
    double max_bv_positive = 0, max_bv_negative = 0;
};

LargeDisorderReport large_disorder_probe(const SingleSitePotential& u, const LeadingIndexData& lead,
                                         const DisorderModel& model, const MSAParameters& p);

// l^{-2+zeta} - omega_+ C-hat e^{-3 l alpha / 2}
double epsilon_l(const SingleSitePotential& u, const DisorderModel& model, double zeta, double l);
double l14_star(const SingleSitePotential& u, const DisorderModel& model, double zeta);

struct L0Report {
    double first_term = 0;  // (3/((1-q)(1-eps)))^{2/(zeta - (2 - 2(1-beta)/kappa))}
    double l14 = 0, l16 = 0, l_star = 0;
    double value = 0;  // max of the computable terms
    std::vector<std::string> not_computed;
};

L0Report eval_l0(const SingleSitePotential& u, const LeadingIndexData& lead,
                 const DisorderModel& model, const MSAParameters& p, double zeta, double eps);

}  // namespace alloymsa
