#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "alloymsa/configuration.hpp"
#include "alloymsa/density.hpp"
#include "alloymsa/genfun.hpp"
#include "alloymsa/hamiltonian.hpp"
#include "alloymsa/parallel.hpp"
#include "alloymsa/potential.hpp"

namespace alloymsa {

struct MSAParameters {
    double xi = 0;
    double kappa = 0;
    double beta = 0;
    double q = 0;
    double m0 = 0;
    double l0 = 0;
    double zeta_nr = 0;  // 0 means derive kappa (5d + N + 2 xi) + 1
};

double auto_zeta(const MSAParameters& p, int d, int order);

// (m,E)-regular: E off the spectrum and max_{w in inner boundary} |G(E; center, w)| <= e^{-ml}
bool regularity_test(const BoxOperator& op, const LatticePoint& center, double m, double E);

// d(E, sigma) >= l^{-zeta} / 2
bool nonresonance_test(std::span<const double> spectrum, double E, double zeta, double l);
bool nonresonance_test(const BoxOperator& op, double E, double zeta, double l);

enum class Regularity { certified_regular, certified_irregular, indeterminate };
const char* to_string(Regularity r);

struct UniformRegularity {
    Regularity verdict = Regularity::indeterminate;
    double green_max = 0;  // zeroed exterior, over the inner boundary
    double slack = 0;      // delta / (dist (dist - delta))
    double dist = 0;       // d(E, base spectrum)
    double delta = 0;
    double threshold = 0;  // e^{-ml}
};

// decision from the zeroed-exterior data and the perturbation radius
UniformRegularity classify_regularity(double green_max, double dist, double delta, double m,
                                      double l);

// config lives on Lambda_{4l}(center); the box is Lambda_l(center)
UniformRegularity uniform_regularity_test(const SingleSitePotential& u, const DisorderModel& model,
                                          const Configuration& config, double l, double m,
                                          double E);

struct SingularityEstimate {
    std::size_t trials = 0;
    std::vector<double> energies;
    double p_hi = 0;  // some grid energy not certified regular
    double p_lo = 0;  // some grid energy certified irregular
    double sigma_hi = 0;
    std::vector<double> per_energy_hi;
    std::vector<char> singular;  // per trial, for pair statistics
    double delta = 0;
};

std::vector<double> energy_grid(const Interval& I, std::size_t points = 101);

SingularityEstimate estimate_singularity_probability(const SingleSitePotential& u,
                                                     const DisorderModel& model, double l,
                                                     double m, std::span<const double> energies,
                                                     std::size_t trials, std::uint64_t seed,
                                                     Execution ex = default_execution());

// per trial whether each of two disjoint boxes Lambda_l(x), Lambda_l(y) is singular
struct PairSingularity {
    std::vector<char> first, second;
};
PairSingularity sample_pair_singularity(const SingleSitePotential& u, const DisorderModel& model,
                                        const LatticePoint& x, const LatticePoint& y, double l,
                                        double m, std::span<const double> energies,
                                        std::size_t trials, std::uint64_t seed,
                                        Execution ex = default_execution());

struct ParameterReport {
    bool ok = false;
    std::vector<std::string> violated;
    double l_star = 0;
    double l_bar = 0;
    double gamma = 0;
    double zeta_nr = 0;
    std::map<std::string, double> thresholds;  // l1* .. l7*
};

// the closed-form l-bar
double l_bar(double beta, double kappa, double q, double m0);

ParameterReport validate_parameters(const MSAParameters& p, const LeadingIndexData& lead,
                                    const SingleSitePotential& u, const DisorderModel& model);

struct ScaleSchedule {
    std::vector<double> log_l;  // ln l_k
    std::vector<double> l;      // may overflow to inf
    std::vector<double> m;
    double m_inf = 0;
    double l_bar = 0;
    double geometric_bound = 0;  // (m0 + 1) x / (1 - x), x = l0^{-(1-beta)/kappa}
    double exact_series = 0;     // (m0 + 1) sum_k l_{k+1}^{-(1-beta)/kappa}
    double mass_loss = 0;        // m_0 - m_kmax
};

// (m0 + 1) sum_{k >= 1} l_k^{-(1-beta)/kappa}, the total mass the recursion can lose
double mass_loss_series(const MSAParameters& p);

// the recursion from the mass lower bound; throws a schedule error naming k
ScaleSchedule scale_schedule(const MSAParameters& p, int k_max);

// the one-step mass bound m (1 - L^{-s}) - L^{-s}, s = (1 - beta)/kappa
double next_mass(double m, double log_L, double beta, double kappa);

// smallest l on the log grid beyond which cond holds; inf if it never settles
double threshold_scan(const std::function<bool(double log_l)>& cond, double log_max = 700,
                      double step = 0.05);

}  // namespace alloymsa
