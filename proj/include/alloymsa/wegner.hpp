#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alloymsa/configuration.hpp"
#include "alloymsa/density.hpp"
#include "alloymsa/genfun.hpp"
#include "alloymsa/numerics.hpp"
#include "alloymsa/parallel.hpp"
#include "alloymsa/potential.hpp"

namespace alloymsa {

constexpr std::size_t kDefaultTrials = 2000;

struct WegnerBoundReport {
    double c_w_chain = 0;  // sum_j |t_{j,l}|_1
    double bound = 0;
    double empirical_mean = 0;
    double std_error = 0;
    std::size_t trials = 0;
    double R_l = 0;
    int radius = 0;
    double bv_norm = 0;
    double interval_length = 0;
    // C_W of the volume form C_W |rho|_Var |I| (2l+1)^{2d+N}
    double c_w_uniform = 0;
    double volume_form = 0;
};

// sum_{j in Lambda_l} |t_{j,l}|_1 = (2/|c_u|) |Lambda_l| sum_{k in Gamma} |k^I0|
double wegner_constant_chain(const SingleSitePotential& u, const LeadingIndexData& lead, double l);

// l-independent C_W with chain(l) <= C_W (2l+1)^{2d+N} for every l > 0
double uniform_wegner_constant(const SingleSitePotential& u, const LeadingIndexData& lead);

WegnerBoundReport wegner_bound(const SingleSitePotential& u, const LeadingIndexData& lead,
                               const DisorderModel& model, double l, const Interval& I);

// eigenvalue counts of the Dirichlet-truncated box operator on Lambda_l(0)
// with the couplings in Gamma = Lambda_{ceil R_l}(0) resampled per trial
struct WegnerSample {
    std::vector<Interval> intervals;
    std::vector<std::vector<double>> counts;  // [interval][trial]
    std::vector<MeanError> stats;
    int radius = 0;
};

WegnerSample sample_eigenvalue_counts(const SingleSitePotential& u, const LeadingIndexData& lead,
                                      const DisorderModel& model, double l,
                                      std::span<const Interval> intervals,
                                      const Configuration& exterior, std::size_t trials,
                                      std::uint64_t seed, Execution ex = default_execution());

MeanError estimate_partial_expectation(const SingleSitePotential& u, const LeadingIndexData& lead,
                                       const DisorderModel& model, double l, const Interval& I,
                                       const Configuration& exterior, std::size_t trials,
                                       std::uint64_t seed, Execution ex = default_execution());

struct ExponentFit {
    double exponent = 0;  // slope / d
    double intercept = 0;
    double r2 = 0;
};

// log(mean) against log(2l+1)
ExponentFit exponent_fit(std::span<const double> ls, std::span<const double> means, int d);

}  // namespace alloymsa
