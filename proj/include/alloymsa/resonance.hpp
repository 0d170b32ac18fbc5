#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alloymsa/configuration.hpp"
#include "alloymsa/density.hpp"
#include "alloymsa/genfun.hpp"
#include "alloymsa/parallel.hpp"
#include "alloymsa/potential.hpp"

namespace alloymsa {

struct PerturbationRadius {
    double formula = 0;     // omega_+ * tail_bound(u, l, 3l)
    double exact_leak = 0;  // omega_+ * (max_x leaked table mass + residual)
    double radius = 0;      // the smaller of the two
};

// bound on sup_{x in Lambda_l} |v_w - v_w'| for configurations agreeing on Lambda_{4l}
PerturbationRadius perturbation_radius(const SingleSitePotential& u, const DisorderModel& model,
                                       double l);

struct SpectrumBracket {
    Box box;       // Lambda_l(x)
    Box enlarged;  // Lambda_{4l}(x)
    std::vector<double> base_spectrum;
    double radius = 0;
};

// eigenvalues at the configuration zeroed outside Lambda_{4l}(x)
SpectrumBracket spectrum_bracket(const SingleSitePotential& u, const DisorderModel& model,
                                 const Configuration& config, const Box& box);

enum class ResonanceClass { certified_in_A, certified_out_A, indeterminate };
const char* to_string(ResonanceClass c);

// min |a - b| over the two sorted spectra
double spectral_distance(std::span<const double> a, std::span<const double> b);

ResonanceClass classify_resonance(const SpectrumBracket& b1, const SpectrumBracket& b2, double eps);

struct ResonanceEstimate {
    double eps = 0;
    std::size_t trials = 0;
    double p_lo = 0, p_hi = 0;
    double sigma_lo = 0, sigma_hi = 0;
    // |Lambda_{l1}| |rho|_Var (eps + d1 + d2) chain(l2): Wegner on the second
    // box for each eigenvalue of the first
    double theory_bound = 0;
    // C1 (2 max + 1)^{3d+N} [eps + C2 exp(-3 min alpha / 2)]
    double theory_bound_uniform = 0;
    double delta1 = 0, delta2 = 0;
    double C1 = 0, C2 = 0, c_w = 0;
};

std::vector<ResonanceEstimate> estimate_resonance_probability(
    const SingleSitePotential& u, const LeadingIndexData& lead, const DisorderModel& model,
    const LatticePoint& x, const LatticePoint& y, double l1, double l2, std::span<const double> eps,
    std::size_t trials, std::uint64_t seed, Execution ex = default_execution());

ResonanceEstimate estimate_resonance_probability(
    const SingleSitePotential& u, const LeadingIndexData& lead, const DisorderModel& model,
    const LatticePoint& x, const LatticePoint& y, double l1, double l2, double eps,
    std::size_t trials, std::uint64_t seed, Execution ex = default_execution());

struct BracketCheck {
    std::size_t completions = 0;
    std::size_t violations = 0;
    double max_shift = 0;
    double radius = 0;
};

// eigenvalue shifts under random exterior completions of a Lambda_{4l}(x) configuration
BracketCheck bracket_soundness(const SingleSitePotential& u, const DisorderModel& model,
                               const Configuration& config, const Box& box,
                               std::size_t completions, std::uint64_t seed);

}  // namespace alloymsa
