#pragma once

#include <optional>
#include <span>
#include <vector>

#include "alloymsa/density.hpp"
#include "alloymsa/hamiltonian.hpp"
#include "alloymsa/linalg.hpp"

namespace alloymsa {

constexpr double kResonanceGuard = 1e-12;
constexpr double kEigenResidualCap = 1e-10;

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    std::optional<Matrix> eigenvectors;
    double residual = 0;  // max_j |H v_j - l_j v_j| / |H|_F
};

SpectrumResult eigensolve(const BoxOperator& op, bool want_vectors);
std::vector<double> eigenvalues(const BoxOperator& op);

// eigenvalues in the closed interval, spectrum sorted ascending
std::size_t count_in(std::span<const double> sorted, const Interval& I);
std::size_t count_eigenvalues_in(const BoxOperator& op, const Interval& I);
double distance_to_spectrum(std::span<const double> sorted, double E);

// (H - E)^{-1} by LU; guarded against energies within 1e-12 of the spectrum
class GreensSolver {
public:
    GreensSolver(const BoxOperator& op, double E);
    GreensSolver(const BoxOperator& op, double E, std::span<const double> spectrum);

    // column G(E; ., source) over the box
    std::vector<double> column(const LatticePoint& source) const;
    double operator()(const LatticePoint& u, const LatticePoint& w) const;
    double distance() const { return dist_; }

private:
    const BoxOperator* op_;
    double dist_;
    std::optional<LUFactorization> lu_;
};

// resolvent from a full eigendecomposition, cheap for many energies
class SpectralResolvent {
public:
    SpectralResolvent(const BoxOperator& op, const SpectrumResult& spec);
    double operator()(double E, std::size_t u, std::size_t w) const;
    double distance(double E) const;
    std::span<const double> eigenvalues() const { return values_; }

private:
    std::vector<double> values_;
    Matrix vectors_;
};

std::vector<double> greens_function(const BoxOperator& op, double E, const LatticePoint& source,
                                    std::span<const LatticePoint> targets);

// |lhs - rhs| of the geometric resolvent identity for the sub box C
double resolvent_identity_residual(const BoxOperator& op_big, const Box& sub_box, double E,
                                   const LatticePoint& u, const LatticePoint& v);

// psi(center of op.box) from the collar values of psi; psi is given on
// psi_box and read as zero outside it
double boundary_reconstruct(const BoxOperator& op, double E, const Box& psi_box,
                            std::span<const double> psi);

struct DecayFit {
    double rate = 0;
    double r2 = 0;
    LatticePoint center;
    std::size_t shells = 0;
    std::vector<double> shell_radius;  // usable shells
    std::vector<double> shell_log_max;
};

DecayFit decay_fit(const Box& box, std::span<const double> psi,
                   std::optional<LatticePoint> center = std::nullopt);

// fitted exponential decay rate of |G(E; n, m)| in |n - m|_inf for Combes-Thomas logging
double greens_decay_rate(const BoxOperator& op, double E, const LatticePoint& source);

}  // namespace alloymsa
