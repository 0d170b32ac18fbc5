#pragma once

#include <vector>

namespace alloymsa {

struct Interval {
    double lo = 0, hi = 0;
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// rho(x) = sum_i coeffs[i] (x - a)^i on [a, b]
struct DensityPiece {
    double a = 0, b = 0;
    std::vector<double> coeffs;

    double eval(double x) const;
    double derivative(double x) const;
    double antiderivative(double x) const;  // int_a^x
};

// Coupling distribution with a piecewise polynomial density.  A point mass
// (zero-width support) is allowed for deterministic experiments; its BV
// norm is infinite.
class DisorderModel {
public:
    explicit DisorderModel(std::vector<DensityPiece> pieces);

    static DisorderModel uniform(double lo, double hi);
    static DisorderModel point_mass(double value);

    const std::vector<DensityPiece>& pieces() const { return pieces_; }
    bool atomic() const { return atomic_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    Interval support() const { return {lo_, hi_}; }
    double omega_plus() const;
    double bv_norm() const { return bv_; }

    double density(double x) const;
    double cdf(double x) const;
    // inverse cdf, u in [0, 1)
    double quantile(double u) const;
    bool in_support(double x) const { return lo_ <= x && x <= hi_; }

private:
    std::vector<DensityPiece> pieces_;
    std::vector<double> mass_before_;  // cumulative mass at piece starts
    bool atomic_ = false;
    double lo_ = 0, hi_ = 0, bv_ = 0;
};

double density_bv_norm(const DisorderModel& model);

}  // namespace alloymsa
