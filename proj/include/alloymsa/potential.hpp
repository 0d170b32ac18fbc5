#pragma once

#include <functional>
#include <vector>

#include "alloymsa/lattice.hpp"

namespace alloymsa {

struct PotentialEntry {
    LatticePoint k;
    double value;
};

// Finitely tabulated single-site potential u with decay certificate
// |u(k)| <= C exp(-alpha |k|_1).  If exact_support is false the table is a
// truncation and truncation_residual bounds the omitted l1 mass.
class SingleSitePotential {
public:
    SingleSitePotential(int d, std::vector<PotentialEntry> entries, double C, double alpha,
                        bool exact_support = true, double truncation_residual = 0.0,
                        int truncation_radius = -1);

    // tabulate f on the cube |k|_inf <= radius; the residual is the exact
    // certificate tail C * sum_{|k|_inf > radius} exp(-alpha |k|_1)
    static SingleSitePotential truncated(int d, const std::function<double(const LatticePoint&)>& f,
                                         double C, double alpha, int radius);

    static SingleSitePotential delta(int d);

    int dim() const { return d_; }
    double C() const { return C_; }
    double alpha() const { return alpha_; }
    int truncation_radius() const { return radius_; }
    double truncation_residual() const { return residual_; }
    bool exact_support() const { return exact_; }

    // nonzero tabulated entries in lexicographic order
    const std::vector<PotentialEntry>& entries() const { return entries_; }
    double at(const LatticePoint& k) const;

    double mean() const { return mean_; }        // u-bar of the table
    double l1_norm() const { return l1_; }        // sum |u(k)| of the table
    double l1_norm_bound() const { return l1_ + residual_; }
    double positive_mass() const { return pos_; }
    double negative_mass() const { return neg_; }
    // smallest delta with u = u_+ - delta u_-, |u_-|_1 <= 1 certified
    double negative_part_bound() const { return neg_ + residual_; }
    double positive_part(const LatticePoint& k) const;
    double negative_part(const LatticePoint& k) const;
    double max_abs() const { return max_abs_; }

private:
    int d_;
    std::vector<PotentialEntry> entries_;
    std::vector<double> dense_;  // over the cube of side 2 radius + 1
    double C_, alpha_;
    int radius_ = 0;
    double residual_;
    bool exact_;
    double mean_ = 0, l1_ = 0, pos_ = 0, neg_ = 0, max_abs_ = 0;
};

// C-free tail of the certificate: sum_{|k|_inf > r} exp(-alpha |k|_1), exact
double exponential_tail_mass(int d, double alpha, int r);

}  // namespace alloymsa
