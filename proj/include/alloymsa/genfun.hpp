#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alloymsa/lattice.hpp"
#include "alloymsa/potential.hpp"

namespace alloymsa {

struct MultiIndex {
    std::vector<int> entries;

    int dim() const { return static_cast<int>(entries.size()); }
    int norm1() const;
    bool leq(const MultiIndex& o) const;   // componentwise
    bool less(const MultiIndex& o) const;  // leq and smaller norm
    bool operator==(const MultiIndex&) const = default;
    std::string str() const;
};

MultiIndex zero_index(int d);
// all multi-indices with |I|_1 = n in lexicographic order
std::vector<MultiIndex> shell(int d, int n);

// k^I = prod_r k_r^{i_r} with 0^0 = 1
double monomial(const LatticePoint& k, const MultiIndex& I);
// k (k-1) ... (k-i+1)
double falling_factorial(int k, int i);

struct DerivativeValue {
    double value = 0;
    double error_bound = 0;
};

// D_z^I F(1) for F(z) = sum_k u(-k) z^k
DerivativeValue genfun_derivative(const SingleSitePotential& u, const MultiIndex& I);

struct DerivativeRecord {
    MultiIndex index;
    DerivativeValue derivative;
};

struct LeadingIndexData {
    MultiIndex leading;
    double c_u = 0;
    std::vector<DerivativeRecord> derivative_table;
    double zero_tolerance = 0;

    int order() const { return leading.norm1(); }  // N = |I_0|_1
};

constexpr int kDefaultShellCap = 12;

LeadingIndexData find_leading_index(const SingleSitePotential& u,
                                    std::optional<double> zero_tolerance = std::nullopt,
                                    int shell_cap = kDefaultShellCap);

// R_l of the positive-combination construction
double companion_radius(const SingleSitePotential& u, const LeadingIndexData& lead, double l);
// enumeration radius of Gamma = Lambda_{R_l}; R_l rounded up
int enumeration_radius(const SingleSitePotential& u, const LeadingIndexData& lead, double l);

// sum_{k in Lambda_K} k^I u(x - k) over the tabulated u
double monomial_combination(const SingleSitePotential& u, const MultiIndex& I,
                            const LatticePoint& x, int K);

struct PositivityReport {
    double min_value = 0;
    double slack = 0;  // certified bound on omitted entries and rounding
    bool holds = false;
    LatticePoint worst_x;
    double R_l = 0;
    int radius = 0;
};

PositivityReport positivity_certificate(const SingleSitePotential& u, const LeadingIndexData& lead,
                                        double l);

// C-hat, the tail constant
double tail_constant(const SingleSitePotential& u);
double tail_constant(double C, double alpha, int d);
double tail_bound(const SingleSitePotential& u, double l, double l_prime);

bool nexp_check(double M, double alpha, double n);

}  // namespace alloymsa
