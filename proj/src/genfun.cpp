#include "alloymsa/genfun.hpp"

#include <algorithm>
#include <cmath>

#include "alloymsa/error.hpp"
#include "alloymsa/numerics.hpp"

namespace alloymsa {

int MultiIndex::norm1() const {
    int s = 0;
    for (int i : entries) s += i;
    return s;
}

bool MultiIndex::leq(const MultiIndex& o) const {
    if (o.dim() != dim()) return false;
    for (int r = 0; r < dim(); ++r)
        if (entries[r] > o.entries[r]) return false;
    return true;
}

bool MultiIndex::less(const MultiIndex& o) const { return leq(o) && norm1() < o.norm1(); }

std::string MultiIndex::str() const {
    std::string s = "[";
    for (int r = 0; r < dim(); ++r) {
        if (r) s += ",";
        s += std::to_string(entries[r]);
    }
    return s + "]";
}

MultiIndex zero_index(int d) { return MultiIndex{std::vector<int>(d, 0)}; }

namespace {

void shell_rec(int d, int r, int left, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (r == d - 1) {
        cur[r] = left;
        out.push_back(MultiIndex{cur});
        return;
    }
    for (int i = 0; i <= left; ++i) {
        cur[r] = i;
        shell_rec(d, r + 1, left - i, cur, out);
    }
}

// sum_{m > R} e^{-alpha m} (m + i)^i, rigorous upper bound
double one_sided_tail(double alpha, int i, int R) {
    auto g = [&](double m) { return std::exp(-alpha * m) * std::pow(m + i, i); };
    auto ratio = [&](double m) { return std::exp(-alpha) * std::pow((m + 1 + i) / (m + i), i); };
    double acc = 0;
    double m = R + 1;
    for (int step = 0; step < 1000000; ++step, m += 1) {
        acc += g(m);
        const double rho = ratio(m + 1);
        if (rho < 1) {
            // ratios decrease in m, so the remainder is dominated by a geometric series
            const double rest = g(m + 1) / (1 - rho);
            if (rest <= 1e-17 * acc || rest == 0) return acc + rest;
        }
    }
    return INFINITY;
}

double two_sided_sum(double alpha, int i, int R) {
    double s = std::pow(static_cast<double>(i), i);  // m = 0 term, 0^0 = 1
    if (i == 0) s = 1;
    for (int m = 1; m <= R; ++m) s += 2 * std::exp(-alpha * m) * std::pow(m + i, i);
    return s;
}

// C * sum_{|k|_inf > R} e^{-alpha |k|_1} prod_r (|k_r| + i_r)^{i_r}
double certified_truncation(const SingleSitePotential& u, const MultiIndex& I) {
    if (u.exact_support()) return 0.0;
    const int d = u.dim();
    const int R = u.truncation_radius();
    std::vector<double> A(d), B(d);
    for (int r = 0; r < d; ++r) {
        B[r] = two_sided_sum(u.alpha(), I.entries[r], R);
        A[r] = B[r] + 2 * one_sided_tail(u.alpha(), I.entries[r], R);
    }
    double total = 0;
    for (int s = 0; s < d; ++s) {
        double term = A[s] - B[s];
        for (int t = 0; t < s; ++t) term *= B[t];
        for (int t = s + 1; t < d; ++t) term *= A[t];
        total += term;
    }
    return u.C() * total;
}

CompensatedSum combination_sum(const SingleSitePotential& u, const MultiIndex& I,
                               const LatticePoint& x, int K) {
    CompensatedSum s;
    for (const auto& e : u.entries()) {
        const LatticePoint k = x - e.k;
        if (k.norm_inf() > K) continue;
        s.add(monomial(k, I) * e.value);
    }
    return s;
}

}  // namespace

std::vector<MultiIndex> shell(int d, int n) {
    require(d >= 1 && n >= 0, ErrorKind::parameter, "invalid shell request");
    std::vector<MultiIndex> out;
    std::vector<int> cur(d, 0);
    shell_rec(d, 0, n, cur, out);
    return out;
}

double monomial(const LatticePoint& k, const MultiIndex& I) {
    double p = 1;
    for (int r = 0; r < k.dim(); ++r)
        for (int t = 0; t < I.entries[r]; ++t) p *= k[r];
    return p;
}

double falling_factorial(int k, int i) {
    double p = 1;
    for (int t = 0; t < i; ++t) p *= static_cast<double>(k - t);
    return p;
}

DerivativeValue genfun_derivative(const SingleSitePotential& u, const MultiIndex& I) {
    require(I.dim() == u.dim(), ErrorKind::parameter, "multi-index dimension differs from u");
    CompensatedSum s;
    for (const auto& e : u.entries()) {
        // u(j) contributes to the coefficient of z^{-j}
        double t = e.value;
        for (int r = 0; r < u.dim(); ++r) t *= falling_factorial(-e.k[r], I.entries[r]);
        s.add(t);
    }
    DerivativeValue out;
    out.value = s.value();
    out.error_bound = s.rounding_bound() + 2.0 * (I.norm1() + 1) * 0x1p-53 * s.abs_total() +
                      certified_truncation(u, I);
    return out;
}

LeadingIndexData find_leading_index(const SingleSitePotential& u,
                                    std::optional<double> zero_tolerance, int shell_cap) {
    LeadingIndexData lead;
    lead.zero_tolerance = zero_tolerance.value_or(1e-10 * u.l1_norm());
    require(lead.zero_tolerance > 0, ErrorKind::parameter, "zero tolerance must be positive");
    for (int n = 0; n <= shell_cap; ++n) {
        for (const MultiIndex& I : shell(u.dim(), n)) {
            DerivativeValue dv = genfun_derivative(u, I);
            lead.derivative_table.push_back({I, dv});
            if (std::abs(dv.value) > dv.error_bound + lead.zero_tolerance) {
                lead.leading = I;
                lead.c_u = dv.value;
                return lead;
            }
        }
    }
    fail(ErrorKind::analysis,
         "no certified nonzero derivative of the generating function up to shell " +
             std::to_string(shell_cap) + " (tolerance " + std::to_string(lead.zero_tolerance) +
             ")");
}

double companion_radius(const SingleSitePotential& u, const LeadingIndexData& lead, double l) {
    require(l > 0, ErrorKind::parameter, "companion radius needs l > 0");
    const double a = u.alpha();
    const int d = u.dim();
    const double first =
        2 * l + (2 / a) * std::log(2 * std::pow(3.0, d) * u.C() /
                                   (std::abs(lead.c_u) * (1 - std::exp(-a / 2))));
    const double n = d + lead.order();
    const double second = 8 * n * n / (a * a);
    return std::max(first, second);
}

int enumeration_radius(const SingleSitePotential& u, const LeadingIndexData& lead, double l) {
    const double R = companion_radius(u, lead, l);
    const double n = std::round(R);
    if (std::abs(R - n) <= 1e-9 * std::max(1.0, R)) return static_cast<int>(n);
    return static_cast<int>(std::ceil(R));
}

double monomial_combination(const SingleSitePotential& u, const MultiIndex& I,
                            const LatticePoint& x, int K) {
    return combination_sum(u, I, x, K).value();
}

PositivityReport positivity_certificate(const SingleSitePotential& u, const LeadingIndexData& lead,
                                        double l) {
    PositivityReport rep;
    rep.R_l = companion_radius(u, lead, l);
    rep.radius = enumeration_radius(u, lead, l);
    const Box box(LatticePoint(u.dim()), l);
    const double scale = 2.0 / lead.c_u;
    // largest |k^I0| over Gamma multiplies the omitted mass
    const double kmax = std::pow(static_cast<double>(rep.radius), lead.order());
    const double trunc = u.exact_support() ? 0.0 : std::abs(scale) * kmax * u.truncation_residual();
    rep.min_value = INFINITY;
    for (std::size_t i = 0; i < box.size(); ++i) {
        const LatticePoint x = box.point(i);
        CompensatedSum s = combination_sum(u, lead.leading, x, rep.radius);
        const double v = scale * s.value();
        rep.slack = std::max(rep.slack, std::abs(scale) * s.rounding_bound() + trunc);
        if (v < rep.min_value) {
            rep.min_value = v;
            rep.worst_x = x;
        }
    }
    rep.holds = rep.min_value - rep.slack >= 1.0;
    return rep;
}

double tail_constant(double C, double alpha, int d) {
    const double q = std::exp(-alpha / 2);
    return C * std::pow(1 + 2 * q / (1 - q), d);
}

double tail_constant(const SingleSitePotential& u) {
    return tail_constant(u.C(), u.alpha(), u.dim());
}

double tail_bound(const SingleSitePotential& u, double l, double l_prime) {
    require(l >= 0 && l_prime >= 0, ErrorKind::parameter, "tail bound needs l, l' >= 0");
    return tail_constant(u) * std::exp(-u.alpha() * l_prime / 2);
}

bool nexp_check(double M, double alpha, double n) { return n >= 8 * M * M / (alpha * alpha); }

}  // namespace alloymsa
