#include "alloymsa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alloymsa/error.hpp"
#include "alloymsa/numerics.hpp"

namespace alloymsa {

SpectrumResult eigensolve(const BoxOperator& op, bool want_vectors) {
    require(op.size() <= capacity_limit(), ErrorKind::capacity,
            "operator of dimension " + std::to_string(op.size()) + " exceeds the dense capacity");
    require(op.matrix.max_asymmetry() <= 1e-14, ErrorKind::parameter,
            "operator matrix is not symmetric");
    SymmetricEigen se = symmetric_eigen(op.matrix, want_vectors);
    SpectrumResult out;
    out.eigenvalues = std::move(se.values);
    const std::size_t n = op.size();
    if (want_vectors) {
        const double norm = std::max(op.matrix.frobenius_norm(), 1e-300);
        double worst = 0;
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) v[k] = se.vectors(k, j);
            std::vector<double> hv = op.matrix.multiply(v);
            double r = 0;
            for (std::size_t k = 0; k < n; ++k) {
                double t = hv[k] - out.eigenvalues[j] * v[k];
                r += t * t;
            }
            worst = std::max(worst, std::sqrt(r));
        }
        out.residual = worst / norm;
        out.eigenvectors = std::move(se.vectors);
    } else {
        out.residual = static_cast<double>(n) * 0x1p-52;
    }
    if (out.residual > kEigenResidualCap)
        fail(ErrorKind::solver, "eigensolve residual " + std::to_string(out.residual) +
                                    " exceeds 1e-10 after " + std::to_string(se.iterations) +
                                    " QL iterations");
    return out;
}

std::vector<double> eigenvalues(const BoxOperator& op) { return eigensolve(op, false).eigenvalues; }

std::size_t count_in(std::span<const double> sorted, const Interval& I) {
    if (I.hi < I.lo) return 0;
    auto lo = std::lower_bound(sorted.begin(), sorted.end(), I.lo);
    auto hi = std::upper_bound(sorted.begin(), sorted.end(), I.hi);
    return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

std::size_t count_eigenvalues_in(const BoxOperator& op, const Interval& I) {
    require(I.lo <= I.hi, ErrorKind::parameter, "interval needs E1 <= E2");
    auto ev = eigenvalues(op);
    return count_in(ev, I);
}

double distance_to_spectrum(std::span<const double> sorted, double E) {
    double best = INFINITY;
    auto it = std::lower_bound(sorted.begin(), sorted.end(), E);
    if (it != sorted.end()) best = std::min(best, *it - E);
    if (it != sorted.begin()) best = std::min(best, E - *(it - 1));
    return best;
}

GreensSolver::GreensSolver(const BoxOperator& op, double E)
    : GreensSolver(op, E, eigenvalues(op)) {}

GreensSolver::GreensSolver(const BoxOperator& op, double E, std::span<const double> spectrum)
    : op_(&op), dist_(distance_to_spectrum(spectrum, E)) {
    if (dist_ < kResonanceGuard)
        fail(ErrorKind::resonant_energy,
             "energy " + std::to_string(E) + " lies within 1e-12 of the spectrum");
    Matrix a = op.matrix;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= E;
    lu_.emplace(a);
}

std::vector<double> GreensSolver::column(const LatticePoint& source) const {
    std::vector<double> rhs(op_->size(), 0.0);
    rhs[op_->index_of(source)] = 1.0;
    return lu_->solve(rhs);
}

double GreensSolver::operator()(const LatticePoint& u, const LatticePoint& w) const {
    return column(w)[op_->index_of(u)];
}

SpectralResolvent::SpectralResolvent(const BoxOperator& op, const SpectrumResult& spec)
    : values_(spec.eigenvalues) {
    require(spec.eigenvectors.has_value(), ErrorKind::parameter,
            "spectral resolvent needs eigenvectors");
    require(spec.eigenvalues.size() == op.size(), ErrorKind::parameter,
            "spectrum does not match the operator");
    vectors_ = *spec.eigenvectors;
}

double SpectralResolvent::operator()(double E, std::size_t u, std::size_t w) const {
    if (distance(E) < kResonanceGuard)
        fail(ErrorKind::resonant_energy, "energy lies within 1e-12 of the spectrum");
    double s = 0;
    for (std::size_t j = 0; j < values_.size(); ++j)
        s += vectors_(u, j) * vectors_(w, j) / (values_[j] - E);
    return s;
}

double SpectralResolvent::distance(double E) const { return distance_to_spectrum(values_, E); }

std::vector<double> greens_function(const BoxOperator& op, double E, const LatticePoint& source,
                                    std::span<const LatticePoint> targets) {
    GreensSolver g(op, E);
    std::vector<double> col = g.column(source);
    std::vector<double> out;
    out.reserve(targets.size());
    for (const auto& t : targets) out.push_back(col[op.index_of(t)]);
    return out;
}

double resolvent_identity_residual(const BoxOperator& op_big, const Box& sub_box, double E,
                                   const LatticePoint& u, const LatticePoint& v) {
    require(op_big.box.contains(sub_box), ErrorKind::geometry, "sub box is not inside the big box");
    require(sub_box.contains(u), ErrorKind::geometry, "u must lie in the sub box");
    require(op_big.box.contains(v) && !sub_box.contains(v), ErrorKind::geometry,
            "v must lie in the big box outside the sub box");
    const BoxOperator sub = principal_restriction(op_big, sub_box);
    const GreensSolver g_big(op_big, E);
    const GreensSolver g_sub(sub, E);
    const std::vector<double> col_big = g_big.column(v);  // G^L(., v)
    const std::vector<double> col_sub = g_sub.column(u);  // G^C(., u) = G^C(u, .)
    const double lhs = col_big[op_big.index_of(u)];
    CompensatedSum rhs;
    for (std::size_t i = 0; i < sub_box.size(); ++i) {
        const LatticePoint w = sub_box.point(i);
        for (int r = 0; r < w.dim(); ++r) {
            for (int s : {-1, 1}) {
                LatticePoint wp = w;
                wp[r] += s;
                if (sub_box.contains(wp)) continue;
                auto j = op_big.box.index_of(wp);
                if (!j) continue;
                rhs.add(col_sub[i] * col_big[*j]);
            }
        }
    }
    return std::abs(lhs - rhs.value());
}

double boundary_reconstruct(const BoxOperator& op, double E, const Box& psi_box,
                            std::span<const double> psi) {
    require(psi.size() == psi_box.size(), ErrorKind::parameter, "psi does not match its box");
    const Box& box = op.box;
    const LatticePoint x0 = box.center();
    const GreensSolver g(op, E);
    const std::vector<double> col = g.column(x0);
    CompensatedSum acc;
    for (const LatticePoint& i : box.interior_boundary()) {
        double collar = 0;
        for (int r = 0; r < i.dim(); ++r) {
            for (int s : {-1, 1}) {
                LatticePoint y = i;
                y[r] += s;
                if (box.contains(y)) continue;
                if (auto j = psi_box.index_of(y)) collar += psi[*j];
            }
        }
        acc.add(col[*box.index_of(i)] * collar);
    }
    return acc.value();
}

DecayFit decay_fit(const Box& box, std::span<const double> psi, std::optional<LatticePoint> center) {
    require(psi.size() == box.size(), ErrorKind::parameter, "psi does not match its box");
    DecayFit fit;
    if (center) {
        fit.center = *center;
    } else {
        std::size_t best = 0;
        for (std::size_t i = 1; i < psi.size(); ++i)
            if (std::abs(psi[i]) > std::abs(psi[best])) best = i;
        fit.center = box.point(best);
    }
    int max_r = 0;
    for (std::size_t i = 0; i < box.size(); ++i)
        max_r = std::max(max_r, (box.point(i) - fit.center).norm_inf());
    std::vector<double> shell_max(max_r + 1, 0.0);
    for (std::size_t i = 0; i < box.size(); ++i) {
        int r = (box.point(i) - fit.center).norm_inf();
        shell_max[r] = std::max(shell_max[r], std::abs(psi[i]));
    }
    for (int r = 0; r <= max_r; ++r) {
        if (shell_max[r] > 1e-14) {
            fit.shell_radius.push_back(r);
            fit.shell_log_max.push_back(std::log(shell_max[r]));
        }
    }
    fit.shells = fit.shell_radius.size();
    require(fit.shells >= 3, ErrorKind::fit,
            "decay fit needs at least 3 usable shells, found " + std::to_string(fit.shells));
    LinearFit lf = least_squares(fit.shell_radius, fit.shell_log_max);
    fit.rate = lf.slope;
    fit.r2 = lf.r2;
    return fit;
}

double greens_decay_rate(const BoxOperator& op, double E, const LatticePoint& source) {
    GreensSolver g(op, E);
    std::vector<double> col = g.column(source);
    return decay_fit(op.box, col, source).rate;
}

}  // namespace alloymsa
