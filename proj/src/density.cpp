#include "alloymsa/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alloymsa/error.hpp"

namespace alloymsa {

double DensityPiece::eval(double x) const {
    const double t = x - a;
    double v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
    return v;
}

double DensityPiece::derivative(double x) const {
    const double t = x - a;
    double v = 0;
    for (std::size_t i = coeffs.size(); i-- > 1;) v = v * t + static_cast<double>(i) * coeffs[i];
    return v;
}

double DensityPiece::antiderivative(double x) const {
    const double t = x - a;
    double v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i] / static_cast<double>(i + 1);
    return v * t;
}

namespace {

// total variation of a polynomial piece: split at sign changes of p'
double piece_variation(const DensityPiece& p) {
    if (p.coeffs.size() <= 1) return 0.0;
    if (p.coeffs.size() == 2) return std::abs(p.eval(p.b) - p.eval(p.a));
    const int grid = 1024;
    const double h = (p.b - p.a) / grid;
    std::vector<double> cuts{p.a};
    double prev = p.derivative(p.a);
    for (int i = 1; i <= grid; ++i) {
        double x = i == grid ? p.b : p.a + i * h;
        double cur = p.derivative(x);
        if ((prev < 0 && cur > 0) || (prev > 0 && cur < 0)) {
            double lo = x - h, hi = x;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                double dm = p.derivative(mid);
                if ((dm < 0) == (prev < 0)) lo = mid;
                else hi = mid;
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        if (cur != 0) prev = cur;
    }
    cuts.push_back(p.b);
    double v = 0;
    for (std::size_t i = 1; i < cuts.size(); ++i) v += std::abs(p.eval(cuts[i]) - p.eval(cuts[i - 1]));
    return v;
}

}  // namespace

DisorderModel::DisorderModel(std::vector<DensityPiece> pieces) : pieces_(std::move(pieces)) {
    require(!pieces_.empty(), ErrorKind::parameter, "density has no pieces");
    std::sort(pieces_.begin(), pieces_.end(),
              [](const DensityPiece& x, const DensityPiece& y) { return x.a < y.a; });
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        require(std::isfinite(p.a) && std::isfinite(p.b) && p.a < p.b, ErrorKind::parameter,
                "density piece interval must satisfy a < b");
        require(!p.coeffs.empty(), ErrorKind::parameter, "density piece has no coefficients");
        for (double c : p.coeffs)
            require(std::isfinite(c), ErrorKind::parameter, "density coefficient not finite");
        if (i > 0)
            require(pieces_[i - 1].b <= p.a, ErrorKind::parameter, "density pieces overlap");
        double scale = 0;
        for (int j = 0; j <= 256; ++j) scale = std::max(scale, std::abs(p.eval(p.a + (p.b - p.a) * j / 256)));
        for (int j = 0; j <= 256; ++j)
            require(p.eval(p.a + (p.b - p.a) * j / 256) >= -1e-12 * std::max(scale, 1.0),
                    ErrorKind::parameter, "density is negative somewhere");
    }
    lo_ = pieces_.front().a;
    hi_ = pieces_.back().b;

    double total = 0;
    for (const auto& p : pieces_) {
        mass_before_.push_back(total);
        total += p.antiderivative(p.b);
    }
    require(std::abs(total - 1.0) <= 1e-12, ErrorKind::parameter,
            "density does not integrate to one");

    double bv = std::abs(pieces_.front().eval(pieces_.front().a));
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        bv += piece_variation(pieces_[i]);
        const double right = pieces_[i].eval(pieces_[i].b);
        if (i + 1 < pieces_.size()) {
            const double left = pieces_[i + 1].eval(pieces_[i + 1].a);
            if (pieces_[i].b == pieces_[i + 1].a) bv += std::abs(left - right);
            else bv += std::abs(right) + std::abs(left);
        } else {
            bv += std::abs(right);
        }
    }
    bv_ = bv;
}

DisorderModel DisorderModel::uniform(double lo, double hi) {
    require(lo < hi, ErrorKind::parameter, "uniform density needs lo < hi");
    return DisorderModel({DensityPiece{lo, hi, {1.0 / (hi - lo)}}});
}

DisorderModel DisorderModel::point_mass(double value) {
    require(std::isfinite(value), ErrorKind::parameter, "point mass location not finite");
    DisorderModel m({DensityPiece{0.0, 1.0, {1.0}}});
    m.pieces_.clear();
    m.mass_before_.clear();
    m.atomic_ = true;
    m.lo_ = m.hi_ = value;
    m.bv_ = std::numeric_limits<double>::infinity();
    return m;
}

double DisorderModel::omega_plus() const { return std::max(std::abs(lo_), std::abs(hi_)); }

double DisorderModel::density(double x) const {
    for (const auto& p : pieces_)
        if (p.a <= x && x < p.b) return p.eval(x);
    return 0.0;
}

double DisorderModel::cdf(double x) const {
    if (atomic_) return x >= lo_ ? 1.0 : 0.0;
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    for (std::size_t i = pieces_.size(); i-- > 0;) {
        const auto& p = pieces_[i];
        if (x >= p.a) return mass_before_[i] + p.antiderivative(std::min(x, p.b));
    }
    return 0.0;
}

double DisorderModel::quantile(double u) const {
    if (atomic_) return lo_;
    u = std::clamp(u, 0.0, 1.0);
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(mass_before_.begin(), mass_before_.end(), u) - mass_before_.begin());
    i = i == 0 ? 0 : i - 1;
    const auto& p = pieces_[i];
    const double target = u - mass_before_[i];
    if (p.coeffs.size() == 1) {
        return std::clamp(p.a + target / p.coeffs[0], p.a, p.b);
    }
    double lo = p.a, hi = p.b;
    for (int it = 0; it < 64; ++it) {
        double mid = 0.5 * (lo + hi);
        if (p.antiderivative(mid) < target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double density_bv_norm(const DisorderModel& model) { return model.bv_norm(); }

}  // namespace alloymsa
