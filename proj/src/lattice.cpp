#include "alloymsa/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "alloymsa/error.hpp"

namespace alloymsa {

LatticePoint::LatticePoint(int d) : d_(d) {
    require(d >= 1 && d <= kMaxDim, ErrorKind::parameter,
            "dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
}

LatticePoint::LatticePoint(std::initializer_list<int> coords)
    : LatticePoint(static_cast<int>(coords.size())) {
    std::copy(coords.begin(), coords.end(), c_.begin());
}

LatticePoint LatticePoint::from(std::span<const int> coords) {
    LatticePoint p(static_cast<int>(coords.size()));
    std::copy(coords.begin(), coords.end(), p.c_.begin());
    return p;
}

long LatticePoint::norm1() const {
    long s = 0;
    for (int r = 0; r < d_; ++r) s += std::abs(c_[r]);
    return s;
}

int LatticePoint::norm_inf() const {
    int s = 0;
    for (int r = 0; r < d_; ++r) s = std::max(s, std::abs(c_[r]));
    return s;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
    LatticePoint p = *this;
    for (int r = 0; r < d_; ++r) p.c_[r] += o.c_[r];
    return p;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
    LatticePoint p = *this;
    for (int r = 0; r < d_; ++r) p.c_[r] -= o.c_[r];
    return p;
}

LatticePoint LatticePoint::operator-() const {
    LatticePoint p = *this;
    for (int r = 0; r < d_; ++r) p.c_[r] = -p.c_[r];
    return p;
}

bool LatticePoint::operator==(const LatticePoint& o) const {
    if (d_ != o.d_) return false;
    for (int r = 0; r < d_; ++r)
        if (c_[r] != o.c_[r]) return false;
    return true;
}

std::strong_ordering LatticePoint::operator<=>(const LatticePoint& o) const {
    if (auto c = d_ <=> o.d_; c != 0) return c;
    for (int r = 0; r < d_; ++r)
        if (auto c = c_[r] <=> o.c_[r]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string LatticePoint::str() const {
    std::string s = "(";
    for (int r = 0; r < d_; ++r) {
        if (r) s += ",";
        s += std::to_string(c_[r]);
    }
    return s + ")";
}

int floor_snap(double x) {
    double n = std::round(x);
    if (std::abs(x - n) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<int>(n);
    return static_cast<int>(std::floor(x));
}

double box_volume(double l, int d) {
    return std::pow(2.0 * floor_snap(l) + 1.0, d);
}

Box::Box(const LatticePoint& center, double half_side)
    : center_(center), half_side_(half_side) {
    require(center.dim() >= 1, ErrorKind::parameter, "box center has no dimension");
    require(half_side > 0 && std::isfinite(half_side), ErrorKind::parameter,
            "box half side must be positive and finite");
    require(half_side < 1e6, ErrorKind::capacity, "box half side too large");
    radius_ = floor_snap(half_side);
    size_ = 1;
    for (int r = 0; r < dim(); ++r) size_ *= static_cast<std::size_t>(side());
}

bool Box::contains(const LatticePoint& x) const {
    if (x.dim() != dim()) return false;
    for (int r = 0; r < dim(); ++r)
        if (std::abs(x[r] - center_[r]) > radius_) return false;
    return true;
}

bool Box::contains(const Box& b) const {
    if (b.dim() != dim()) return false;
    for (int r = 0; r < dim(); ++r) {
        if (b.center_[r] - b.radius_ < center_[r] - radius_) return false;
        if (b.center_[r] + b.radius_ > center_[r] + radius_) return false;
    }
    return true;
}

bool Box::intersects(const Box& b) const {
    for (int r = 0; r < dim(); ++r)
        if (std::abs(b.center_[r] - center_[r]) > radius_ + b.radius_) return false;
    return true;
}

std::optional<std::size_t> Box::index_of(const LatticePoint& x) const {
    std::size_t idx = 0;
    const int s = side();
    for (int r = 0; r < dim(); ++r) {
        int o = x[r] - center_[r];
        if (o < -radius_ || o > radius_) return std::nullopt;
        idx = idx * s + static_cast<std::size_t>(o + radius_);
    }
    return idx;
}

LatticePoint Box::point(std::size_t i) const {
    LatticePoint p(dim());
    const std::size_t s = side();
    for (int r = dim() - 1; r >= 0; --r) {
        p[r] = center_[r] + static_cast<int>(i % s) - radius_;
        i /= s;
    }
    return p;
}

std::vector<LatticePoint> Box::points() const {
    std::vector<LatticePoint> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back(point(i));
    return out;
}

int Box::inner_neighbours(const LatticePoint& x) const {
    int n = 0;
    for (int r = 0; r < dim(); ++r) {
        int o = x[r] - center_[r];
        if (o - 1 >= -radius_) ++n;
        if (o + 1 <= radius_) ++n;
    }
    return n;
}

std::vector<LatticePoint> Box::interior_boundary() const {
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < size_; ++i) {
        LatticePoint x = point(i);
        if (inner_neighbours(x) < 2 * dim()) out.push_back(x);
    }
    return out;
}

Box make_box(const LatticePoint& center, double half_side) {
    return Box(center, half_side);
}

}  // namespace alloymsa
