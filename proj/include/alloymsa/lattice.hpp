#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace alloymsa {

constexpr int kMaxDim = 4;

class LatticePoint {
public:
    LatticePoint() = default;
    explicit LatticePoint(int d);  // origin of Z^d
    LatticePoint(std::initializer_list<int> coords);
    static LatticePoint from(std::span<const int> coords);

    int dim() const { return d_; }
    int operator[](int r) const { return c_[r]; }
    int& operator[](int r) { return c_[r]; }

    long norm1() const;
    int norm_inf() const;

    LatticePoint operator+(const LatticePoint& o) const;
    LatticePoint operator-(const LatticePoint& o) const;
    LatticePoint operator-() const;

    bool operator==(const LatticePoint& o) const;
    std::strong_ordering operator<=>(const LatticePoint& o) const;

    std::vector<int> coords() const { return {c_.begin(), c_.begin() + d_}; }
    std::string str() const;

private:
    int d_ = 0;
    std::array<int, kMaxDim> c_{};
};

// Lambda_l(j) = ([-l,l]^d + j) cap Z^d with real half side l.
class Box {
public:
    Box(const LatticePoint& center, double half_side);

    int dim() const { return center_.dim(); }
    const LatticePoint& center() const { return center_; }
    double half_side() const { return half_side_; }
    int radius() const { return radius_; }  // floor(l)
    int side() const { return 2 * radius_ + 1; }
    std::size_t size() const { return size_; }

    bool contains(const LatticePoint& x) const;
    bool contains(const Box& b) const;
    bool intersects(const Box& b) const;

    // row index in lexicographic enumeration, nullopt outside
    std::optional<std::size_t> index_of(const LatticePoint& x) const;
    LatticePoint point(std::size_t i) const;
    std::vector<LatticePoint> points() const;

    // number of lattice neighbours of x inside the box
    int inner_neighbours(const LatticePoint& x) const;
    // sites with fewer than 2d neighbours in the box
    std::vector<LatticePoint> interior_boundary() const;

private:
    LatticePoint center_;
    double half_side_;
    int radius_;
    std::size_t size_;
};

Box make_box(const LatticePoint& center, double half_side);

// floor that treats values within rounding of an integer as that integer
int floor_snap(double x);

// |Lambda_l| = (2 floor(l) + 1)^d
double box_volume(double l, int d);

}  // namespace alloymsa
