#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace alloymsa {

// Neumaier compensated summation
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_ += std::abs(x);
        ++n_;
    }
    double value() const { return sum_ + comp_; }
    double abs_total() const { return abs_; }
    std::size_t count() const { return n_; }
    // generous bound on the accumulated rounding error
    double rounding_bound() const { return 4.0 * (n_ + 2) * 0x1p-53 * abs_; }

private:
    double sum_ = 0, comp_ = 0, abs_ = 0;
    std::size_t n_ = 0;
};

struct LinearFit {
    double slope = 0, intercept = 0, r2 = 0;
};

// ordinary least squares y = slope x + intercept
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct MeanError {
    double mean = 0, std_error = 0;
};

// sample mean and sigma/sqrt(n) with the n-1 sample variance
MeanError mean_and_error(std::span<const double> samples);

}  // namespace alloymsa
