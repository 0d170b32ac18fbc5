#include "alloymsa/numerics.hpp"

#include "alloymsa/error.hpp"

namespace alloymsa {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorKind::fit,
            "least squares needs at least two paired samples");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    require(sxx > 0, ErrorKind::fit, "least squares abscissae are all equal");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += r * r;
    }
    f.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

MeanError mean_and_error(std::span<const double> samples) {
    MeanError out;
    if (samples.empty()) return out;
    const double n = static_cast<double>(samples.size());
    double m = 0;
    for (double s : samples) m += s;
    m /= n;
    out.mean = m;
    if (samples.size() > 1) {
        double v = 0;
        for (double s : samples) v += (s - m) * (s - m);
        v /= (n - 1);
        out.std_error = std::sqrt(v / n);
    }
    return out;
}

}  // namespace alloymsa
