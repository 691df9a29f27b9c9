#ifndef BOLAB_GRID_HPP
#define BOLAB_GRID_HPP

#include <cmath>
#include <stdexcept>

namespace bolab {

/// Uniform periodic grid on [x_min, x_max); endpoints identified.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;

    Grid1D() = default;
    Grid1D(double xmin, double xmax, int npts) : x_min(xmin), x_max(xmax), n(npts) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid1D: n must be a power of two >= 8");
        if (!(x_max > x_min))
            throw std::invalid_argument("Grid1D: empty box");
    }

    /// Box [-half_width, half_width) with n points.
    static Grid1D centered(double half_width, int npts) {
        return Grid1D(-half_width, half_width, npts);
    }

    double length() const { return x_max - x_min; }
    double dx() const { return length() / n; }
    /// Frequency spacing of the box Fourier series.
    double dxi() const { return 2.0 * M_PI / length(); }
    double x(int j) const { return x_min + j * dx(); }

    /// Signed frequency of raw DFT bin k (upper half maps to negatives).
    double xi(int k) const {
        int s = (k <= n / 2) ? k : k - n;
        return s * dxi();
    }
    double nyquist() const { return (n / 2) * dxi(); }

    bool operator==(const Grid1D& o) const {
        return x_min == o.x_min && x_max == o.x_max && n == o.n;
    }
};

} // namespace bolab

#endif
