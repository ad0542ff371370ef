#include "gpbec/interp.hpp"

#include <algorithm>
#include <cmath>

#include "gpbec/errors.hpp"

namespace gpbec {

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 2 || y_.size() != n) fail("invalid-parameter", "pchip needs >= 2 nodes");
    for (size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) fail("invalid-parameter", "pchip abscissa must increase");

    std::vector<double> h(n - 1), delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    // Fritsch-Carlson: weighted harmonic mean where slopes agree in sign.
    for (size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] > 0.0) {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double d0, double s0, double s1, double h0, double h1) {
        double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (d * s0 <= 0.0)
            d = 0.0;
        else if (s0 * s1 < 0.0 && std::abs(d) > 3.0 * std::abs(s0))
            d = 3.0 * s0;
        (void)d0;
        return d;
    };
    d_[0] = (n == 2) ? delta[0] : end_slope(0, delta[0], delta[1], h[0], h[1]);
    d_[n - 1] =
        (n == 2) ? delta[0] : end_slope(0, delta[n - 2], delta[n - 3], h[n - 2], h[n - 3]);
}

double Pchip::operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const size_t i = static_cast<size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

namespace {

inline double cr_weights(double t, double w[4]) {
    // Catmull-Rom cubic weights for samples at t = -1, 0, 1, 2.
    const double t2 = t * t, t3 = t2 * t;
    w[0] = 0.5 * (-t3 + 2 * t2 - t);
    w[1] = 0.5 * (3 * t3 - 5 * t2 + 2);
    w[2] = 0.5 * (-3 * t3 + 4 * t2 + t);
    w[3] = 0.5 * (t3 - t2);
    return t;
}

}  // namespace

cplx sample_bicubic(const ComplexField& u, Vec2 p) {
    const Grid& g = *u.grid;
    const double fx = (p.x - g.x0()) / g.hx();
    const double fy = (p.y - g.y0()) / g.hy();
    const int i0 = static_cast<int>(std::floor(fx));
    const int j0 = static_cast<int>(std::floor(fy));
    if (i0 < -2 || i0 > g.nx() || j0 < -2 || j0 > g.ny()) return {};

    double wx[4], wy[4];
    cr_weights(fx - i0, wx);
    cr_weights(fy - j0, wy);

    cplx acc{};
    for (int dj = -1; dj <= 2; ++dj) {
        const int j = j0 + dj;
        if (j < 0 || j >= g.ny()) continue;
        cplx rowacc{};
        for (int di = -1; di <= 2; ++di) {
            const int i = i0 + di;
            if (i < 0 || i >= g.nx()) continue;
            rowacc += wx[di + 1] * u.values[g.idx(i, j)];
        }
        acc += wy[dj + 1] * rowacc;
    }
    return acc;
}

}  // namespace gpbec
