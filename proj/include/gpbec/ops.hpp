#pragma once

#include <span>

#include "gpbec/grid.hpp"

namespace gpbec {

/// Neumaier compensated accumulator; fixed summation order makes every
/// reduction in the library bitwise reproducible.
class KahanSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Discrete 5-point Dirichlet Laplacian (zero exterior). Result is zero on
/// exterior nodes.
ComplexField laplacian_apply(const ComplexField& u);

/// Centered differences with zero ghosts; components zero on exterior nodes.
std::pair<ComplexField, ComplexField> gradient_apply(const ComplexField& u);

/// Masked midpoint rule hx*hy*sum over interior nodes, compensated, fixed order.
double integrate(const Grid& grid, std::span<const double> samples);
cplx integrate(const Grid& grid, std::span<const cplx> samples);

double mass(const ComplexField& u);           // integral of |u|^2
void normalize(ComplexField& u);              // scales to unit mass
double linf(const ComplexField& u);           // max |u| over nodes

}  // namespace gpbec
