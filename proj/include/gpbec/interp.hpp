#pragma once

#include <vector>

#include "gpbec/grid.hpp"

namespace gpbec {

/// Monotone cubic interpolant (Fritsch-Carlson) on an increasing abscissa
/// table. Evaluation outside the table clamps to the end values.
class Pchip {
public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double xmin() const { return x_.front(); }
    double xmax() const { return x_.back(); }

private:
    std::vector<double> x_, y_, d_;  // nodes, values, node derivatives
};

/// Catmull-Rom bicubic sample of a grid field at an arbitrary physical
/// point; nodes outside the lattice count as zero, matching the zero
/// extension of the discrete field.
cplx sample_bicubic(const ComplexField& u, Vec2 p);

}  // namespace gpbec
