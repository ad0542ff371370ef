#include "gpbec/grid.hpp"

#include <cmath>

#include "gpbec/errors.hpp"

namespace gpbec {

Grid::Grid(DomainSpec spec, int nx, int ny) : spec_(spec), nx_(nx), ny_(ny) {
    if (nx < 3 || ny < 3) fail("invalid-resolution", "grid needs at least 3 nodes per axis");

    const auto [ax0, ax1, ay0, ay1] = spec_.bounding_box();
    const double wx = ax1 - ax0, wy = ay1 - ay0;
    if (!(wx > 0.0) || !(wy > 0.0)) fail("invalid-domain", "degenerate domain extent");

    // Outermost nodes sit exactly one spacing outside the analytic box. The
    // nx=3 edge case centers a double-width box on the domain instead.
    if (nx >= 4) {
        hx_ = wx / (nx - 3);
        x0_ = ax0 - hx_;
    } else {
        hx_ = wx;
        x0_ = 0.5 * (ax0 + ax1) - wx;
    }
    if (ny >= 4) {
        hy_ = wy / (ny - 3);
        y0_ = ay0 - hy_;
    } else {
        hy_ = wy;
        y0_ = 0.5 * (ay0 + ay1) - wy;
    }

    mask_.assign(static_cast<size_t>(nx_) * ny_, 0);
    index_.assign(static_cast<size_t>(nx_) * ny_, -1);
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            if (spec_.contains(node(i, j))) {
                mask_[idx(i, j)] = 1;
                index_[idx(i, j)] = n_interior_++;
            }
        }
    }
}

GridPtr build_grid(const DomainSpec& spec, int nx, int ny) {
    return std::make_shared<const Grid>(spec, nx, ny);
}

void ComplexField::validate() const {
    if (!grid) fail("invalid-field", "field has no grid");
    if (values.size() != static_cast<size_t>(grid->size()))
        fail("invalid-field", "field size does not match grid");
    for (int k = 0; k < grid->size(); ++k) {
        const cplx v = values[k];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail("invalid-field", "non-finite value in field");
        if (!grid->interior_flat(k) && (v.real() != 0.0 || v.imag() != 0.0))
            fail("invalid-field", "nonzero value on exterior node");
    }
}

void ComplexField::mask_exterior() {
    for (int k = 0; k < grid->size(); ++k)
        if (!grid->interior_flat(k)) values[k] = cplx{};
}

}  // namespace gpbec
