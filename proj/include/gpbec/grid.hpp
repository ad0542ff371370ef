#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "gpbec/geometry.hpp"

namespace gpbec {

using cplx = std::complex<double>;

/// Uniform rectangular lattice covering D with one padding spacing on every
/// side. Nodes strictly inside D are interior; everything else holds exact
/// zeros (discrete H^1_0 by truncation).
class Grid {
public:
    Grid(DomainSpec spec, int nx, int ny);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double x0() const { return x0_; }
    double y0() const { return y0_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    double cell_area() const { return hx_ * hy_; }
    const DomainSpec& domain() const { return spec_; }

    int size() const { return nx_ * ny_; }
    int n_interior() const { return n_interior_; }

    int idx(int i, int j) const { return j * nx_ + i; }  // row-major, y outer
    double x(int i) const { return x0_ + hx_ * i; }
    double y(int j) const { return y0_ + hy_ * j; }
    Vec2 node(int i, int j) const { return {x(i), y(j)}; }

    bool interior(int i, int j) const { return mask_[idx(i, j)] != 0; }
    bool interior_flat(int k) const { return mask_[k] != 0; }
    const std::vector<std::uint8_t>& interior_mask() const { return mask_; }
    /// Dense enumeration of interior nodes; -1 on exterior nodes.
    const std::vector<std::int32_t>& interior_index() const { return index_; }

private:
    DomainSpec spec_;
    int nx_ = 0, ny_ = 0;
    double x0_ = 0, y0_ = 0, hx_ = 0, hy_ = 0;
    int n_interior_ = 0;
    std::vector<std::uint8_t> mask_;
    std::vector<std::int32_t> index_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const DomainSpec& spec, int nx, int ny);

/// Complex scalar samples on a Grid; exactly zero on non-interior nodes.
struct ComplexField {
    GridPtr grid;
    std::vector<cplx> values;

    ComplexField() = default;
    explicit ComplexField(GridPtr g) : grid(std::move(g)), values(grid->size(), cplx{}) {}

    cplx& at(int i, int j) { return values[grid->idx(i, j)]; }
    const cplx& at(int i, int j) const { return values[grid->idx(i, j)]; }

    /// Throws invalid-field if any value is non-finite or an exterior node
    /// is nonzero.
    void validate() const;
    /// Forces exact zeros on exterior nodes.
    void mask_exterior();
};

}  // namespace gpbec
