#include "gpbec/ops.hpp"

namespace gpbec {

ComplexField laplacian_apply(const ComplexField& u) {
    const Grid& g = *u.grid;
    ComplexField out(u.grid);
    const double ihx2 = 1.0 / (g.hx() * g.hx());
    const double ihy2 = 1.0 / (g.hy() * g.hy());
    const cplx* v = u.values.data();
    cplx* o = out.values.data();
    const int nx = g.nx();
    for (int j = 1; j < g.ny() - 1; ++j) {
        const int row = j * nx;
        for (int i = 1; i < nx - 1; ++i) {
            const int k = row + i;
            if (!g.interior_flat(k)) continue;
            o[k] = (v[k - 1] - 2.0 * v[k] + v[k + 1]) * ihx2 +
                   (v[k - nx] - 2.0 * v[k] + v[k + nx]) * ihy2;
        }
    }
    return out;
}

std::pair<ComplexField, ComplexField> gradient_apply(const ComplexField& u) {
    const Grid& g = *u.grid;
    ComplexField gx(u.grid), gy(u.grid);
    const double ax = 0.5 / g.hx();
    const double ay = 0.5 / g.hy();
    const cplx* v = u.values.data();
    const int nx = g.nx();
    for (int j = 1; j < g.ny() - 1; ++j) {
        const int row = j * nx;
        for (int i = 1; i < nx - 1; ++i) {
            const int k = row + i;
            if (!g.interior_flat(k)) continue;
            gx.values[k] = (v[k + 1] - v[k - 1]) * ax;
            gy.values[k] = (v[k + nx] - v[k - nx]) * ay;
        }
    }
    return {std::move(gx), std::move(gy)};
}

double integrate(const Grid& grid, std::span<const double> samples) {
    KahanSum s;
    for (int k = 0; k < grid.size(); ++k)
        if (grid.interior_flat(k)) s.add(samples[k]);
    return grid.cell_area() * s.value();
}

cplx integrate(const Grid& grid, std::span<const cplx> samples) {
    KahanSum re, im;
    for (int k = 0; k < grid.size(); ++k) {
        if (!grid.interior_flat(k)) continue;
        re.add(samples[k].real());
        im.add(samples[k].imag());
    }
    return grid.cell_area() * cplx{re.value(), im.value()};
}

double mass(const ComplexField& u) {
    KahanSum s;
    const Grid& g = *u.grid;
    for (int k = 0; k < g.size(); ++k)
        if (g.interior_flat(k)) s.add(std::norm(u.values[k]));
    return g.cell_area() * s.value();
}

void normalize(ComplexField& u) {
    const double m = mass(u);
    if (!(m > 0.0)) fail("degenerate-input", "cannot normalize a zero field");
    const double scale = 1.0 / std::sqrt(m);
    for (auto& v : u.values) v *= scale;
}

double linf(const ComplexField& u) {
    double m = 0.0;
    for (const auto& v : u.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace gpbec
