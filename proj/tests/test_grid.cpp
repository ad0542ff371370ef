#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpbec/ops.hpp"
#include "oracles.hpp"

using namespace gpbec;

namespace {

const double kPi = std::acos(-1.0);

ComplexField analytic_field(GridPtr grid, double (*f)(double, double)) {
    ComplexField u(grid);
    const Grid& g = *u.grid;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (g.interior(i, j)) u.values[g.idx(i, j)] = f(g.x(i), g.y(j));
    return u;
}

// max relative error of -lap(u) against lambda*u, away from the boundary
double eigen_error(const ComplexField& u, const ComplexField& lap, double lambda,
                   int margin) {
    const Grid& g = *u.grid;
    double worst = 0.0;
    for (int j = margin; j < g.ny() - margin; ++j)
        for (int i = margin; i < g.nx() - margin; ++i) {
            const int k = g.idx(i, j);
            if (!g.interior_flat(k)) continue;
            bool deep = true;
            for (int dj = -margin; dj <= margin && deep; ++dj)
                for (int di = -margin; di <= margin; ++di)
                    if (!g.interior(i + di, j + dj)) {
                        deep = false;
                        break;
                    }
            if (!deep || std::abs(u.values[k]) < 0.1) continue;
            const double got = -lap.values[k].real();
            const double want = lambda * u.values[k].real();
            worst = std::max(worst, std::abs(got - want) / std::abs(want));
        }
    return worst;
}

}  // namespace

TEST_CASE("disk grid covers the analytic area") {
    GridPtr g = build_grid(DomainSpec::disk(1.0), 257, 257);
    const double area = g->n_interior() * g->cell_area();
    CHECK(std::abs(area - kPi) / kPi < 0.02);

    // one exterior layer on every side
    for (int i = 0; i < g->nx(); ++i) {
        CHECK(!g->interior(i, 0));
        CHECK(!g->interior(i, g->ny() - 1));
    }
    for (int j = 0; j < g->ny(); ++j) {
        CHECK(!g->interior(0, j));
        CHECK(!g->interior(g->nx() - 1, j));
    }
}

TEST_CASE("rectangle membership is the strict analytic test") {
    GridPtr g = build_grid(DomainSpec::rectangle(-1, 1, -1, 1), 41, 29);
    int n_interior = 0;
    for (int j = 0; j < g->ny(); ++j)
        for (int i = 0; i < g->nx(); ++i) {
            const Vec2 p = g->node(i, j);
            const bool inside = p.x > -1 && p.x < 1 && p.y > -1 && p.y < 1;
            CHECK(g->interior(i, j) == inside);
            n_interior += g->interior(i, j);
        }
    CHECK(n_interior == g->n_interior());

    // interior_index is a bijection onto 0..n_interior-1
    std::vector<int> seen(g->n_interior(), 0);
    for (int k = 0; k < g->size(); ++k) {
        const int idx = g->interior_index()[k];
        if (g->interior_flat(k)) {
            REQUIRE(idx >= 0);
            REQUIRE(idx < g->n_interior());
            seen[idx]++;
        } else {
            CHECK(idx == -1);
        }
    }
    for (int c : seen) CHECK(c == 1);
}

TEST_CASE("ellipse grid respects the analytic boundary") {
    GridPtr g = build_grid(DomainSpec::ellipse({2.0, 1.0}), 129, 65);
    const double area = g->n_interior() * g->cell_area();
    CHECK(std::abs(area - 2.0 * kPi) / (2.0 * kPi) < 0.03);
}

TEST_CASE("invalid resolutions and domains are rejected") {
    CHECK_THROWS_WITH_AS(build_grid(DomainSpec::disk(1.0), 2, 65), doctest::Contains("3"),
                         Error);
    try {
        build_grid(DomainSpec::disk(1.0), 2, 65);
    } catch (const Error& e) {
        CHECK(e.kind() == "invalid-resolution");
    }
    CHECK_THROWS_AS(DomainSpec::disk(-1.0), Error);
    CHECK_THROWS_AS(DomainSpec::rectangle(1, -1, 0, 1), Error);
    CHECK_THROWS_AS(DomainSpec::ellipse({0.0, 1.0}), Error);
}

TEST_CASE("laplacian: zero field and sine eigenfunction") {
    GridPtr g = build_grid(DomainSpec::rectangle(0, 1, 0, 1), 257, 257);
    ComplexField z(g);
    CHECK(linf(laplacian_apply(z)) == 0.0);

    auto u = analytic_field(g, [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); });
    const auto lap = laplacian_apply(u);
    const double err = eigen_error(u, lap, 2.0 * kPi * kPi, 2);
    CHECK(err < 2e-4);  // O(h^2) at h = 1/254

    // refinement: error shrinks ~4x when h halves
    GridPtr g2 = build_grid(DomainSpec::rectangle(0, 1, 0, 1), 129, 129);
    auto u2 = analytic_field(g2, [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); });
    const double err2 = eigen_error(u2, laplacian_apply(u2), 2.0 * kPi * kPi, 2);
    const double ratio = err2 / err;
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);
}

TEST_CASE("laplacian: Bessel eigenfunction on the unit disk") {
    const double j01 = testing::bessel_j0_first_zero();
    GridPtr g = build_grid(DomainSpec::disk(1.0), 257, 257);
    ComplexField u(g);
    for (int j = 0; j < g->ny(); ++j)
        for (int i = 0; i < g->nx(); ++i)
            if (g->interior(i, j))
                u.values[g->idx(i, j)] = std::cyl_bessel_j(0.0, j01 * g->node(i, j).norm());
    const auto lap = laplacian_apply(u);
    CHECK(eigen_error(u, lap, j01 * j01, 3) < 1e-3);
}

TEST_CASE("gradient: analytic slopes and boundary layers") {
    GridPtr g = build_grid(DomainSpec::rectangle(-1, 1, -1, 1), 65, 65);
    auto u = analytic_field(g, [](double x, double) { return x; });
    const auto [gx, gy] = gradient_apply(u);
    for (int j = 2; j < g->ny() - 2; ++j)
        for (int i = 2; i < g->nx() - 2; ++i) {
            if (!g->interior(i, j)) continue;
            bool deep = true;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) deep = deep && g->interior(i + di, j + dj);
            if (!deep) continue;
            CHECK(gx.values[g->idx(i, j)].real() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(gy.values[g->idx(i, j)].real() == doctest::Approx(0.0).epsilon(1e-12));
        }

    // constant-inside field: interior gradient zero except near the boundary
    auto c = analytic_field(g, [](double, double) { return 1.0; });
    const auto [cx, cy] = gradient_apply(c);
    for (int j = 3; j < g->ny() - 3; ++j)
        for (int i = 3; i < g->nx() - 3; ++i) {
            CHECK(cx.values[g->idx(i, j)] == cplx{});
            CHECK(cy.values[g->idx(i, j)] == cplx{});
        }

    ComplexField z(g);
    const auto [zx, zy] = gradient_apply(z);
    CHECK(linf(zx) == 0.0);
    CHECK(linf(zy) == 0.0);
}

TEST_CASE("integrate: disk area, zero field, linearity") {
    GridPtr g = build_grid(DomainSpec::disk(1.0), 257, 257);
    std::vector<double> ones(g->size(), 1.0);
    CHECK(std::abs(integrate(*g, ones) - kPi) / kPi < 0.01);

    std::vector<double> zero(g->size(), 0.0);
    CHECK(integrate(*g, zero) == 0.0);

    auto f = testing::random_smooth_field(g, 3, 6, 0.2, 0.5, false, 0.0);
    auto h = testing::random_smooth_field(g, 4, 6, 0.2, 0.5, false, 0.0);
    std::vector<double> fr(g->size()), hr(g->size()), lin(g->size());
    for (int k = 0; k < g->size(); ++k) {
        fr[k] = f.values[k].real();
        hr[k] = h.values[k].real();
        lin[k] = 2.0 * fr[k] - 3.0 * hr[k];
    }
    const double got = integrate(*g, lin);
    const double want = 2.0 * integrate(*g, fr) - 3.0 * integrate(*g, hr);
    CHECK(got == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("discrete integration by parts and negative semi-definiteness") {
    GridPtr g = build_grid(DomainSpec::disk(1.0), 97, 97);
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        auto f = testing::random_smooth_field(g, seed, 5, 0.1, 0.4, false, 0.0);
        auto h = testing::random_smooth_field(g, seed + 100, 5, 0.1, 0.4, false, 0.0);
        const auto lf = laplacian_apply(f);
        const auto lh = laplacian_apply(h);
        std::vector<double> a(g->size()), b(g->size());
        for (int k = 0; k < g->size(); ++k) {
            a[k] = f.values[k].real() * lh.values[k].real();
            b[k] = h.values[k].real() * lf.values[k].real();
        }
        const double ia = integrate(*g, a), ib = integrate(*g, b);
        CHECK(std::abs(ia - ib) <= 1e-10 * std::max(std::abs(ia), std::abs(ib)));
    }

    for (std::uint64_t seed : {10, 11, 12}) {
        auto u = testing::random_smooth_field(g, seed, 5, 0.1, 0.4, true, 3.0);
        const auto lu = laplacian_apply(u);
        KahanSum s;
        for (int k = 0; k < g->size(); ++k)
            if (g->interior_flat(k))
                s.add(std::real(std::conj(u.values[k]) * lu.values[k]));
        const double q = g->cell_area() * s.value();
        CHECK(q <= 1e-10 * std::abs(q) + 1e-10);
    }
}

TEST_CASE("field validation catches exterior garbage and non-finite values") {
    GridPtr g = build_grid(DomainSpec::disk(1.0), 33, 33);
    ComplexField u(g);
    u.values[0] = 1.0;  // corner node is exterior
    CHECK_THROWS_AS(u.validate(), Error);
    u.values[0] = 0.0;
    for (int k = 0; k < g->size(); ++k)
        if (g->interior_flat(k)) u.values[k] = 1.0;
    u.validate();
    u.values[g->idx(16, 16)] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(u.validate(), Error);
}
