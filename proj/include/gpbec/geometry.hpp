#pragma once

#include <array>
#include <cmath>

#include "gpbec/errors.hpp"

namespace gpbec {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    /// Rotated by +pi/2: x^perp = (-y, x).
    Vec2 perp() const { return {-y, x}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Analytic description of the bounded domain D. Membership is strict:
/// a point on the boundary curve is not interior.
struct DomainSpec {
    enum class Kind { Disk, Rectangle, Ellipse };

    Kind kind = Kind::Disk;
    Vec2 center{0.0, 0.0};     // disk, ellipse
    double radius = 1.0;       // disk
    Vec2 semi_axes{1.0, 1.0};  // ellipse
    double x_min = -1.0, x_max = 1.0, y_min = -1.0, y_max = 1.0;  // rectangle

    static DomainSpec disk(double radius, Vec2 center = {0.0, 0.0}) {
        if (!(radius > 0.0)) fail("invalid-domain", "disk radius must be positive");
        DomainSpec d;
        d.kind = Kind::Disk;
        d.radius = radius;
        d.center = center;
        return d;
    }

    static DomainSpec rectangle(double x_min, double x_max, double y_min, double y_max) {
        if (!(x_min < x_max) || !(y_min < y_max))
            fail("invalid-domain", "rectangle requires x_min < x_max and y_min < y_max");
        DomainSpec d;
        d.kind = Kind::Rectangle;
        d.x_min = x_min;
        d.x_max = x_max;
        d.y_min = y_min;
        d.y_max = y_max;
        return d;
    }

    static DomainSpec ellipse(Vec2 semi_axes, Vec2 center = {0.0, 0.0}) {
        if (!(semi_axes.x > 0.0) || !(semi_axes.y > 0.0))
            fail("invalid-domain", "ellipse semi-axes must be positive");
        DomainSpec d;
        d.kind = Kind::Ellipse;
        d.semi_axes = semi_axes;
        d.center = center;
        return d;
    }

    bool contains(Vec2 p) const {
        switch (kind) {
            case Kind::Disk:
                return (p - center).norm2() < radius * radius;
            case Kind::Rectangle:
                return p.x > x_min && p.x < x_max && p.y > y_min && p.y < y_max;
            case Kind::Ellipse: {
                const double ex = (p.x - center.x) / semi_axes.x;
                const double ey = (p.y - center.y) / semi_axes.y;
                return ex * ex + ey * ey < 1.0;
            }
        }
        return false;
    }

    /// Whether the closed ball B_r(c) lies inside D (conservative for the
    /// ellipse: inscribed disk of the scaled metric).
    bool contains_ball(Vec2 c, double r) const {
        switch (kind) {
            case Kind::Disk:
                return (c - center).norm() + r < radius;
            case Kind::Rectangle:
                return c.x - r > x_min && c.x + r < x_max && c.y - r > y_min &&
                       c.y + r < y_max;
            case Kind::Ellipse: {
                const double ex = (c.x - center.x) / semi_axes.x;
                const double ey = (c.y - center.y) / semi_axes.y;
                const double m = std::min(semi_axes.x, semi_axes.y);
                return std::sqrt(ex * ex + ey * ey) + r / m < 1.0;
            }
        }
        return false;
    }

    /// Tight analytic bounding box [x_lo,x_hi] x [y_lo,y_hi] of D.
    std::array<double, 4> bounding_box() const {
        switch (kind) {
            case Kind::Disk:
                return {center.x - radius, center.x + radius, center.y - radius,
                        center.y + radius};
            case Kind::Rectangle:
                return {x_min, x_max, y_min, y_max};
            case Kind::Ellipse:
                return {center.x - semi_axes.x, center.x + semi_axes.x,
                        center.y - semi_axes.y, center.y + semi_axes.y};
        }
        return {0, 0, 0, 0};
    }

    /// sup over closure of D of |x|^2 (used by energy lower-bound constants).
    double sup_norm2() const {
        auto [x0, x1, y0, y1] = bounding_box();
        const double ax = std::max(std::abs(x0), std::abs(x1));
        const double ay = std::max(std::abs(y0), std::abs(y1));
        switch (kind) {
            case Kind::Rectangle:
                return ax * ax + ay * ay;
            case Kind::Disk:
                return std::pow(center.norm() + radius, 2);
            case Kind::Ellipse:
                return std::pow(center.norm() + std::max(semi_axes.x, semi_axes.y), 2);
        }
        return 0.0;
    }
};

}  // namespace gpbec
