#pragma once

#include <cstdint>
#include <string>

#include "gpbec/grid.hpp"

namespace gpbec {

/// Raw contents of a GPF1 dump: magic `GPF1`, little-endian u32 nx, ny,
/// f64 x0, y0, hx, hy, then nx*ny (re, im) f64 pairs row-major (y outer).
/// The interior mask is not stored; it is reconstructed from the DomainSpec
/// in the run config.
struct FieldDump {
    std::uint32_t nx = 0, ny = 0;
    double x0 = 0, y0 = 0, hx = 0, hy = 0;
    std::vector<cplx> values;
};

void write_field(const std::string& path, const ComplexField& field);
FieldDump read_dump(const std::string& path);
/// Binds a dump to a grid; the dump geometry must match exactly.
ComplexField read_field(const std::string& path, GridPtr grid);

/// Shortest decimal representation that round-trips the f64 exactly.
std::string format_double(double v);

}  // namespace gpbec
