#include "gpbec/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>

#include "gpbec/errors.hpp"

namespace gpbec {

namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
void put_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(std::begin(buf), std::end(buf));
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    is.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!is) fail("truncated", "GPF1 payload ended early");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(std::begin(buf), std::end(buf));
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace

void write_field(const std::string& path, const ComplexField& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail("io", "cannot open '" + path + "' for writing");
    const Grid& g = *field.grid;
    os.write("GPF1", 4);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.nx()));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.ny()));
    put_le<double>(os, g.x0());
    put_le<double>(os, g.y0());
    put_le<double>(os, g.hx());
    put_le<double>(os, g.hy());
    for (const cplx& v : field.values) {
        put_le<double>(os, v.real());
        put_le<double>(os, v.imag());
    }
    if (!os) fail("io", "write to '" + path + "' failed");
}

FieldDump read_dump(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail("io", "cannot open '" + path + "'");
    char magic[4];
    is.read(magic, 4);
    if (!is) fail("truncated", "file shorter than the GPF1 header");
    if (std::memcmp(magic, "GPF1", 4) != 0) {
        if (std::memcmp(magic, "GPF", 3) == 0)
            fail("format-version", std::string("unsupported dump version '") +
                                       std::string(magic, 4) + "'");
        fail("format", "not a GPF1 field dump");
    }
    FieldDump d;
    d.nx = get_le<std::uint32_t>(is);
    d.ny = get_le<std::uint32_t>(is);
    d.x0 = get_le<double>(is);
    d.y0 = get_le<double>(is);
    d.hx = get_le<double>(is);
    d.hy = get_le<double>(is);
    const std::uint64_t count = std::uint64_t(d.nx) * d.ny;
    if (count > (1ull << 32)) fail("format", "implausible GPF1 dimensions");
    d.values.resize(count);
    for (auto& v : d.values) {
        const double re = get_le<double>(is);
        const double im = get_le<double>(is);
        v = {re, im};
    }
    return d;
}

ComplexField read_field(const std::string& path, GridPtr grid) {
    const FieldDump d = read_dump(path);
    const Grid& g = *grid;
    if (d.nx != static_cast<std::uint32_t>(g.nx()) ||
        d.ny != static_cast<std::uint32_t>(g.ny()) || d.x0 != g.x0() || d.y0 != g.y0() ||
        d.hx != g.hx() || d.hy != g.hy())
        fail("format", "dump geometry does not match the grid");
    ComplexField f(std::move(grid));
    f.values = d.values;
    return f;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace gpbec
