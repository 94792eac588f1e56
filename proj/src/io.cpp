#include "sq/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sq {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_csv(const Field& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << f.grid.dim << "," << f.grid.n << "\n";
    for (double v : f.values) out << format_double(v) << "\n";
}

Field read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    char comma;
    int dim = 0, n = 0;
    in >> dim >> comma >> n;
    if (!in || comma != ',') throw std::runtime_error("bad field header in " + path);
    TorusGrid g(dim, n);
    Field f(g);
    for (long i = 0; i < f.size(); ++i) {
        if (!(in >> f[i])) throw std::runtime_error("truncated field data in " + path);
    }
    return f;
}

namespace {
constexpr uint32_t kMagic = 0x53514631;  // "SQF1"
}

void write_field_binary(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    uint32_t hdr[3] = {kMagic, static_cast<uint32_t>(f.grid.dim), static_cast<uint32_t>(f.grid.n)};
    out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

Field read_field_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    uint32_t hdr[3];
    in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    if (!in || hdr[0] != kMagic) throw std::runtime_error("bad field binary header in " + path);
    TorusGrid g(static_cast<int>(hdr[1]), static_cast<int>(hdr[2]));
    Field f(g);
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated field binary in " + path);
    return f;
}

}  // namespace sq
