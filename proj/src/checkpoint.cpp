#include "stratlab/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace stratlab {

namespace {

constexpr char kMagic[4] = {'B', 'Q', 'S', '1'};

// the file format is little-endian; on a little-endian host (the only kind
// this code targets) raw byte copies of u64 / f64 serialize correctly
static_assert(sizeof(double) == 8, "format requires 8-byte IEEE doubles");

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    put_u64(os, u);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& is) {
    const std::uint64_t u = get_u64(is);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("save_checkpoint: cannot open " + path);
    os.write(kMagic, 4);
    put_u64(os, static_cast<std::uint64_t>(c.state.grid.n));
    put_f64(os, c.state.grid.box_length);
    put_f64(os, c.par.nu);
    put_f64(os, c.par.nu_prime);
    put_f64(os, c.par.epsilon);
    put_f64(os, c.time);
    // bulk payload: buffer each component once (index order k1-major /
    // k3-fastest is exactly the in-memory layout)
    std::vector<double> buf;
    for (int comp = 0; comp < 4; ++comp) {
        const scalar_data& data = c.state.comp[comp];
        buf.resize(2 * data.size());
        for (std::size_t m = 0; m < data.size(); ++m) {
            buf[2 * m] = data[m].real();
            buf[2 * m + 1] = data[m].imag();
        }
        os.write(reinterpret_cast<const char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size() * sizeof(double)));
    }
    if (!os) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_checkpoint: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_checkpoint: bad magic in " + path);
    const std::uint64_t n = get_u64(is);
    if (n == 0 || n > (1u << 12))
        throw std::runtime_error("load_checkpoint: implausible grid size in " + path);
    Checkpoint c;
    Grid3 g;
    g.n = static_cast<std::size_t>(n);
    g.box_length = get_f64(is);
    c.par.nu = get_f64(is);
    c.par.nu_prime = get_f64(is);
    c.par.epsilon = get_f64(is);
    c.time = get_f64(is);
    if (!is) throw std::runtime_error("load_checkpoint: truncated header in " + path);
    c.state = SpectralField4(g);
    std::vector<double> buf(2 * g.size());
    for (int comp = 0; comp < 4; ++comp) {
        is.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(double)));
        if (!is)
            throw std::runtime_error("load_checkpoint: truncated payload in " + path);
        for (std::size_t m = 0; m < g.size(); ++m)
            c.state.comp[comp][m] = complex_t(buf[2 * m], buf[2 * m + 1]);
    }
    return c;
}

}  // namespace stratlab
