#include "cyllens/field_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cyllens {

namespace {

constexpr const char* kMagic = "CYLLENS1";

void to_little(double v, unsigned char out[8]) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int b = 0; b < 8; ++b) out[b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xff);
}

double from_little(const unsigned char in[8]) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t(in[b]) << (8 * b);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

std::string fmt17(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(const void* data, std::size_t len) {
    std::ostringstream os;
    os << std::hex << fnv1a64(data, len);
    return os.str();
}

std::string write_field(const SpaceTimeField& f, const std::string& path) {
    const GridSpec& g = f.grid();
    const std::size_t nodes = static_cast<std::size_t>(g.node_count());
    std::vector<unsigned char> blob(nodes * 7 * 8);

    std::size_t off = 0;
    for (int n = 0; n < g.nt; ++n)
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const double vals[7] = {f.u(0, i, j, k, n),      f.u(1, i, j, k, n),
                                            f.u(2, i, j, k, n),      f.pressure(i, j, k, n),
                                            f.forcing(0, i, j, k, n), f.forcing(1, i, j, k, n),
                                            f.forcing(2, i, j, k, n)};
                    for (double v : vals) {
                        to_little(v, blob.data() + off);
                        off += 8;
                    }
                }

    const std::string checksum = fnv1a64_hex(blob.data(), blob.size());

    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_field: cannot open " + path);
        out.write(reinterpret_cast<const char*>(blob.data()),
                  static_cast<std::streamsize>(blob.size()));
        if (!out) throw std::runtime_error("write_field: write failed for " + path);
    }
    {
        std::ofstream hdr(path + ".hdr", std::ios::trunc);
        if (!hdr) throw std::runtime_error("write_field: cannot open " + path + ".hdr");
        hdr << "magic: " << kMagic << "\n";
        hdr << "nx: " << g.nx << "\nny: " << g.ny << "\nnz: " << g.nz << "\nnt: " << g.nt << "\n";
        hdr << "h: " << fmt17(g.h) << "\n";
        hdr << "origin: " << fmt17(g.origin.x()) << " " << fmt17(g.origin.y()) << " "
            << fmt17(g.origin.z()) << "\n";
        hdr << "t0: " << fmt17(g.t0) << "\ndt: " << fmt17(g.dt) << "\n";
        hdr << "half_space: " << (g.half_space ? 1 : 0) << "\n";
        hdr << "components: u1 u2 u3 p f1 f2 f3\n";
        hdr << "endianness: little\n";
        hdr << "checksum: " << checksum << "\n";
        hdr << "id: " << f.id() << "\n";
        hdr << "div_tol: " << fmt17(f.div_tol()) << "\n";
        hdr << "boundary_tol: " << fmt17(f.boundary_tol()) << "\n";
        hdr << "div_constant: " << fmt17(f.reported_div_constant()) << "\n";
        hdr << "pressure_flagged_zero: " << (f.pressure_flagged_zero() ? 1 : 0) << "\n";
        if (!hdr) throw std::runtime_error("write_field: header write failed");
    }
    return checksum;
}

SpaceTimeField read_field(const std::string& path) {
    std::ifstream hdr(path + ".hdr");
    if (!hdr) throw std::runtime_error("read_field: cannot open " + path + ".hdr");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(hdr, line)) {
        const auto pos = line.find(':');
        if (pos == std::string::npos) continue;
        std::string key = line.substr(0, pos);
        std::string val = line.substr(pos + 1);
        const auto ws = val.find_first_not_of(" \t");
        kv[key] = ws == std::string::npos ? "" : val.substr(ws);
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::runtime_error("read_field: header missing key '" + key + "'");
        return it->second;
    };
    if (need("magic") != kMagic)
        throw std::runtime_error("read_field: bad magic '" + kv["magic"] + "'");
    if (need("endianness") != "little")
        throw std::runtime_error("read_field: unsupported endianness");

    GridSpec g;
    g.nx = std::stoi(need("nx"));
    g.ny = std::stoi(need("ny"));
    g.nz = std::stoi(need("nz"));
    g.nt = std::stoi(need("nt"));
    g.h = std::stod(need("h"));
    {
        std::istringstream os(need("origin"));
        os >> g.origin.x() >> g.origin.y() >> g.origin.z();
    }
    g.t0 = std::stod(need("t0"));
    g.dt = std::stod(need("dt"));
    g.half_space = need("half_space") == "1";

    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_field: cannot open " + path);
    const std::size_t nodes = static_cast<std::size_t>(g.node_count());
    std::vector<unsigned char> blob(nodes * 7 * 8);
    in.read(reinterpret_cast<char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
    if (in.gcount() != static_cast<std::streamsize>(blob.size()))
        throw std::runtime_error("read_field: blob shorter than the header promises");

    if (fnv1a64_hex(blob.data(), blob.size()) != need("checksum"))
        throw std::runtime_error("read_field: checksum mismatch for " + path);

    SpaceTimeField f(g, kv.count("id") ? kv["id"] : "file");
    std::array<std::vector<double>, 7> comps;
    for (auto& c : comps) c.assign(nodes, 0.0);
    std::array<bool, 7> nonzero{};
    std::size_t off = 0;
    for (std::size_t node = 0; node < nodes; ++node)
        for (int c = 0; c < 7; ++c) {
            const double v = from_little(blob.data() + off);
            off += 8;
            comps[static_cast<std::size_t>(c)][node] = v;
            if (v != 0.0) nonzero[static_cast<std::size_t>(c)] = true;
        }
    for (int c = 0; c < 7; ++c)
        if (nonzero[static_cast<std::size_t>(c)])
            f.mutable_component(c) = std::move(comps[static_cast<std::size_t>(c)]);

    if (kv.count("div_tol") && kv.count("boundary_tol"))
        f.set_tols(std::stod(kv["div_tol"]), std::stod(kv["boundary_tol"]));
    if (kv.count("div_constant")) f.set_div_constant(std::stod(kv["div_constant"]));
    if (kv.count("pressure_flagged_zero"))
        f.set_pressure_flagged_zero(kv["pressure_flagged_zero"] == "1");
    return f;
}

} // namespace cyllens
