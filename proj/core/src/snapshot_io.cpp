#include "relaxlab/snapshot_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>

#include "relaxlab/errors.hpp"

namespace relaxlab {

namespace {

constexpr std::array<char, 8> kMagic{'R', 'L', 'X', 'S', 'N', 'A', 'P', '\0'};

void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(b, 8);
}

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(b, 4);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw DataError("truncated snapshot file");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw DataError("truncated snapshot file");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_snapshots(std::ostream& os, const Trajectory& traj, const TailSpec& tail) {
    os.write(kMagic.data(), kMagic.size());
    put_u32(os, kSnapshotFormatVersion);
    put_u32(os, 0);
    const auto& g = traj.grid;
    put_f64(os, g.space.L);
    put_u64(os, static_cast<std::uint64_t>(g.space.N));
    put_f64(os, g.dt);
    put_f64(os, g.T);
    put_f64(os, traj.params.a);
    put_f64(os, traj.params.b);
    put_f64(os, traj.params.c);
    put_f64(os, tail.alpha);
    put_f64(os, tail.beta);
    put_f64(os, tail.c_plus);
    put_f64(os, tail.c_minus);
    put_u64(os, traj.snapshots.size());
    for (const auto& s : traj.snapshots) {
        put_f64(os, s.t);
        for (double v : s.u) put_f64(os, v);
        if (s.ut.size() == s.u.size())
            for (double v : s.ut) put_f64(os, v);
        else
            for (std::size_t j = 0; j < s.u.size(); ++j) put_f64(os, 0.0);
    }
    if (!os) throw DataError("failed writing snapshot stream");
}

void write_snapshots(const std::string& path, const Trajectory& traj, const TailSpec& tail) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot open " + path + " for writing");
    write_snapshots(os, traj, tail);
}

SnapshotFile read_snapshots(std::istream& is) {
    std::array<char, 8> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic)
        throw DataError("not a snapshot file");
    const auto version = get_u32(is);
    if (version != kSnapshotFormatVersion)
        throw DataError("unsupported snapshot format version " + std::to_string(version));
    get_u32(is);
    SnapshotFile f;
    f.L = get_f64(is);
    const auto n = get_u64(is);
    if (n == 0 || n > (1ULL << 30)) throw DataError("implausible grid size in snapshot file");
    f.N = static_cast<int>(n);
    f.dt = get_f64(is);
    f.T = get_f64(is);
    f.params.a = get_f64(is);
    f.params.b = get_f64(is);
    f.params.c = get_f64(is);
    f.params.mu = 1.0 - f.params.a * f.params.a;
    f.params.kappa = kappa_of(f.params.a, f.params.b, f.params.c);
    f.tail.alpha = get_f64(is);
    f.tail.beta = get_f64(is);
    f.tail.gamma = std::min(f.tail.alpha, f.tail.beta);
    f.tail.c_plus = get_f64(is);
    f.tail.c_minus = get_f64(is);
    const auto count = get_u64(is);
    for (std::uint64_t i = 0; i < count; ++i) {
        Snapshot s;
        s.t = get_f64(is);
        s.u.resize(f.N);
        s.ut.resize(f.N);
        for (auto& v : s.u) v = get_f64(is);
        for (auto& v : s.ut) v = get_f64(is);
        f.snapshots.push_back(std::move(s));
    }
    return f;
}

SnapshotFile read_snapshots(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open " + path);
    return read_snapshots(is);
}

void write_snapshots_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,x,u\n";
    const auto& g = traj.grid.space;
    for (const auto& s : traj.snapshots)
        for (int j = 0; j < g.N; ++j)
            os << format_double(s.t) << ',' << format_double(g.x(j)) << ','
               << format_double(s.u[j]) << '\n';
}

}  // namespace relaxlab
