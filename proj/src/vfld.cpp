#include "vekua/vfld.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vekua/errors.hpp"

namespace vekua {

namespace {

const char* rank_name(int components, bool two_d) {
    if (two_d) return "complex2d";
    switch (components) {
    case 1: return "scalar";
    case 3: return "vector";
    default: return "biquat";
    }
}

void write_header(std::ostream& os, const char* rank, const std::array<double, 3>& origin,
                  const std::array<double, 3>& extent, const std::array<int, 3>& res) {
    char buf[256];
    os << "vfld 1\n";
    os << "rank " << rank << "\n";
    std::snprintf(buf, sizeof buf, "origin %.17g %.17g %.17g\n", origin[0], origin[1],
                  origin[2]);
    os << buf;
    std::snprintf(buf, sizeof buf, "extent %.17g %.17g %.17g\n", extent[0], extent[1],
                  extent[2]);
    os << buf;
    os << "res " << res[0] << " " << res[1] << " " << res[2] << "\n";
}

void write_value(std::ostream& os, Cplx v, bool last) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g %.17g%c", v.real(), v.imag(), last ? '\n' : ' ');
    os << buf;
}

template <int C>
void write_field(const std::string& path, const GridField<C>& f) {
    std::ofstream os(path);
    if (!os) throw VfldError("cannot open '" + path + "' for writing");
    const GridDomain& d = f.domain();
    write_header(os, rank_name(C, false), d.origin(), d.extent(), d.res());
    for (std::size_t n = 0; n < f.node_count(); ++n)
        for (int c = 0; c < C; ++c) write_value(os, f.at(n, c), c == C - 1);
    if (!os) throw VfldError("write failed for '" + path + "'");
}

struct Header {
    std::string rank;
    std::array<double, 3> origin{}, extent{};
    std::array<int, 3> res{};
};

Header read_header(std::istream& is, const std::string& path) {
    Header h;
    std::string line, key;
    auto next_line = [&](const char* what) {
        if (!std::getline(is, line)) throw VfldError(path + ": truncated header (" + what + ")");
        return std::istringstream(line);
    };
    {
        auto ls = next_line("magic");
        int version = 0;
        ls >> key >> version;
        if (key != "vfld" || version != 1)
            throw VfldError(path + ": not a VFLD v1 file");
    }
    {
        auto ls = next_line("rank");
        ls >> key >> h.rank;
        if (key != "rank" ||
            (h.rank != "scalar" && h.rank != "vector" && h.rank != "biquat" &&
             h.rank != "complex2d"))
            throw VfldError(path + ": bad rank line");
    }
    {
        auto ls = next_line("origin");
        ls >> key >> h.origin[0] >> h.origin[1] >> h.origin[2];
        if (key != "origin" || ls.fail()) throw VfldError(path + ": bad origin line");
    }
    {
        auto ls = next_line("extent");
        ls >> key >> h.extent[0] >> h.extent[1] >> h.extent[2];
        if (key != "extent" || ls.fail()) throw VfldError(path + ": bad extent line");
    }
    {
        auto ls = next_line("res");
        ls >> key >> h.res[0] >> h.res[1] >> h.res[2];
        if (key != "res" || ls.fail()) throw VfldError(path + ": bad res line");
    }
    return h;
}

template <int C>
GridField<C> read_body(std::istream& is, const GridDomain& dom, const std::string& path) {
    GridField<C> f(dom);
    std::string line;
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        if (!std::getline(is, line)) throw VfldError(path + ": truncated data");
        std::istringstream ls(line);
        for (int c = 0; c < C; ++c) {
            double re, im;
            ls >> re >> im;
            if (ls.fail()) throw VfldError(path + ": bad value line " + std::to_string(n));
            if (!std::isfinite(re) || !std::isfinite(im))
                throw VfldError(path + ": non-finite value at node " + std::to_string(n));
            f.at(n, c) = Cplx(re, im);
        }
        double extra;
        if (ls >> extra) throw VfldError(path + ": trailing values at node " + std::to_string(n));
    }
    return f;
}

} // namespace

void write_vfld(const std::string& path, const ScalarField& f) { write_field(path, f); }
void write_vfld(const std::string& path, const VectorField& f) { write_field(path, f); }
void write_vfld(const std::string& path, const BiquaternionField& f) { write_field(path, f); }

void write_vfld(const std::string& path, const plane::ComplexField2D& f) {
    std::ofstream os(path);
    if (!os) throw VfldError("cannot open '" + path + "' for writing");
    const plane::Grid2D& g = f.grid();
    write_header(os, "complex2d", {g.origin()[0], g.origin()[1], 0.0},
                 {g.extent()[0], g.extent()[1], 0.0}, {g.res()[0], g.res()[1], 1});
    for (std::size_t n = 0; n < f.node_count(); ++n) write_value(os, f.at(n), true);
    if (!os) throw VfldError("write failed for '" + path + "'");
}

VfldField read_vfld(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw VfldError("cannot open '" + path + "'");
    Header h = read_header(is, path);
    if (h.rank == "complex2d") {
        if (h.res[2] != 1) throw VfldError(path + ": complex2d requires n3 = 1");
        auto g = [&] {
            try {
                return plane::Grid2D({h.origin[0], h.origin[1]}, {h.extent[0], h.extent[1]},
                                     {h.res[0], h.res[1]});
            } catch (const std::invalid_argument& e) {
                throw VfldError(path + ": " + e.what());
            }
        }();
        plane::ComplexField2D f(g);
        std::string line;
        for (std::size_t n = 0; n < g.node_count(); ++n) {
            if (!std::getline(is, line)) throw VfldError(path + ": truncated data");
            std::istringstream ls(line);
            double re, im;
            ls >> re >> im;
            if (ls.fail()) throw VfldError(path + ": bad value line");
            if (!std::isfinite(re) || !std::isfinite(im))
                throw VfldError(path + ": non-finite value");
            f.at(n) = Cplx(re, im);
        }
        return f;
    }
    auto dom = [&] {
        try {
            return GridDomain(h.origin, h.extent, h.res);
        } catch (const std::invalid_argument& e) {
            throw VfldError(path + ": " + e.what());
        }
    }();
    if (h.rank == "scalar") return read_body<1>(is, dom, path);
    if (h.rank == "vector") return read_body<3>(is, dom, path);
    return read_body<4>(is, dom, path);
}

namespace {
template <class T>
T read_typed(const std::string& path, const char* want) {
    VfldField any = read_vfld(path);
    if (auto* p = std::get_if<T>(&any)) return std::move(*p);
    throw VfldError(path + ": expected rank " + want);
}
} // namespace

ScalarField read_scalar_vfld(const std::string& path) {
    return read_typed<ScalarField>(path, "scalar");
}
VectorField read_vector_vfld(const std::string& path) {
    return read_typed<VectorField>(path, "vector");
}
BiquaternionField read_biquat_vfld(const std::string& path) {
    return read_typed<BiquaternionField>(path, "biquat");
}
plane::ComplexField2D read_complex2d_vfld(const std::string& path) {
    return read_typed<plane::ComplexField2D>(path, "complex2d");
}

} // namespace vekua
