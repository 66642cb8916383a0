#include "vekua/vekua2d.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vekua/detail/stencil.hpp"

namespace vekua::plane {

namespace {
std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}
const Cplx I{0.0, 1.0};
} // namespace

Grid2D::Grid2D(std::array<double, 2> origin, std::array<double, 2> extent,
               std::array<int, 2> res)
    : origin_(origin), extent_(extent), res_(res) {
    for (int k = 0; k < 2; ++k) {
        if (!(extent_[k] > 0.0) || !std::isfinite(extent_[k]) || !std::isfinite(origin_[k]))
            throw std::invalid_argument("Grid2D: extent must be positive and finite");
        if (res_[k] < 5) throw std::invalid_argument("Grid2D: resolution must be >= 5 per axis");
        spacing_[k] = extent_[k] / (res_[k] - 1);
    }
    count_ = static_cast<std::size_t>(res_[0]) * res_[1];
}

ComplexField2D make_field(const Grid2D& g, const std::function<Cplx(double, double)>& fn) {
    ComplexField2D f(g);
    for (int j = 0; j < g.res()[1]; ++j)
        for (int i = 0; i < g.res()[0]; ++i) {
            Cplx v = fn(g.coord(0, i), g.coord(1, j));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("2d field: non-finite value");
            f.at(i, j) = v;
        }
    return f;
}

ComplexField2D partial(const ComplexField2D& f, int axis) {
    const Grid2D& g = f.grid();
    ComplexField2D out(g);
    const auto& n = g.res();
    const std::size_t stride[2] = {1, static_cast<std::size_t>(n[0])};
    const int other = 1 - axis;
    for (int t = 0; t < n[other]; ++t) {
        const std::size_t base = stride[other] * t;
        detail::d1_line(f.data() + base, out.data() + base, n[axis], stride[axis],
                        g.spacing(axis));
    }
    return out;
}

ComplexField2D d_z(const ComplexField2D& f) {
    ComplexField2D dx = partial(f, 0), dy = partial(f, 1);
    ComplexField2D out(f.grid());
    for (std::size_t n = 0; n < f.node_count(); ++n)
        out.at(n) = 0.5 * (dx.at(n) - I * dy.at(n));
    return out;
}

ComplexField2D d_zbar(const ComplexField2D& f) {
    ComplexField2D dx = partial(f, 0), dy = partial(f, 1);
    ComplexField2D out(f.grid());
    for (std::size_t n = 0; n < f.node_count(); ++n)
        out.at(n) = 0.5 * (dx.at(n) + I * dy.at(n));
    return out;
}

ComplexField2D laplacian(const ComplexField2D& f) {
    ComplexField2D out(f.grid());
    for (int k = 0; k < 2; ++k) {
        ComplexField2D dd = partial(partial(f, k), k);
        for (std::size_t n = 0; n < f.node_count(); ++n) out.at(n) += dd.at(n);
    }
    return out;
}

#define VEKUA_POINTWISE(name, expr)                                                        \
    ComplexField2D name(const ComplexField2D& a, const ComplexField2D& b) {                \
        if (!(a.grid() == b.grid()))                                                       \
            throw std::invalid_argument("2d fields on different grids");                   \
        ComplexField2D out(a.grid());                                                      \
        for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n) = expr;                 \
        return out;                                                                        \
    }
VEKUA_POINTWISE(add, a.at(n) + b.at(n))
VEKUA_POINTWISE(sub, a.at(n) - b.at(n))
VEKUA_POINTWISE(mul, a.at(n) * b.at(n))
#undef VEKUA_POINTWISE

ComplexField2D scale(Cplx s, const ComplexField2D& a) {
    ComplexField2D out(a.grid());
    for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n) = s * a.at(n);
    return out;
}
ComplexField2D conj(const ComplexField2D& a) {
    ComplexField2D out(a.grid());
    for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n) = std::conj(a.at(n));
    return out;
}
ComplexField2D reciprocal(const ComplexField2D& a) {
    ComplexField2D out(a.grid());
    for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n) = 1.0 / a.at(n);
    return out;
}
ComplexField2D real_part(const ComplexField2D& a) {
    ComplexField2D out(a.grid());
    for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n) = a.at(n).real();
    return out;
}
ComplexField2D imag_part(const ComplexField2D& a) {
    ComplexField2D out(a.grid());
    for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n) = a.at(n).imag();
    return out;
}

double interior_rms(const ComplexField2D& f, int exclude) {
    const auto& n = f.grid().res();
    for (int k = 0; k < 2; ++k)
        if (n[k] - 2 * exclude < 1)
            throw std::invalid_argument("interior_rms: exclusion leaves no nodes");
    double acc = 0.0;
    std::size_t cnt = 0;
    for (int j = exclude; j < n[1] - exclude; ++j)
        for (int i = exclude; i < n[0] - exclude; ++i) {
            acc += std::norm(f.at(i, j));
            ++cnt;
        }
    return std::sqrt(acc / static_cast<double>(cnt));
}

double noise_floor_2d(const ComplexField2D& f, int deriv_order, int exclude) {
    double h = std::min(f.grid().spacing(0), f.grid().spacing(1));
    double amp = 1.0;
    for (int o = 0; o < deriv_order; ++o) amp /= h;
    return 1e-8 * interior_rms(f, exclude) * amp;
}

double rel_of_2d(double num, std::initializer_list<double> scales) {
    double den = 0.0;
    for (double s : scales) den += s;
    if (num == 0.0) return 0.0;
    return num / std::max(den, 1e-300);
}

GeneratingPair::GeneratingPair(ComplexField2D f, ComplexField2D g)
    : F(std::move(f)), G(std::move(g)) {
    if (!(F.grid() == G.grid())) throw std::invalid_argument("pair on different grids");
    for (std::size_t n = 0; n < F.node_count(); ++n)
        if (!(std::imag(std::conj(F.at(n)) * G.at(n)) > 0.0))
            throw std::invalid_argument("generating pair: Im(conj(F) G) must be positive");
}

GeneratingPair GeneratingPair::main_pair(const ComplexField2D& f) {
    return GeneratingPair(f, scale(I, reciprocal(f)));
}

CharacteristicCoefficients characteristic_coefficients(const GeneratingPair& pair) {
    const ComplexField2D& F = pair.F;
    const ComplexField2D& G = pair.G;
    ComplexField2D Fz = d_z(F), Fzb = d_zbar(F), Gz = d_z(G), Gzb = d_zbar(G);
    CharacteristicCoefficients cc{ComplexField2D(F.grid()), ComplexField2D(F.grid()),
                                  ComplexField2D(F.grid()), ComplexField2D(F.grid())};
    for (std::size_t n = 0; n < F.node_count(); ++n) {
        const Cplx f = F.at(n), g = G.at(n);
        const Cplx den = f * std::conj(g) - std::conj(f) * g;
        cc.a.at(n) = -(std::conj(f) * Gzb.at(n) - Fzb.at(n) * std::conj(g)) / den;
        cc.b.at(n) = (f * Gzb.at(n) - Fzb.at(n) * g) / den;
        cc.A.at(n) = -(std::conj(f) * Gz.at(n) - Fz.at(n) * std::conj(g)) / den;
        cc.B.at(n) = (f * Gz.at(n) - Fz.at(n) * g) / den;
    }
    return cc;
}

std::array<ComplexField2D, 2> decompose(const ComplexField2D& w, const GeneratingPair& pair) {
    ComplexField2D phi(w.grid()), psi(w.grid());
    for (std::size_t n = 0; n < w.node_count(); ++n) {
        const Cplx f = pair.F.at(n), g = pair.G.at(n);
        const double im_fg = std::imag(std::conj(f) * g);
        phi.at(n) = std::imag(std::conj(w.at(n)) * g) / im_fg;
        psi.at(n) = -std::imag(std::conj(w.at(n)) * f) / im_fg;
    }
    return {phi, psi};
}

namespace {

// c(f) is f_zbar/f or f_z/f; returns {derivative part, multiplier part}.
struct Parts2D {
    ComplexField2D deriv, mult;
};

Parts2D op_parts(const ComplexField2D& w, const ComplexField2D& f, bool zbar_deriv,
                 bool zbar_coeff, double sign) {
    if (!(w.grid() == f.grid())) throw std::invalid_argument("2d fields on different grids");
    ComplexField2D d = zbar_deriv ? d_zbar(w) : d_z(w);
    ComplexField2D fc = zbar_coeff ? d_zbar(f) : d_z(f);
    Parts2D p{std::move(d), ComplexField2D(w.grid())};
    for (std::size_t n = 0; n < w.node_count(); ++n)
        p.mult.at(n) = sign * (fc.at(n) / f.at(n)) * std::conj(w.at(n));
    return p;
}

double parts_residual(const ComplexField2D& w, const Parts2D& p, int exclude) {
    // d_z / d_zbar of a solution vanish; scale by the raw derivatives of w.
    double scale = interior_rms(p.mult, exclude);
    for (int k = 0; k < 2; ++k) scale += interior_rms(partial(w, k), exclude);
    return rel_of_2d(interior_rms(add(p.deriv, p.mult), exclude),
                     {scale, noise_floor_2d(w, 1, exclude)});
}

} // namespace

ComplexField2D vekua_main(const ComplexField2D& w, const ComplexField2D& f) {
    Parts2D p = op_parts(w, f, true, true, -1.0);
    return add(p.deriv, p.mult);
}
ComplexField2D vekua_main_bar(const ComplexField2D& w, const ComplexField2D& f) {
    Parts2D p = op_parts(w, f, false, false, -1.0);
    return add(p.deriv, p.mult);
}
ComplexField2D vekua_successor(const ComplexField2D& w, const ComplexField2D& f) {
    Parts2D p = op_parts(w, f, true, false, 1.0);
    return add(p.deriv, p.mult);
}
ComplexField2D vekua_successor_bar(const ComplexField2D& w, const ComplexField2D& f) {
    Parts2D p = op_parts(w, f, false, true, 1.0);
    return add(p.deriv, p.mult);
}

double vekua_main_residual(const ComplexField2D& w, const ComplexField2D& f, int exclude) {
    return parts_residual(w, op_parts(w, f, true, true, -1.0), exclude);
}
double vekua_successor_residual(const ComplexField2D& w, const ComplexField2D& f,
                                int exclude) {
    return parts_residual(w, op_parts(w, f, true, false, 1.0), exclude);
}

ComplexField2D bers_derivative(const ComplexField2D& w, const ComplexField2D& f, double tol,
                               int exclude) {
    double pre = vekua_main_residual(w, f, exclude);
    if (pre > tol)
        throw NotAVekuaSolution("2d bers_derivative: main-equation residual " + fmt(pre) +
                                " > " + fmt(tol));
    return vekua_main_bar(w, f);
}

ComplexField2D bers_derivative_coordinate_form(const ComplexField2D& w,
                                               const ComplexField2D& f) {
    ComplexField2D w1 = real_part(w), w2 = imag_part(w);
    ComplexField2D t1 = mul(f, d_z(mul(reciprocal(f), w1)));
    ComplexField2D t2 = mul(reciprocal(f), d_z(mul(f, w2)));
    ComplexField2D out(w.grid());
    for (std::size_t n = 0; n < w.node_count(); ++n) out.at(n) = t1.at(n) + I * t2.at(n);
    return out;
}

namespace {

// 2 * (int Phi1 dx -/+ Phi2 dy) along the x-then-y axis path, plus c.
ComplexField2D axis_path_integral(const ComplexField2D& phi, const PathBase2D& path,
                                  double dy_sign) {
    const Grid2D& g = phi.grid();
    const auto& n = g.res();
    const int i0 = path.base[0], j0 = path.base[1];
    if (i0 < 0 || i0 >= n[0] || j0 < 0 || j0 >= n[1])
        throw std::invalid_argument("2d potential base is not a grid node");
    ComplexField2D out(g);
    const double hx = g.spacing(0), hy = g.spacing(1);
    // segment 1: along x at y = y0
    std::vector<double> sx(n[0], 0.0);
    for (int i = 1; i < n[0]; ++i)
        sx[i] = sx[i - 1] + 0.5 * hx * (phi.at(i, j0).real() + phi.at(i - 1, j0).real());
    // segment 2: along y at each x
    for (int i = 0; i < n[0]; ++i) {
        double sy = 0.0;
        std::vector<double> col(n[1], 0.0);
        for (int j = 1; j < n[1]; ++j) {
            sy += 0.5 * hy * (phi.at(i, j).imag() + phi.at(i, j - 1).imag());
            col[j] = sy;
        }
        for (int j = 0; j < n[1]; ++j)
            out.at(i, j) = 2.0 * ((sx[i] - sx[i0]) + dy_sign * (col[j] - col[j0])) +
                           path.constant;
    }
    return out;
}

} // namespace

ComplexField2D potential_from_dz(const ComplexField2D& phi, const PathBase2D& path,
                                 double tol) {
    // compatibility: d_y Phi1 + d_x Phi2 = 0
    ComplexField2D p1 = real_part(phi), p2 = imag_part(phi);
    ComplexField2D c = add(partial(p1, 1), partial(p2, 0));
    double res = rel_of_2d(interior_rms(c),
                           {interior_rms(partial(p1, 1)), interior_rms(partial(p2, 0)),
                            noise_floor_2d(phi, 1, 2)});
    if (res > tol)
        throw CompatibilityViolated("potential_from_dz: d_y Phi1 + d_x Phi2 residual " +
                                    fmt(res) + " > " + fmt(tol));
    return axis_path_integral(phi, path, -1.0);
}

ComplexField2D potential_from_dzbar(const ComplexField2D& phi, const PathBase2D& path,
                                    double tol) {
    ComplexField2D p1 = real_part(phi), p2 = imag_part(phi);
    ComplexField2D c = sub(partial(p1, 1), partial(p2, 0));
    double res = rel_of_2d(interior_rms(c),
                           {interior_rms(partial(p1, 1)), interior_rms(partial(p2, 0)),
                            noise_floor_2d(phi, 1, 2)});
    if (res > tol)
        throw CompatibilityViolated("potential_from_dzbar: d_y Phi1 - d_x Phi2 residual " +
                                    fmt(res) + " > " + fmt(tol));
    return axis_path_integral(phi, path, 1.0);
}

ComplexField2D antiderivative(const ComplexField2D& phi, const ComplexField2D& f,
                              const PathBase2D& path, double c2, double tol) {
    double pre = vekua_successor_residual(phi, f);
    if (pre > tol)
        throw NotAV1Solution("2d antiderivative: successor residual " + fmt(pre) + " > " +
                             fmt(tol));
    // For successor solutions, Phi = 2 f u_z with real u (coefficient of F);
    // the second coefficient has v_z = -i f^2 u_z = -i f Phi / 2.
    // The compatibility of both integrands is equivalent to the successor
    // residual checked above; the inner checks cannot see the upstream scale.
    const double inner = std::numeric_limits<double>::infinity();
    ComplexField2D inv2f = scale(0.5, reciprocal(f));
    ComplexField2D u = potential_from_dz(mul(inv2f, phi), path, inner);
    PathBase2D path2 = path;
    path2.constant = c2;
    ComplexField2D v = potential_from_dz(scale(-0.5 * I, mul(f, phi)), path2, inner);
    ComplexField2D out(phi.grid());
    for (std::size_t n = 0; n < phi.node_count(); ++n)
        out.at(n) = f.at(n) * u.at(n) + I / f.at(n) * v.at(n);
    return out;
}

ComplexField2D conjugate_imag_part(const ComplexField2D& w1, const ComplexField2D& f,
                                   const PathBase2D& path, double tol) {
    ComplexField2D q = mul(laplacian(f), reciprocal(f));
    double pre = schrodinger_residual(w1, q);
    if (pre > tol)
        throw NotASchrodingerSolution("conjugate_imag_part: W1 Schrodinger residual " +
                                      fmt(pre) + " > " + fmt(tol));
    ComplexField2D f2(f.grid());
    for (std::size_t n = 0; n < f.node_count(); ++n) f2.at(n) = f.at(n) * f.at(n);
    // compatibility == div(f^2 grad(W1/f)) = 0 == the checked precondition
    ComplexField2D arg = scale(I, mul(f2, d_zbar(mul(reciprocal(f), w1))));
    return mul(reciprocal(f),
               potential_from_dzbar(arg, path, std::numeric_limits<double>::infinity()));
}

ComplexField2D conjugate_real_part(const ComplexField2D& w2, const ComplexField2D& f,
                                   const PathBase2D& path, double tol) {
    ComplexField2D q = mul(laplacian(f), reciprocal(f));
    ComplexField2D r = associated_potential(f, q);
    double pre = schrodinger_residual(w2, r);
    if (pre > tol)
        throw NotASchrodingerSolution("conjugate_real_part: W2 associated residual " +
                                      fmt(pre) + " > " + fmt(tol));
    ComplexField2D invf2(f.grid());
    for (std::size_t n = 0; n < f.node_count(); ++n)
        invf2.at(n) = 1.0 / (f.at(n) * f.at(n));
    // compatibility == div(f^-2 grad(f W2)) = 0 == the checked precondition
    ComplexField2D arg = scale(I, mul(invf2, d_zbar(mul(f, w2))));
    return scale(-1.0, mul(f, potential_from_dzbar(
                               arg, path, std::numeric_limits<double>::infinity())));
}

double schrodinger_residual(const ComplexField2D& u, const ComplexField2D& q, int exclude) {
    ComplexField2D lap = laplacian(u);
    ComplexField2D qu = mul(q, u);
    double scale = interior_rms(qu, exclude);
    for (int k = 0; k < 2; ++k)
        scale += interior_rms(partial(partial(u, k), k), exclude);
    return rel_of_2d(interior_rms(sub(qu, lap), exclude),
                     {scale, noise_floor_2d(u, 2, exclude)});
}

ComplexField2D associated_potential(const ComplexField2D& f, const ComplexField2D& q) {
    ComplexField2D fx = partial(f, 0), fy = partial(f, 1);
    ComplexField2D out(f.grid());
    for (std::size_t n = 0; n < f.node_count(); ++n) {
        const Cplx g2 = (fx.at(n) * fx.at(n) + fy.at(n) * fy.at(n)) / (f.at(n) * f.at(n));
        out.at(n) = 2.0 * g2 - q.at(n);
    }
    return out;
}

GeneratingPair adjoint_pair(const GeneratingPair& pair) {
    ComplexField2D fs(pair.F.grid()), gs(pair.F.grid());
    for (std::size_t n = 0; n < pair.F.node_count(); ++n) {
        const Cplx f = pair.F.at(n), g = pair.G.at(n);
        const Cplx den = f * std::conj(g) - std::conj(f) * g;
        fs.at(n) = -2.0 * std::conj(f) / den;
        gs.at(n) = 2.0 * std::conj(g) / den;
    }
    return GeneratingPair(std::move(fs), std::move(gs));
}

StaircasePath StaircasePath::l_shaped(const Grid2D& g, std::array<int, 2> from,
                                      std::array<int, 2> to, bool x_first) {
    auto check = [&](std::array<int, 2> p) {
        if (p[0] < 0 || p[0] >= g.res()[0] || p[1] < 0 || p[1] >= g.res()[1])
            throw std::invalid_argument("staircase path node outside grid");
    };
    check(from);
    check(to);
    StaircasePath path;
    std::array<int, 2> cur = from;
    path.nodes.push_back(cur);
    auto walk = [&](int axis) {
        const int step = to[axis] > cur[axis] ? 1 : -1;
        while (cur[axis] != to[axis]) {
            cur[axis] += step;
            path.nodes.push_back(cur);
        }
    };
    if (x_first) {
        walk(0);
        walk(1);
    } else {
        walk(1);
        walk(0);
    }
    return path;
}

Cplx pair_integral(const ComplexField2D& u, const GeneratingPair& pair,
                   const StaircasePath& path) {
    if (path.nodes.empty()) throw std::invalid_argument("empty path");
    GeneratingPair adj = adjoint_pair(pair);
    const Grid2D& g = u.grid();
    Cplx int_gs{}, int_fs{};
    for (std::size_t s = 1; s < path.nodes.size(); ++s) {
        const auto a = path.nodes[s - 1], b = path.nodes[s];
        const Cplx za = g.z_at(a[0], a[1]), zb = g.z_at(b[0], b[1]);
        const Cplx dz = zb - za;
        const Cplx ga = adj.G.at(a[0], a[1]) * u.at(a[0], a[1]);
        const Cplx gb = adj.G.at(b[0], b[1]) * u.at(b[0], b[1]);
        const Cplx fa = adj.F.at(a[0], a[1]) * u.at(a[0], a[1]);
        const Cplx fb = adj.F.at(b[0], b[1]) * u.at(b[0], b[1]);
        int_gs += 0.5 * (ga + gb) * dz;
        int_fs += 0.5 * (fa + fb) * dz;
    }
    const auto e = path.nodes.back();
    return pair.F.at(e[0], e[1]) * int_gs.real() + pair.G.at(e[0], e[1]) * int_fs.real();
}

} // namespace vekua::plane
