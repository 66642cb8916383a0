#include "vekua/antiderivative.hpp"

#include "vekua/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "parallel.hpp"

namespace vekua {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_base(const GridDomain& dom, const std::array<int, 3>& base) {
    if (!dom.contains_node(base))
        throw std::invalid_argument("potential path base is not a grid node of this domain");
}

// Cumulative trapezoid along `axis` through a fixed line, anchored (zero) at
// index `anchor`.
void cum_trapezoid(const GridDomain& dom, const ScalarField& comp, int axis,
                   std::array<int, 3> fixed, int anchor, std::vector<Cplx>& out) {
    const int m = dom.res()[axis];
    const double h = dom.spacing(axis);
    out.assign(m, Cplx{});
    auto value = [&](int t) {
        std::array<int, 3> ijk = fixed;
        ijk[axis] = t;
        return comp.at(dom.index(ijk[0], ijk[1], ijk[2]));
    };
    for (int t = 1; t < m; ++t)
        out[t] = out[t - 1] + 0.5 * h * (value(t) + value(t - 1));
    const Cplx off = out[anchor];
    for (int t = 0; t < m; ++t) out[t] -= off;
}

} // namespace

HarmonicGauge HarmonicGauge::from_field(ScalarField h, double tol, int exclude) {
    ScalarField lap = laplacian(h);
    // scale: per-axis second derivatives
    double scale = 0.0;
    for (int k = 0; k < 3; ++k) scale += interior_rms(partial(partial(h, k), k), exclude);
    double res = rel_of(interior_rms(lap, exclude), {scale, noise_floor(h, 2, exclude)});
    if (res > tol)
        throw NotHarmonic("gauge field has laplacian residual " + fmt(res) + " > " + fmt(tol));
    HarmonicGauge g;
    g.h_ = std::move(h);
    return g;
}

double conservativity_residual(const VectorField& psi, int exclude) {
    VectorField r = rot(psi);
    double scale = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        VectorField d = partial(psi, axis);
        for (int c = 0; c < 3; ++c)
            if (c != axis) scale += interior_rms(component(d, c), exclude);
    }
    return rel_of(interior_rms(r, exclude), {scale, noise_floor(psi, 1, exclude)});
}

ScalarField conservative_potential(const VectorField& psi, const PotentialPath& path,
                                   double rot_tol) {
    const GridDomain& dom = psi.domain();
    check_base(dom, path.base);
    double res = conservativity_residual(psi);
    if (res > rot_tol)
        throw NotConservative("potential input has rot residual " + fmt(res) + " > " +
                              fmt(rot_tol));

    const std::array<int, 3> axes = path.order == PotentialPath::AxisOrder::XYZ
                                        ? std::array<int, 3>{0, 1, 2}
                                        : std::array<int, 3>{2, 1, 0};
    const auto& n = dom.res();
    ScalarField out(dom);
    for (std::size_t i = 0; i < out.node_count(); ++i) out.at(i) = path.constant;

    // Stage 0: along axes[0], other coordinates at base.
    {
        const int a = axes[0];
        std::vector<Cplx> cum;
        cum_trapezoid(dom, component(psi, a), a, path.base, path.base[a], cum);
        for (std::size_t i = 0; i < out.node_count(); ++i)
            out.at(i) += cum[dom.unpack(i)[a]];
    }
    // Stage 1: along axes[1]; axes[0] at target, axes[2] at base.
    {
        const int a = axes[1], done = axes[0], pending = axes[2];
        std::vector<Cplx> cum;
        ScalarField comp = component(psi, a);
        for (int t = 0; t < n[done]; ++t) {
            std::array<int, 3> fixed = path.base;
            fixed[done] = t;
            cum_trapezoid(dom, comp, a, fixed, path.base[a], cum);
            // add to every node with coordinate `t` along `done`
            for (int u = 0; u < n[a]; ++u)
                for (int v = 0; v < n[pending]; ++v) {
                    std::array<int, 3> ijk;
                    ijk[done] = t;
                    ijk[a] = u;
                    ijk[pending] = v;
                    out.at(dom.index(ijk[0], ijk[1], ijk[2])) += cum[u];
                }
        }
    }
    // Stage 2: along axes[2]; both other coordinates at target.
    {
        const int a = axes[2], d0 = axes[0], d1 = axes[1];
        std::vector<Cplx> cum;
        ScalarField comp = component(psi, a);
        for (int t0 = 0; t0 < n[d0]; ++t0)
            for (int t1 = 0; t1 < n[d1]; ++t1) {
                std::array<int, 3> fixed;
                fixed[d0] = t0;
                fixed[d1] = t1;
                fixed[a] = 0;
                cum_trapezoid(dom, comp, a, fixed, path.base[a], cum);
                for (int u = 0; u < n[a]; ++u) {
                    std::array<int, 3> ijk = fixed;
                    ijk[a] = u;
                    out.at(dom.index(ijk[0], ijk[1], ijk[2])) += cum[u];
                }
            }
    }
    return out;
}

VectorField newton_potential(const VectorField& q) {
    const GridDomain& dom = q.domain();
    const auto& n = dom.res();
    const double h0 = dom.spacing(0), h1 = dom.spacing(1), h2 = dom.spacing(2);
    const double vol = h0 * h1 * h2;
    const double w = vol / (4.0 * std::numbers::pi);
    const double r_eq = std::cbrt(3.0 * vol / (4.0 * std::numbers::pi));
    const double self_term = 0.5 * r_eq * r_eq;
    const std::size_t count = dom.node_count();

    VectorField out(dom);
    const Cplx* src0 = q.component(0);
    const Cplx* src1 = q.component(1);
    const Cplx* src2 = q.component(2);

    detail::parallel_for(count, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
            const auto tijk = dom.unpack(t);
            Cplx acc0{}, acc1{}, acc2{};
            std::size_t s = 0;
            for (int k = 0; k < n[2]; ++k) {
                const double dz = (k - tijk[2]) * h2;
                for (int j = 0; j < n[1]; ++j) {
                    const double dy = (j - tijk[1]) * h1;
                    const double dyz = dy * dy + dz * dz;
                    for (int i = 0; i < n[0]; ++i, ++s) {
                        if (s == t) continue;
                        const double dx = (i - tijk[0]) * h0;
                        const double kern = w / std::sqrt(dx * dx + dyz);
                        acc0 += kern * src0[s];
                        acc1 += kern * src1[s];
                        acc2 += kern * src2[s];
                    }
                }
            }
            out.at(t, 0) = acc0 + self_term * src0[t];
            out.at(t, 1) = acc1 + self_term * src1[t];
            out.at(t, 2) = acc2 + self_term * src2[t];
        }
    });
    return out;
}

BiquaternionField bers_antiderivative(const VectorField& w, const FactorizingFunction& fac,
                                      const HarmonicGauge& gauge, const PotentialPath& path,
                                      double tol) {
    double pre = vekua_successor_conj_residual(to_biquat(w), fac);
    if (pre > tol)
        throw NotAV1Solution("antiderivative: input has conjugate-successor residual " +
                             fmt(pre) + " > " + fmt(tol));

    VectorField w_over_f = multiply(fac.inv_f(), w);
    // rot(w/f) = 0 is equivalent to the checked precondition; skip the inner
    // re-check, which has no access to the upstream field scale.
    ScalarField a = conservative_potential(w_over_f, path,
                                           std::numeric_limits<double>::infinity());
    VectorField rb = rot(newton_potential(multiply(fac.f(), w)));

    const GridDomain& dom = fac.domain();
    ScalarField w0(dom);
    VectorField wv(dom);
    for (std::size_t i = 0; i < dom.node_count(); ++i) {
        w0.at(i) = 0.5 * fac.f().at(i) * a.at(i);
        for (int c = 0; c < 3; ++c) wv.at(i, c) = -0.5 * fac.inv_f().at(i) * rb.at(i, c);
    }
    if (!gauge.is_zero()) {
        VectorField gh = grad(gauge.field());
        for (std::size_t i = 0; i < dom.node_count(); ++i)
            for (int c = 0; c < 3; ++c)
                wv.at(i, c) += 0.5 * fac.inv_f().at(i) * gh.at(i, c);
    }
    return combine(w0, wv);
}

VectorField conjugate_vector_part(const ScalarField& w0, const FactorizingFunction& fac,
                                  const HarmonicGauge& gauge, double tol) {
    double pre = schrodinger_residual(w0, fac.q());
    if (pre > tol)
        throw NotASchrodingerSolution("conjugate_vector_part: W0 has Schrodinger residual " +
                                      fmt(pre) + " > " + fmt(tol));
    const GridDomain& dom = fac.domain();
    ScalarField f2(dom);
    for (std::size_t i = 0; i < dom.node_count(); ++i)
        f2.at(i) = fac.f().at(i) * fac.f().at(i);
    VectorField g = multiply(f2, grad(multiply(fac.inv_f(), w0)));
    VectorField rb = rot(newton_potential(g));
    if (!gauge.is_zero()) rb = add(rb, grad(gauge.field()));
    return scale(-1.0, multiply(fac.inv_f(), rb));
}

ScalarField conjugate_scalar_part(const VectorField& wvec, const FactorizingFunction& fac,
                                  const PotentialPath& path, double tol) {
    VectorField phi = multiply(fac.f(), wvec);
    double dres = div_residual(phi);
    double rres = rot_f2_rot_residual(phi, fac);
    if (dres > tol || rres > tol)
        throw NotAPhiSolution("conjugate_scalar_part: Phi = f W has div residual " +
                              fmt(dres) + ", rot(f^-2 rot Phi) residual " + fmt(rres) +
                              " (tol " + fmt(tol) + ")");
    const GridDomain& dom = fac.domain();
    ScalarField inv_f2(dom);
    for (std::size_t i = 0; i < dom.node_count(); ++i)
        inv_f2.at(i) = fac.inv_f().at(i) * fac.inv_f().at(i);
    // conservativity of the integrand is exactly the checked rot(f^-2 rot Phi)
    // residual; skip the inner re-check
    VectorField arg = multiply(inv_f2, rot(phi));
    ScalarField a = conservative_potential(arg, path,
                                           std::numeric_limits<double>::infinity());
    return scale(-1.0, multiply(fac.f(), a));
}

double div_residual(const VectorField& phi, int exclude) {
    double scale = 0.0;
    for (int k = 0; k < 3; ++k)
        scale += interior_rms(component(partial(phi, k), k), exclude);
    return rel_of(interior_rms(div(phi), exclude), {scale, noise_floor(phi, 1, exclude)});
}

double rot_f2_rot_residual(const VectorField& phi, const FactorizingFunction& fac,
                           int exclude) {
    const GridDomain& dom = phi.domain();
    ScalarField inv_f2(dom);
    for (std::size_t i = 0; i < dom.node_count(); ++i)
        inv_f2.at(i) = fac.inv_f().at(i) * fac.inv_f().at(i);
    VectorField inner = multiply(inv_f2, rot(phi));
    return conservativity_residual(inner, exclude);
}

} // namespace vekua
