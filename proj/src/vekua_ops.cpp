#include "vekua/vekua_ops.hpp"

#include <cmath>
#include <sstream>

#include "vekua/errors.hpp"

namespace vekua {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// All four operators share the shape  dirac(W) + sign * mult(W)  where the
// multiplier term is built from Df/f on one side, with or without C_H.
struct OpParts {
    BiquaternionField dirac;
    BiquaternionField mult; // already carries the operator's sign
};

enum class DiracSide { Left, Right };
enum class MultSide { Left, Right };

OpParts op_parts(const BiquaternionField& w, const FactorizingFunction& fac, DiracSide ds,
                 bool conj_w, MultSide ms, double sign) {
    const VectorField& dff = fac.df_over_f();
    OpParts parts{ds == DiracSide::Left ? dirac_left(w) : dirac_right(w),
                  BiquaternionField(w.domain())};
    for (std::size_t n = 0; n < w.node_count(); ++n) {
        Biquaternion v = Biquaternion::vector(dff.at(n, 0), dff.at(n, 1), dff.at(n, 2));
        Biquaternion x = biquat_at(w, n);
        if (conj_w) x = quat_conj(x);
        set_biquat(parts.mult, n, sign * (ms == MultSide::Left ? v * x : x * v));
    }
    return parts;
}

BiquaternionField assemble(const OpParts& p) { return add(p.dirac, p.mult); }

double parts_residual(const BiquaternionField& w, const OpParts& p, int exclude) {
    // Scale by the raw derivative magnitude of w, not by ||dirac(w)||: the
    // Dirac part itself vanishes on solutions of the f == 1 equations.
    double scale = interior_rms(p.mult, exclude);
    for (int k = 0; k < 3; ++k) scale += interior_rms(partial(w, k), exclude);
    return rel_of(interior_rms(assemble(p), exclude),
                  {scale, noise_floor(w, 1, exclude)});
}

} // namespace

void FactorizingFunction::build(double eps_f) {
    eps_f_ = eps_f;
    double mn = std::abs(f_.at(0));
    for (std::size_t n = 0; n < f_.node_count(); ++n) mn = std::min(mn, std::abs(f_.at(n)));
    if (mn < eps_f)
        throw NonvanishingViolation("factorizing function has min |f| = " + fmt(mn) +
                                    " below eps_f = " + fmt(eps_f));
    inv_f_ = reciprocal(f_);
    VectorField g = grad(f_);
    for (int c = 0; c < 3; ++c)
        for (std::size_t n = 0; n < f_.node_count(); ++n)
            df_over_f_.at(n, c) = g.at(n, c) * inv_f_.at(n);
}

FactorizingFunction::FactorizingFunction(ScalarField f, double eps_f)
    : f_(std::move(f)), inv_f_(f_.domain()), df_over_f_(f_.domain()), q_(f_.domain()),
      eps_f_(eps_f) {
    build(eps_f);
    ScalarField lap = laplacian(f_);
    for (std::size_t n = 0; n < f_.node_count(); ++n) q_.at(n) = lap.at(n) * inv_f_.at(n);
}

FactorizingFunction::FactorizingFunction(ScalarField f, ScalarField q, double eps_f,
                                         double q_tol)
    : f_(std::move(f)), inv_f_(f_.domain()), df_over_f_(f_.domain()), q_(std::move(q)),
      eps_f_(eps_f) {
    if (!(q_.domain() == f_.domain()))
        throw std::invalid_argument("factorizing function: q on a different grid");
    build(eps_f);
    // q f must reproduce the discrete laplacian of f at stencil accuracy;
    // scale by the per-axis second derivatives (the laplacian itself nearly
    // cancels when f is harmonic)
    ScalarField lap = laplacian(f_);
    ScalarField qf = multiply(q_, f_);
    double scale = interior_rms(qf);
    for (int k = 0; k < 3; ++k) scale += interior_rms(partial(partial(f_, k), k));
    double res = rel_of(interior_rms(sub(qf, lap)), {scale, noise_floor(f_, 2)});
    if (res > q_tol)
        throw std::invalid_argument("factorizing function: supplied q disagrees with lap f / f"
                                    " (relative residual " + fmt(res) + ")");
}

GeneratingQuartet GeneratingQuartet::from(const FactorizingFunction& fac) {
    const GridDomain& dom = fac.domain();
    BiquaternionField f0 = to_biquat(fac.f());
    GeneratingQuartet q{{f0, BiquaternionField(dom), BiquaternionField(dom),
                         BiquaternionField(dom)}};
    for (int k = 1; k <= 3; ++k)
        for (std::size_t n = 0; n < dom.node_count(); ++n)
            q.F[k].at(n, k) = fac.inv_f().at(n);
    return q;
}

BiquaternionField vekua_main(const BiquaternionField& w, const FactorizingFunction& fac) {
    return assemble(op_parts(w, fac, DiracSide::Left, true, MultSide::Left, -1.0));
}
BiquaternionField vekua_main_conj(const BiquaternionField& w, const FactorizingFunction& fac) {
    return assemble(op_parts(w, fac, DiracSide::Right, true, MultSide::Right, -1.0));
}
BiquaternionField vekua_successor(const BiquaternionField& w, const FactorizingFunction& fac) {
    return assemble(op_parts(w, fac, DiracSide::Right, false, MultSide::Left, 1.0));
}
BiquaternionField vekua_successor_conj(const BiquaternionField& w,
                                       const FactorizingFunction& fac) {
    return assemble(op_parts(w, fac, DiracSide::Left, false, MultSide::Right, 1.0));
}

double vekua_main_residual(const BiquaternionField& w, const FactorizingFunction& fac,
                           int exclude) {
    return parts_residual(w, op_parts(w, fac, DiracSide::Left, true, MultSide::Left, -1.0),
                          exclude);
}
double vekua_main_conj_residual(const BiquaternionField& w, const FactorizingFunction& fac,
                                int exclude) {
    return parts_residual(w, op_parts(w, fac, DiracSide::Right, true, MultSide::Right, -1.0),
                          exclude);
}
double vekua_successor_residual(const BiquaternionField& w, const FactorizingFunction& fac,
                                int exclude) {
    return parts_residual(w, op_parts(w, fac, DiracSide::Right, false, MultSide::Left, 1.0),
                          exclude);
}
double vekua_successor_conj_residual(const BiquaternionField& w,
                                     const FactorizingFunction& fac, int exclude) {
    return parts_residual(w, op_parts(w, fac, DiracSide::Left, false, MultSide::Right, 1.0),
                          exclude);
}

VectorField bers_derivative(const BiquaternionField& w, const FactorizingFunction& fac,
                            const BersOptions& opts) {
    double pre = vekua_main_residual(w, fac, opts.exclude);
    if (pre > opts.solution_tol)
        throw NotAVekuaSolution("bers_derivative: input has main-equation residual " +
                                fmt(pre) + " > " + fmt(opts.solution_tol));
    BiquaternionField d = vekua_main_conj(w, fac);
    ScalarField s = scalar_part(d);
    VectorField v = vector_part(d);
    double purity = rel_of(interior_rms(s, opts.exclude),
                           {interior_rms(v, opts.exclude), noise_floor(w, 1, opts.exclude)});
    if (purity > opts.purity_tol)
        throw ScalarPartNonzero("bers_derivative: scalar part residual " + fmt(purity) +
                                " > " + fmt(opts.purity_tol));
    return v;
}

BiquaternionField bers_derivative_quartet_form(const BiquaternionField& w,
                                               const FactorizingFunction& fac) {
    GeneratingQuartet quartet = GeneratingQuartet::from(fac);
    std::array<ScalarField, 4> phi = phi_coords(w, fac);
    BiquaternionField out(w.domain());
    for (int a = 0; a < 4; ++a) {
        BiquaternionField dphi = dirac_left(phi[a]);
        for (std::size_t n = 0; n < w.node_count(); ++n)
            set_biquat(out, n, biquat_at(out, n) +
                                   biquat_at(quartet.F[a], n) * biquat_at(dphi, n));
    }
    return out;
}

std::array<ScalarField, 4> phi_coords(const BiquaternionField& w,
                                      const FactorizingFunction& fac) {
    const GridDomain& dom = w.domain();
    std::array<ScalarField, 4> phi{ScalarField(dom), ScalarField(dom), ScalarField(dom),
                                   ScalarField(dom)};
    for (std::size_t n = 0; n < w.node_count(); ++n) {
        phi[0].at(n) = w.at(n, 0) * fac.inv_f().at(n);
        for (int k = 1; k <= 3; ++k) phi[k].at(n) = fac.f().at(n) * w.at(n, k);
    }
    return phi;
}

BiquaternionField from_phi_coords(const std::array<ScalarField, 4>& phi,
                                  const FactorizingFunction& fac) {
    const GridDomain& dom = fac.domain();
    BiquaternionField w(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        w.at(n, 0) = phi[0].at(n) * fac.f().at(n);
        for (int k = 1; k <= 3; ++k) w.at(n, k) = phi[k].at(n) * fac.inv_f().at(n);
    }
    return w;
}

double schrodinger_residual(const ScalarField& u, const ScalarField& q, int exclude) {
    ScalarField lap = laplacian(u);
    ScalarField qu = multiply(q, u);
    // Scale by the per-axis second derivatives: the assembled laplacian nearly
    // cancels exactly when u is close to a q = 0 solution.
    double scale = interior_rms(qu, exclude);
    for (int k = 0; k < 3; ++k) scale += interior_rms(partial(partial(u, k), k), exclude);
    return rel_of(interior_rms(sub(qu, lap), exclude), {scale, noise_floor(u, 2, exclude)});
}

} // namespace vekua
