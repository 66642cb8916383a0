#include "vekua/symmetric_solutions.hpp"

#include "vekua/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace vekua {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool interval_contains(double lo, double hi, double x) { return lo <= x && x <= hi; }

// Pure-vector quaternion product helpers on vector fields.
ScalarField dot(const VectorField& a, const VectorField& b) {
    ScalarField out(a.domain());
    for (std::size_t n = 0; n < a.node_count(); ++n)
        out.at(n) = a.at(n, 0) * b.at(n, 0) + a.at(n, 1) * b.at(n, 1) + a.at(n, 2) * b.at(n, 2);
    return out;
}

ScalarField magnitude_product(const VectorField& a, const VectorField& b) {
    ScalarField out(a.domain());
    for (std::size_t n = 0; n < a.node_count(); ++n) {
        double ma = std::sqrt(std::norm(a.at(n, 0)) + std::norm(a.at(n, 1)) +
                              std::norm(a.at(n, 2)));
        double mb = std::sqrt(std::norm(b.at(n, 0)) + std::norm(b.at(n, 1)) +
                              std::norm(b.at(n, 2)));
        out.at(n) = ma * mb;
    }
    return out;
}

VectorField cross(const VectorField& a, const VectorField& b) {
    VectorField out(a.domain());
    for (std::size_t n = 0; n < a.node_count(); ++n) {
        out.at(n, 0) = a.at(n, 1) * b.at(n, 2) - a.at(n, 2) * b.at(n, 1);
        out.at(n, 1) = a.at(n, 2) * b.at(n, 0) - a.at(n, 0) * b.at(n, 2);
        out.at(n, 2) = a.at(n, 0) * b.at(n, 1) - a.at(n, 1) * b.at(n, 0);
    }
    return out;
}

} // namespace

HarmonicFunctionSpec HarmonicFunctionSpec::log_r_cyl() { return {Kind::LogRCyl}; }
HarmonicFunctionSpec HarmonicFunctionSpec::theta_cyl() { return {Kind::ThetaCyl}; }
HarmonicFunctionSpec HarmonicFunctionSpec::z_coord() { return {Kind::ZCoord}; }
HarmonicFunctionSpec HarmonicFunctionSpec::inv_r_sph() { return {Kind::InvRSph}; }
HarmonicFunctionSpec HarmonicFunctionSpec::linear(double a, double b, double c) {
    HarmonicFunctionSpec s(Kind::Linear);
    s.coeff_ = {a, b, c};
    return s;
}
HarmonicFunctionSpec HarmonicFunctionSpec::custom(ScalarField rho) {
    HarmonicFunctionSpec s(Kind::Custom);
    s.custom_ = std::move(rho);
    return s;
}

void HarmonicFunctionSpec::check_regular(const GridDomain& dom) const {
    const auto& o = dom.origin();
    const auto& e = dom.extent();
    const bool axis_in_xy = interval_contains(o[0], o[0] + e[0], 0.0) &&
                            interval_contains(o[1], o[1] + e[1], 0.0);
    switch (kind_) {
    case Kind::LogRCyl:
        if (axis_in_xy) throw NotHarmonic("log r is singular on the axis r = 0 inside the box");
        break;
    case Kind::ThetaCyl:
        if (axis_in_xy) throw NotHarmonic("theta is singular on the axis r = 0 inside the box");
        // the atan2 branch cut x < 0, y = 0 must not cross the box
        if (interval_contains(o[1], o[1] + e[1], 0.0) && o[0] < 0.0)
            throw NotHarmonic("theta branch cut crosses the box");
        break;
    case Kind::InvRSph:
        if (axis_in_xy && interval_contains(o[2], o[2] + e[2], 0.0))
            throw NotHarmonic("1/r is singular at the origin inside the box");
        break;
    default: break;
    }
}

ScalarField HarmonicFunctionSpec::value(const GridDomain& dom) const {
    check_regular(dom);
    switch (kind_) {
    case Kind::LogRCyl:
        return make_scalar_field(dom, [](double x, double y, double) {
            return Cplx(0.5 * std::log(x * x + y * y), 0.0);
        });
    case Kind::ThetaCyl:
        return make_scalar_field(
            dom, [](double x, double y, double) { return Cplx(std::atan2(y, x), 0.0); });
    case Kind::ZCoord:
        return make_scalar_field(dom, [](double, double, double z) { return Cplx(z, 0.0); });
    case Kind::InvRSph:
        return make_scalar_field(dom, [](double x, double y, double z) {
            return Cplx(1.0 / std::sqrt(x * x + y * y + z * z), 0.0);
        });
    case Kind::Linear: {
        auto c = coeff_;
        return make_scalar_field(dom, [c](double x, double y, double z) {
            return Cplx(c[0] * x + c[1] * y + c[2] * z, 0.0);
        });
    }
    case Kind::Custom:
    default:
        if (!(custom_->domain() == dom))
            throw std::invalid_argument("custom harmonic field lives on a different grid");
        return *custom_;
    }
}

VectorField HarmonicFunctionSpec::gradient(const GridDomain& dom) const {
    check_regular(dom);
    switch (kind_) {
    case Kind::LogRCyl:
        return make_vector_field(dom, [](double x, double y, double) {
            const double r2 = x * x + y * y;
            return std::array<Cplx, 3>{Cplx(x / r2, 0), Cplx(y / r2, 0), Cplx(0, 0)};
        });
    case Kind::ThetaCyl:
        return make_vector_field(dom, [](double x, double y, double) {
            const double r2 = x * x + y * y;
            return std::array<Cplx, 3>{Cplx(-y / r2, 0), Cplx(x / r2, 0), Cplx(0, 0)};
        });
    case Kind::ZCoord:
        return make_vector_field(dom, [](double, double, double) {
            return std::array<Cplx, 3>{Cplx(0, 0), Cplx(0, 0), Cplx(1, 0)};
        });
    case Kind::InvRSph:
        return make_vector_field(dom, [](double x, double y, double z) {
            const double r = std::sqrt(x * x + y * y + z * z);
            const double r3 = r * r * r;
            return std::array<Cplx, 3>{Cplx(-x / r3, 0), Cplx(-y / r3, 0), Cplx(-z / r3, 0)};
        });
    case Kind::Linear: {
        auto c = coeff_;
        return make_vector_field(dom, [c](double, double, double) {
            return std::array<Cplx, 3>{Cplx(c[0], 0), Cplx(c[1], 0), Cplx(c[2], 0)};
        });
    }
    case Kind::Custom:
    default:
        return grad(value(dom));
    }
}

double HarmonicFunctionSpec::harmonic_residual(const GridDomain& dom, int exclude) const {
    ScalarField v = value(dom);
    ScalarField lap = laplacian(v);
    double scale = 0.0;
    for (int k = 0; k < 3; ++k) scale += interior_rms(partial(partial(v, k), k), exclude);
    return rel_of(interior_rms(lap, exclude), {scale, noise_floor(v, 2, exclude)});
}

SolutionPair parallel_solution(const FactorizingFunction& fac, const HarmonicFunctionSpec& rho,
                               double tol) {
    const GridDomain& dom = fac.domain();
    double hres = rho.harmonic_residual(dom);
    if (hres > tol)
        throw NotHarmonic("parallel_solution: rho has laplacian residual " + fmt(hres));
    VectorField grho = rho.gradient(dom);
    VectorField gf = grad(fac.f());
    double cres = rel_of(interior_rms(cross(gf, grho)),
                         {interior_rms(magnitude_product(gf, grho)),
                          noise_floor(grho, 1) * interior_rms(fac.f())});
    if (cres > tol)
        throw NotParallel("parallel_solution: |grad f x grad rho| residual " + fmt(cres) +
                          " > " + fmt(tol));
    return {multiply(fac.inv_f(), grho), multiply(fac.f(), grho)};
}

SolutionPair orthogonal_solution(const FactorizingFunction& fac,
                                 const HarmonicFunctionSpec& rho, double tol) {
    const GridDomain& dom = fac.domain();
    double hres = rho.harmonic_residual(dom);
    if (hres > tol)
        throw NotHarmonic("orthogonal_solution: rho has laplacian residual " + fmt(hres));
    VectorField grho = rho.gradient(dom);
    VectorField gf = grad(fac.f());
    double dres = rel_of(interior_rms(dot(gf, grho)),
                         {interior_rms(magnitude_product(gf, grho)),
                          noise_floor(grho, 1) * interior_rms(fac.f())});
    if (dres > tol)
        throw NotOrthogonal("orthogonal_solution: <grad f, grad rho> residual " + fmt(dres) +
                            " > " + fmt(tol));
    return {multiply(fac.f(), grho), multiply(fac.inv_f(), grho)};
}

namespace {

// (D +/- M^{Df/f}) w for purely vectorial w, with the relative residual
// convention shared across the library.
double dpm_residual(const VectorField& w, const FactorizingFunction& fac, double sign,
                    int exclude) {
    BiquaternionField dw = dirac_left(to_biquat(w));
    const VectorField& dff = fac.df_over_f();
    BiquaternionField mult(w.domain());
    for (std::size_t n = 0; n < w.node_count(); ++n) {
        Biquaternion wv = Biquaternion::vector(w.at(n, 0), w.at(n, 1), w.at(n, 2));
        Biquaternion v = Biquaternion::vector(dff.at(n, 0), dff.at(n, 1), dff.at(n, 2));
        set_biquat(mult, n, sign * (wv * v));
    }
    double scale = interior_rms(mult, exclude);
    for (int k = 0; k < 3; ++k) scale += interior_rms(partial(w, k), exclude);
    return rel_of(interior_rms(add(dw, mult), exclude),
                  {scale, noise_floor(w, 1, exclude)});
}

} // namespace

double dplus_residual(const VectorField& w, const FactorizingFunction& fac, int exclude) {
    return dpm_residual(w, fac, 1.0, exclude);
}
double dminus_residual(const VectorField& w, const FactorizingFunction& fac, int exclude) {
    return dpm_residual(w, fac, -1.0, exclude);
}

GeneratingTriplet GeneratingTriplet::cylindrical(const FactorizingFunction& fac) {
    const GridDomain& dom = fac.domain();
    const auto& o = dom.origin();
    const auto& e = dom.extent();
    if (interval_contains(o[0], o[0] + e[0], 0.0) && interval_contains(o[1], o[1] + e[1], 0.0))
        throw AxisInDomain("cylindrical triplet requires a box excluding the axis r = 0");

    VectorField f1(dom), f2(dom), f3(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        auto p = dom.point(n);
        const double r2 = p[0] * p[0] + p[1] * p[1];
        const Cplx f = fac.f().at(n), invf = fac.inv_f().at(n);
        f1.at(n, 0) = invf * (p[0] / r2);
        f1.at(n, 1) = invf * (p[1] / r2);
        f2.at(n, 0) = f * (-p[1] / r2);
        f2.at(n, 1) = f * (p[0] / r2);
        f3.at(n, 2) = f;
    }
    return GeneratingTriplet({std::move(f1), std::move(f2), std::move(f3)});
}

ScalarField GeneratingTriplet::independence_determinant() const {
    const GridDomain& dom = F_[0].domain();
    ScalarField det(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        // det of columns F1 F2 F3
        const Cplx a = F_[0].at(n, 0), b = F_[1].at(n, 0), c = F_[2].at(n, 0);
        const Cplx d = F_[0].at(n, 1), e = F_[1].at(n, 1), f = F_[2].at(n, 1);
        const Cplx g = F_[0].at(n, 2), h = F_[1].at(n, 2), i = F_[2].at(n, 2);
        det.at(n) = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    }
    return det;
}

std::array<ScalarField, 3> GeneratingTriplet::decompose(const VectorField& w) const {
    const GridDomain& dom = F_[0].domain();
    std::array<ScalarField, 3> phi{ScalarField(dom), ScalarField(dom), ScalarField(dom)};
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        Cplx m[3][3], rhs[3];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] = F_[c].at(n, r);
            rhs[r] = w.at(n, r);
        }
        // Cramer
        auto det3 = [](const Cplx a[3][3]) {
            return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        };
        const Cplx den = det3(m);
        for (int c = 0; c < 3; ++c) {
            Cplx mc[3][3];
            for (int r = 0; r < 3; ++r)
                for (int cc = 0; cc < 3; ++cc) mc[r][cc] = (cc == c) ? rhs[r] : m[r][cc];
            phi[c].at(n) = det3(mc) / den;
        }
    }
    return phi;
}

VectorField GeneratingTriplet::recompose(const std::array<ScalarField, 3>& phi) const {
    const GridDomain& dom = F_[0].domain();
    VectorField w(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n)
        for (int r = 0; r < 3; ++r)
            w.at(n, r) = phi[0].at(n) * F_[0].at(n, r) + phi[1].at(n) * F_[1].at(n, r) +
                         phi[2].at(n) * F_[2].at(n, r);
    return w;
}

double triplet_equation_residual(const std::array<ScalarField, 3>& phi,
                                 const GeneratingTriplet& t, int exclude) {
    const GridDomain& dom = phi[0].domain();
    BiquaternionField sum(dom);
    double scale = 0.0;
    for (int k = 0; k < 3; ++k) {
        VectorField dphi = grad(phi[k]);
        BiquaternionField term(dom);
        for (std::size_t n = 0; n < dom.node_count(); ++n) {
            Biquaternion dq = Biquaternion::vector(dphi.at(n, 0), dphi.at(n, 1), dphi.at(n, 2));
            Biquaternion fk = Biquaternion::vector(t.element(k + 1).at(n, 0),
                                                   t.element(k + 1).at(n, 1),
                                                   t.element(k + 1).at(n, 2));
            set_biquat(term, n, dq * fk);
        }
        scale += interior_rms(term, exclude);
        sum = add(sum, term);
    }
    return rel_of(interior_rms(sum, exclude), {scale});
}

ScalarField schrodinger_from_symmetry(const FactorizingFunction& fac,
                                      const HarmonicFunctionSpec& rho,
                                      const PotentialPath& path, double tol) {
    const GridDomain& dom = fac.domain();
    double hres = rho.harmonic_residual(dom);
    if (hres > tol)
        throw NotHarmonic("schrodinger_from_symmetry: rho has laplacian residual " + fmt(hres));
    VectorField grho = rho.gradient(dom);
    VectorField gf = grad(fac.f());
    double cres = rel_of(interior_rms(cross(gf, grho)),
                         {interior_rms(magnitude_product(gf, grho)),
                          noise_floor(grho, 1) * interior_rms(fac.f())});
    if (cres > tol)
        throw NotParallel("schrodinger_from_symmetry: grad f not parallel to grad rho (" +
                          fmt(cres) + ")");
    ScalarField inv_f2(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n)
        inv_f2.at(n) = fac.inv_f().at(n) * fac.inv_f().at(n);
    // rot(grad rho / f^2) vanishes whenever the parallelism check passes
    ScalarField a = conservative_potential(multiply(inv_f2, grho), path,
                                           std::numeric_limits<double>::infinity());
    return multiply(fac.f(), a);
}

} // namespace vekua
