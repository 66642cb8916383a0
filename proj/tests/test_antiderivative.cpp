#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"
#include "vekua/antiderivative.hpp"
#include "vekua/errors.hpp"
#include "vekua/grid_calculus.hpp"
#include "vekua/scenario.hpp"

using namespace vekua;
using testutil::cyl_box;
using testutil::unit_box;

namespace {

FactorizingFunction radial_factorizer(const GridDomain& dom) {
    return FactorizingFunction(
        make_scalar_field(dom,
                          [](double x, double y, double) {
                              return Cplx(std::sqrt(x * x + y * y), 0);
                          }),
        make_scalar_field(dom, [](double x, double y, double) {
            return Cplx(1.0 / (x * x + y * y), 0);
        }));
}

FactorizingFunction unit_factorizer(const GridDomain& dom) {
    return FactorizingFunction(
        make_scalar_field(dom, [](double, double, double) { return Cplx(1, 0); }));
}

} // namespace

TEST_CASE("conservative potential: constant field integrates to x") {
    GridDomain dom = unit_box(9);
    VectorField psi = make_vector_field(dom, [](double, double, double) {
        return std::array<Cplx, 3>{Cplx(1, 0), Cplx(0, 0), Cplx(0, 0)};
    });
    ScalarField phi = conservative_potential(psi, {{0, 0, 0}, Cplx{}});
    ScalarField want = make_scalar_field(dom, [](double x, double, double) { return Cplx(x, 0); });
    CHECK(interior_rms(sub(phi, want), 0) <= 1e-12);
}

TEST_CASE("conservative potential: gradient round trip") {
    GridDomain dom = unit_box(13);
    VectorField psi = make_vector_field(dom, [](double x, double y, double z) {
        return std::array<Cplx, 3>{Cplx(y * z, 0), Cplx(x * z, 0), Cplx(x * y, 0)};
    });
    ScalarField phi = conservative_potential(psi, {{0, 0, 0}, Cplx{}});
    ScalarField want =
        make_scalar_field(dom, [](double x, double y, double z) { return Cplx(x * y * z, 0); });
    // x y z is cubic; trapezoid on each segment is exact on linear-per-axis
    // integrands here up to rounding of products
    CHECK(interior_rms(sub(phi, want), 0) <= 1e-12);
    CHECK(interior_rms(sub(grad(phi), psi), 0) <= 1e-11);
}

TEST_CASE("conservative potential: cylindrical closed form") {
    auto err = [](int n) {
        GridDomain dom = cyl_box(n);
        VectorField psi = make_vector_field(dom, [](double x, double y, double) {
            const double r2 = x * x + y * y;
            return std::array<Cplx, 3>{Cplx(x / (r2 * r2), 0), Cplx(y / (r2 * r2), 0),
                                       Cplx(0, 0)};
        });
        // grad(-1/(2 r^2)) = (x, y, 0)/r^4
        ScalarField phi = conservative_potential(psi, {{0, 0, 0}, Cplx{}});
        const double r2b = 1.0 + 1.0; // base node (1,1,0)
        ScalarField want = make_scalar_field(dom, [&](double x, double y, double) {
            return Cplx(-0.5 / (x * x + y * y) + 0.5 / r2b, 0);
        });
        return rel_of(interior_rms(sub(phi, want)), {interior_rms(want)});
    };
    const double h16 = 1.0 / 15;
    CHECK(err(16) <= 0.2 * h16 * h16);
    const double expected = std::pow(15.0 / 31.0, -2.0);
    CHECK(err(16) / err(32) >= 0.7 * expected);
    CHECK(err(16) / err(32) <= 1.3 * expected);
}

TEST_CASE("conservative potential: axis order changes the result at h^2 only") {
    GridDomain dom = unit_box(12);
    ScalarField u = make_scalar_field(dom, [](double x, double y, double z) {
        return Cplx(std::sin(x) * std::cos(y) + 0.3 * z * z * x, 0);
    });
    VectorField psi = grad(u);
    ScalarField a = conservative_potential(psi, {{0, 0, 0}, Cplx{}, PotentialPath::AxisOrder::XYZ});
    ScalarField b = conservative_potential(psi, {{0, 0, 0}, Cplx{}, PotentialPath::AxisOrder::ZYX});
    const double h = dom.spacing(0);
    CHECK(rel_of(interior_rms(sub(a, b)), {interior_rms(u)}) <= 1.0 * h * h);
}

TEST_CASE("conservative potential: rotational input is rejected") {
    GridDomain dom = unit_box(8);
    VectorField psi = make_vector_field(dom, [](double x, double y, double) {
        return std::array<Cplx, 3>{Cplx(-y, 0), Cplx(x, 0), Cplx(0, 0)};
    });
    CHECK_THROWS_AS(conservative_potential(psi, {{0, 0, 0}, Cplx{}}), NotConservative);
    // base node must lie on the grid
    VectorField ok = make_vector_field(dom, [](double, double, double) {
        return std::array<Cplx, 3>{Cplx(1, 0), Cplx(0, 0), Cplx(0, 0)};
    });
    CHECK_THROWS_AS(conservative_potential(ok, {{0, 0, 99}, Cplx{}}), std::invalid_argument);
}

TEST_CASE("newton potential: zero field and translation covariance") {
    GridDomain dom = unit_box(8);
    VectorField zero(dom);
    CHECK(interior_rms(newton_potential(zero), 0) == 0.0);

    std::mt19937 rng(51u);
    VectorField q = testutil::random_poly_vector(dom, rng, 2);
    VectorField b = newton_potential(q);
    // same samples on a translated box: identical output bit for bit, since
    // kernel distances come from index deltas
    GridDomain dom2({5, -3, 2}, {1, 1, 1}, {8, 8, 8});
    VectorField q2(dom2);
    for (int c = 0; c < 3; ++c)
        for (std::size_t n = 0; n < q.node_count(); ++n) q2.at(n, c) = q.at(n, c);
    VectorField b2 = newton_potential(q2);
    for (int c = 0; c < 3; ++c)
        for (std::size_t n = 0; n < b.node_count(); ++n)
            CHECK(b.at(n, c) == b2.at(n, c));
}

TEST_CASE("newton potential: right inverse of rot rot on an interior bump") {
    // Low-order quadrature: the documented level at this resolution.  The
    // acceptance suite runs the 24^3 study; this guards against regressions.
    GridDomain dom = unit_box(14);
    VectorField q = interior_bump_field(dom);
    VectorField rr = rot(rot(newton_potential(q)));
    double rel = rel_of(interior_rms(sub(rr, q)), {interior_rms(q)});
    CHECK(rel <= 0.30);
}

TEST_CASE("harmonic gauge validation") {
    GridDomain dom = unit_box(10);
    ScalarField h = make_scalar_field(
        dom, [](double x, double y, double) { return Cplx(x * x - y * y, 0); });
    HarmonicGauge g = HarmonicGauge::from_field(h);
    CHECK(!g.is_zero());
    CHECK(HarmonicGauge::zero().is_zero());
    ScalarField bad =
        make_scalar_field(dom, [](double x, double, double) { return Cplx(x * x, 0); });
    CHECK_THROWS_AS(HarmonicGauge::from_field(bad), NotHarmonic);
}

TEST_CASE("antiderivative: gradient input with f == 1") {
    GridDomain dom = unit_box(14);
    FactorizingFunction one = unit_factorizer(dom);
    // w = grad(x^2 - y^2) solves both successor equations (harmonic potential)
    VectorField w = make_vector_field(dom, [](double x, double y, double) {
        return std::array<Cplx, 3>{Cplx(2 * x, 0), Cplx(-2 * y, 0), Cplx(0, 0)};
    });
    CHECK(vekua_successor_conj_residual(to_biquat(w), one) <= 1e-11);

    BiquaternionField W =
        bers_antiderivative(w, one, HarmonicGauge::zero(), {{0, 0, 0}, Cplx{}});
    // The finite-box Newton potential carries a harmonic boundary term
    // grad(div B)/2f: the raw round trip plateaus at the documented level,
    // while the boundary-corrected round trip is quadrature-small.
    BiquaternionField d = vekua_main_conj(W, one);
    VectorField wdot = vector_part(d);
    double raw = rel_of(interior_rms(sub(wdot, w)), {interior_rms(w)});
    CHECK(raw <= 0.30);

    VectorField defect = grad(div(newton_potential(w))); // f == 1: g = f w = w
    VectorField corrected(dom);
    for (int c = 0; c < 3; ++c)
        for (std::size_t n = 0; n < dom.node_count(); ++n)
            corrected.at(n, c) = wdot.at(n, c) - w.at(n, c) - 0.5 * defect.at(n, c);
    CHECK(rel_of(interior_rms(corrected), {interior_rms(w)}) <= 0.02);

    // scalar part of the derivative stays small
    CHECK(rel_of(interior_rms(scalar_part(d)), {interior_rms(wdot)}) <= 1e-3);
}

TEST_CASE("antiderivative: precondition and gauge invariance") {
    GridDomain dom = unit_box(10);
    FactorizingFunction one = unit_factorizer(dom);
    std::mt19937 rng(52u);
    VectorField garbage = testutil::random_poly_vector(dom, rng, 3);
    CHECK_THROWS_AS(
        bers_antiderivative(garbage, one, HarmonicGauge::zero(), {{0, 0, 0}, Cplx{}}),
        NotAV1Solution);

    VectorField w = make_vector_field(dom, [](double x, double y, double) {
        return std::array<Cplx, 3>{Cplx(2 * x, 0), Cplx(-2 * y, 0), Cplx(0, 0)};
    });
    ScalarField hf = make_scalar_field(
        dom, [](double x, double, double z) { return Cplx(x * z, 0); });
    HarmonicGauge gauge = HarmonicGauge::from_field(hf);
    BiquaternionField w_zero =
        bers_antiderivative(w, one, HarmonicGauge::zero(), {{0, 0, 0}, Cplx{}});
    BiquaternionField w_gauge = bers_antiderivative(w, one, gauge, {{0, 0, 0}, Cplx{}});

    // the gauge shifts the vector part by grad(h)/(2f) exactly
    BiquaternionField diff = sub(w_gauge, w_zero);
    VectorField want = scale(0.5, grad(hf));
    CHECK(interior_rms(sub(vector_part(diff), want), 0) <= 1e-13);
    CHECK(interior_rms(scalar_part(diff), 0) == 0.0);

    // and leaves the derivative unchanged at stencil accuracy
    VectorField d0 = vector_part(vekua_main_conj(w_zero, one));
    VectorField d1 = vector_part(vekua_main_conj(w_gauge, one));
    const double h = dom.spacing(0);
    CHECK(rel_of(interior_rms(sub(d0, d1)), {interior_rms(w)}) <= 1.0 * h * h);
}

TEST_CASE("conjugate vector part: kernel cases") {
    GridDomain dom = cyl_box(10);
    FactorizingFunction fac = radial_factorizer(dom);
    // W0 = f gives grad(W0/f) = 0 and, with the zero gauge, a zero vector part
    VectorField wv = conjugate_vector_part(fac.f(), fac, HarmonicGauge::zero());
    CHECK(interior_rms(wv, 0) <= 1e-13);

    std::mt19937 rng(53u);
    ScalarField bad = scalar_part(testutil::random_poly_biquat(dom, rng, 3));
    CHECK_THROWS_AS(conjugate_vector_part(bad, fac, HarmonicGauge::zero()),
                    NotASchrodingerSolution);
}

TEST_CASE("conjugate pair: cylindrical closed-form solution") {
    GridDomain dom = cyl_box(14);
    FactorizingFunction fac = radial_factorizer(dom);
    // W0 = -1/(2r) solves (-lap + 1/r^2) W0 = 0 away from the axis
    ScalarField w0 = make_scalar_field(dom, [](double x, double y, double) {
        return Cplx(-0.5 / std::sqrt(x * x + y * y), 0);
    });
    CHECK(schrodinger_residual(w0, fac.q()) <= 5e-3);

    VectorField wv = conjugate_vector_part(w0, fac, HarmonicGauge::zero());
    BiquaternionField w = combine(w0, wv);
    // documented plateau of the finite-box construction (see scenario bounds)
    CHECK(vekua_main_residual(w, fac) <= 0.25);

    // Phi = f Wvec satisfies its two equations at the documented level
    VectorField phi = multiply(fac.f(), wv);
    CHECK(div_residual(phi) <= 5e-3);
    CHECK(rot_f2_rot_residual(phi, fac) <= 0.1);

    // and the scalar coefficient satisfies div(f^2 grad(W0/f)) ~ 0
    // (pure stencil error on 1/r^2-type fields, K ~ 3.6)
    ScalarField f2(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n)
        f2.at(n) = fac.f().at(n) * fac.f().at(n);
    VectorField flux = multiply(f2, grad(multiply(fac.inv_f(), w0)));
    const double hh = dom.spacing(0);
    CHECK(div_residual(flux) <= 6.0 * hh * hh);
}

TEST_CASE("conjugate scalar part: zero vector part and kernel projection") {
    GridDomain dom = cyl_box(10);
    FactorizingFunction fac = radial_factorizer(dom);
    VectorField zero(dom);
    ScalarField w0 = conjugate_scalar_part(zero, fac, {{0, 0, 0}, Cplx{}});
    CHECK(interior_rms(w0, 0) == 0.0);

    std::mt19937 rng(54u);
    VectorField garbage = testutil::random_poly_vector(dom, rng, 3);
    CHECK_THROWS_AS(conjugate_scalar_part(garbage, fac, {{0, 0, 0}, Cplx{}}), NotAPhiSolution);
}

TEST_CASE("conjugate round trip differs from the seed by a multiple of f") {
    GridDomain dom = cyl_box(12);
    FactorizingFunction fac = radial_factorizer(dom);
    ScalarField w0 = make_scalar_field(dom, [](double x, double y, double) {
        return Cplx(-0.5 / std::sqrt(x * x + y * y), 0);
    });
    VectorField wv = conjugate_vector_part(w0, fac, HarmonicGauge::zero());
    ScalarField back = conjugate_scalar_part(wv, fac, {{0, 0, 0}, Cplx{}}, 0.2);
    ScalarField r = sub(back, w0);
    // project out the f direction (the kernel of the construction)
    Cplx num{}, den{};
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        num += std::conj(fac.f().at(n)) * r.at(n);
        den += std::conj(fac.f().at(n)) * fac.f().at(n);
    }
    const Cplx lambda = num / den;
    ScalarField proj = sub(r, scale(lambda, fac.f()));
    // remainder carries the documented finite-box boundary term
    CHECK(rel_of(interior_rms(proj), {interior_rms(w0)}) <= 0.2);
}
