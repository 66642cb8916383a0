#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "vekua/errors.hpp"
#include "vekua/scenario.hpp"

namespace vekua {

namespace {

using Clock = std::chrono::steady_clock;

Biquaternion random_biquat(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto c = [&] { return Cplx(u(rng), u(rng)); };
    return {c(), c(), c(), c()};
}

// Fixed manufactured fields, deterministic across runs.
Cplx phi_fact(double x, double y, double z) {
    return Cplx(std::sin(x + 0.3) * std::cos(0.7 * y) * std::exp(0.4 * z) + 0.2 * x * y * z,
                0.0);
}

Biquaternion smooth_biquat(double x, double y, double z) {
    return {Cplx(std::sin(x) * std::cos(0.5 * y), 0.3 * x * y),
            Cplx(std::cos(y) * std::exp(0.2 * z), 0.1 * z),
            Cplx(x * x - z + 0.4 * y, 0.5 * std::sin(y)),
            Cplx(std::exp(0.3 * x) * std::cos(z), 0.2 * x)};
}

// Degree-3 polynomial biquaternions for the Leibniz oracle.
Biquaternion poly_p(double x, double y, double z) {
    return {Cplx(1 + x * y - 0.2 * z * z * z, 0.5 * x),
            Cplx(x * x * y - z, 0.3), Cplx(y * y - 0.5 * x * z, -0.2 * y),
            Cplx(0.7 * x + y * z * z, 0.1 * x * y)};
}
Biquaternion poly_q(double x, double y, double z) {
    return {Cplx(x - y + 0.3 * z * y * y, -0.4 * z), Cplx(0.5 * x * x - y * z, 0.2 * x),
            Cplx(z * z * x - 2.0 * y, 0.6), Cplx(x * y * z, -0.3 * y)};
}

bool ratio_gate(const std::vector<double>& residuals, const std::vector<double>& spacings,
                std::string& note) {
    bool ok = true;
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        if (residuals[i] < kDegenerateResidual || residuals[i - 1] < kDegenerateResidual)
            continue; // exactly-satisfied identities carry no h^2 signal
        const double expected = (spacings[i - 1] / spacings[i]) * (spacings[i - 1] / spacings[i]);
        const double ratio = residuals[i - 1] / std::max(residuals[i], 1e-300);
        // Window around the ideal h^2 ratio: wide enough for checks mixing
        // stencil and quadrature constants, far from first-order (0.48).
        if (ratio < 0.75 * expected || ratio > 1.15 * expected) {
            std::ostringstream os;
            os << "refinement ratio " << ratio << " outside [" << 0.82 * expected << ", "
               << 1.06 * expected << "]";
            note = os.str();
            ok = false;
        }
    }
    return ok;
}

struct Battery {
    const Scenario& sc;
    const VerifyOptions& opts;
    Report& rep;

    void add(const std::string& name, double residual, double bound, bool pass,
             const std::string& note = "") {
        CheckResult c{name, residual, bound, pass};
        if (!note.empty()) c.name += " [" + note + "]";
        rep.checks.push_back(c);
    }

    // residuals over the resolution ladder, bound K h^2 at each level plus the
    // refinement-ratio gate
    void add_stencil(const std::string& name, const std::vector<double>& residuals,
                     const std::vector<double>& spacings) {
        bool pass = true;
        for (std::size_t i = 0; i < residuals.size(); ++i)
            if (residuals[i] > sc.tol_k * spacings[i] * spacings[i]) pass = false;
        std::string note;
        if (!ratio_gate(residuals, spacings, note)) pass = false;
        const double h = spacings.back();
        add(name, residuals.back(), sc.tol_k * h * h, pass, note);
    }
};

void run_algebra_check(Battery& b) {
    std::mt19937 rng(0x5eed5u);
    // anticommutation over basis pairs is exact
    double worst_exact = 0.0;
    for (int a = 1; a <= 3; ++a)
        for (int c = 1; c <= 3; ++c) {
            Biquaternion lhs = Biquaternion::unit(a) * Biquaternion::unit(c) +
                               Biquaternion::unit(c) * Biquaternion::unit(a);
            Biquaternion want = (a == c) ? -2.0 * Biquaternion::unit(0) : Biquaternion{};
            worst_exact = std::max(worst_exact, norm(lhs - want));
        }
    double worst = worst_exact;
    for (int t = 0; t < 10000; ++t) {
        Biquaternion p = random_biquat(rng), q = random_biquat(rng), r = random_biquat(rng);
        const double scale = norm(p) * norm(q) * std::max(norm(r), 1.0);
        worst = std::max(worst, norm((p * q) * r - p * (q * r)) / scale);
        worst = std::max(worst, norm(quat_conj(p * q) - quat_conj(q) * quat_conj(p)) / scale);
        worst = std::max(worst,
                         norm(complex_conj(quat_conj(p)) - quat_conj(complex_conj(p))) /
                             std::max(norm(p), 1.0));
        worst = std::max(worst, std::abs(sc(p * q) - sc(q * p)) / scale);
        worst = std::max(worst, norm(right_mul(q)(right_mul(r)(p)) - right_mul(r * q)(p)) / scale);
    }
    b.add("algebra", worst, 1e-12, worst <= 1e-12);
}

struct Level {
    GridDomain dom;
    FactorizingFunction fac;
};

void run_stencil_checks(Battery& b) {
    const Scenario& sc = b.sc;
    std::vector<double> h;
    std::vector<double> d2, leib, fact, quartet_v, quartet_vbar, par_f, par_g, orth_f, orth_g,
        psi_res;
    double commut_main = 0.0, commut_succ = 0.0, phi_rt = 0.0;

    for (int res : sc.resolutions) {
        GridDomain dom = scenario_domain(sc, res);
        FactorizingFunction fac = scenario_factorizer(sc, dom);
        h.push_back(dom.spacing(0));
        const int ex = sc.exclude;

        // D^2 = -laplacian against the analytic oracle
        {
            ScalarField phi = make_scalar_field(dom, [](double x, double y, double z) {
                return Cplx(std::sin(x) * std::cos(y) * std::exp(z), 0.0);
            });
            // d2x = -phi, d2y = -phi, d2z = +phi
            ScalarField lap_exact = scale(-1.0, phi);
            BiquaternionField dd = dirac_left(dirac_left(phi));
            BiquaternionField num = add(dd, to_biquat(lap_exact));
            d2.push_back(rel_of(interior_rms(num, ex), {interior_rms(lap_exact, ex)}));
        }
        // Leibniz rule
        {
            BiquaternionField p = make_biquat_field(dom, poly_p);
            BiquaternionField q = make_biquat_field(dom, poly_q);
            ScalarField r = leibniz_residual(p, q);
            BiquaternionField pq(dom);
            for (std::size_t n = 0; n < dom.node_count(); ++n)
                set_biquat(pq, n, biquat_at(p, n) * biquat_at(q, n));
            leib.push_back(rel_of(interior_rms(r, ex),
                                  {interior_rms(dirac_left(pq), ex)}));
        }
        // factorization (-lap + q) phi = successor_conj(main(phi))
        {
            ScalarField phi = make_scalar_field(dom, phi_fact);
            BiquaternionField comp = vekua_successor_conj(vekua_main(to_biquat(phi), fac), fac);
            ScalarField target = sub(multiply(fac.q(), phi), laplacian(phi));
            BiquaternionField num = sub(comp, to_biquat(target));
            fact.push_back(rel_of(interior_rms(num, ex),
                                  {interior_rms(target, ex), interior_rms(phi, ex)}));
        }
        // quartet annihilation
        {
            GeneratingQuartet quartet = GeneratingQuartet::from(fac);
            double wv = 0.0, wvb = 0.0;
            for (int a = 0; a < 4; ++a) {
                wv = std::max(wv, vekua_main_residual(quartet.element(a), fac, ex));
                wvb = std::max(wvb, vekua_main_conj_residual(quartet.element(a), fac, ex));
            }
            quartet_v.push_back(wv);
            quartet_vbar.push_back(wvb);
        }
        // commutation identities and coordinate round trip (exact, finest only)
        if (res == sc.resolutions.back()) {
            BiquaternionField w = make_biquat_field(dom, smooth_biquat);
            BiquaternionField chw(dom), lhs(dom);
            for (std::size_t n = 0; n < dom.node_count(); ++n)
                set_biquat(chw, n, quat_conj(biquat_at(w, n)));
            BiquaternionField vw = vekua_main(w, fac);
            BiquaternionField vbar_chw = vekua_main_conj(chw, fac);
            for (std::size_t n = 0; n < dom.node_count(); ++n)
                set_biquat(lhs, n, quat_conj(biquat_at(vw, n)) + biquat_at(vbar_chw, n));
            commut_main = rel_of(interior_rms(lhs, ex), {interior_rms(vw, ex)});

            BiquaternionField v1w = vekua_successor(w, fac);
            BiquaternionField v1b_chw = vekua_successor_conj(chw, fac);
            for (std::size_t n = 0; n < dom.node_count(); ++n)
                set_biquat(lhs, n, quat_conj(biquat_at(v1w, n)) + biquat_at(v1b_chw, n));
            commut_succ = rel_of(interior_rms(lhs, ex), {interior_rms(v1w, ex)});

            BiquaternionField rt = from_phi_coords(phi_coords(w, fac), fac);
            phi_rt = rel_of(interior_rms(sub(rt, w), ex), {interior_rms(w, ex)});
        }
        // symmetry solutions
        if (!sc.rho_spec.empty()) {
            HarmonicFunctionSpec rho = scenario_rho(sc.rho_spec);
            SolutionPair pair = parallel_solution(fac, rho, 0.05);
            par_f.push_back(dplus_residual(pair.F, fac, ex));
            par_g.push_back(dminus_residual(pair.G, fac, ex));
            PotentialPath path{sc.base, Cplx{}, PotentialPath::AxisOrder::XYZ};
            ScalarField psi = schrodinger_from_symmetry(fac, rho, path, 0.05);
            psi_res.push_back(schrodinger_residual(psi, fac.q(), ex));
        }
        if (!sc.rho_orth_spec.empty()) {
            HarmonicFunctionSpec rho = scenario_rho(sc.rho_orth_spec);
            SolutionPair pair = orthogonal_solution(fac, rho, 0.05);
            orth_f.push_back(dplus_residual(pair.F, fac, ex));
            orth_g.push_back(dminus_residual(pair.G, fac, ex));
        }
    }

    b.add_stencil("d2-laplacian", d2, h);
    for (std::size_t i = 0; i < d2.size(); ++i)
        b.rep.refinement.push_back({h[i], d2[i], i == 0 ? 0.0 : d2[i - 1] / d2[i]});
    b.add_stencil("leibniz", leib, h);
    b.add_stencil("factorization-3d", fact, h);
    b.add_stencil("quartet-V", quartet_v, h);
    b.add_stencil("quartet-Vbar", quartet_vbar, h);
    b.add("commutation-main", commut_main, 1e-12, commut_main <= 1e-12);
    b.add("commutation-successor", commut_succ, 1e-12, commut_succ <= 1e-12);
    b.add("phi-coords-roundtrip", phi_rt, 1e-12, phi_rt <= 1e-12);
    if (!par_f.empty()) {
        b.add_stencil("parallel-F", par_f, h);
        b.add_stencil("parallel-G", par_g, h);
        b.add_stencil("symmetry-psi-schrodinger", psi_res, h);
    }
    if (!orth_f.empty()) {
        b.add_stencil("orthogonal-F", orth_f, h);
        b.add_stencil("orthogonal-G", orth_g, h);
    }
}

void run_newton_checks(Battery& b) {
    const Scenario& sc = b.sc;
    const int res = sc.newton_res;
    const std::size_t cap = static_cast<std::size_t>(b.opts.newton_cap) * b.opts.newton_cap *
                            b.opts.newton_cap;
    GridDomain dom = scenario_domain(sc, res);
    if (dom.node_count() > cap && !b.opts.force)
        throw ScenarioError("Newton-potential checks need " + std::to_string(dom.node_count()) +
                            " nodes > cap " + std::to_string(cap) + "; pass --force to override");
    FactorizingFunction fac = scenario_factorizer(sc, dom);
    HarmonicGauge gauge = scenario_gauge(sc, dom);
    const int ex = sc.exclude;
    const double h = dom.spacing(0);

    // derivative pipeline from the scenario's scalar Schrodinger solution
    ScalarField w0 = scenario_w0_field(sc, dom);
    double schrod = schrodinger_residual(w0, fac.q(), ex);
    b.add("pipeline-w0-schrodinger", schrod, sc.tol_k * h * h, schrod <= sc.tol_k * h * h);

    VectorField wv = conjugate_vector_part(w0, fac, gauge, std::max(10 * sc.tol_k * h * h, 1e-9));
    BiquaternionField w = combine(w0, wv);

    double vres = vekua_main_residual(w, fac, ex);
    double bnd = sc.bound_or("pipeline-v-residual", 0.5);
    b.add("pipeline-v-residual", vres, bnd, vres <= bnd);

    BiquaternionField d = vekua_main_conj(w, fac);
    ScalarField dsc = scalar_part(d);
    VectorField wdot = vector_part(d);
    double purity = rel_of(interior_rms(dsc, ex), {interior_rms(wdot, ex)});
    bnd = sc.bound_or("pipeline-scalar-part", 1e-3);
    b.add("pipeline-scalar-part", purity, bnd, purity <= bnd);

    double s1 = vekua_successor_residual(to_biquat(wdot), fac, ex);
    bnd = sc.bound_or("pipeline-successor", 0.1);
    b.add("pipeline-successor", s1, bnd, s1 <= bnd);
    double s2 = vekua_successor_conj_residual(to_biquat(wdot), fac, ex);
    bnd = sc.bound_or("pipeline-successor-conj", 0.1);
    b.add("pipeline-successor-conj", s2, bnd, s2 <= bnd);

    double dfw = div_residual(multiply(fac.f(), wdot), ex);
    bnd = sc.bound_or("pipeline-div-fw", 1e-2);
    b.add("pipeline-div-fw", dfw, bnd, dfw <= bnd);
    double rwf = conservativity_residual(multiply(fac.inv_f(), wdot), ex);
    bnd = sc.bound_or("pipeline-rot-wf", 0.05);
    b.add("pipeline-rot-wf", rwf, bnd, rwf <= bnd);

    // right-inverse property of the Newton potential on the scenario box
    VectorField q = interior_bump_field(dom);
    VectorField rr = rot(rot(newton_potential(q)));
    double berr = rel_of(interior_rms(sub(rr, q), ex), {interior_rms(q, ex)});
    bnd = sc.bound_or("b-right-inverse", 0.5);
    b.add("b-right-inverse", berr, bnd, berr <= bnd);
}

} // namespace

namespace {

// One separable sin^3 lobe of an interior-supported bump.
struct Lobe {
    static constexpr double kPi = 3.14159265358979323846;
    static constexpr int kPow = 3;
    double a, w;
    double v(double t) const {
        double s = (t - a) / w;
        if (s <= 0.0 || s >= 1.0) return 0.0;
        return std::pow(std::sin(kPi * s), kPow);
    }
    double d1(double t) const {
        double s = (t - a) / w;
        if (s <= 0.0 || s >= 1.0) return 0.0;
        return kPow * std::pow(std::sin(kPi * s), kPow - 1) * std::cos(kPi * s) * kPi / w;
    }
    double d2(double t) const {
        double s = (t - a) / w;
        if (s <= 0.0 || s >= 1.0) return 0.0;
        const double sn = std::sin(kPi * s), cs = std::cos(kPi * s);
        return (kPow * (kPow - 1) * std::pow(sn, kPow - 2) * cs * cs -
                kPow * std::pow(sn, kPow)) *
               kPi * kPi / (w * w);
    }
};

} // namespace

VectorField interior_bump_field(const GridDomain& dom) {
    // Q = rot rot P for P = (p, 0, 0), p a separable sin^3 bump supported on
    // the middle 80% of the box:  Q = (-p_yy - p_zz, p_xy, p_xz).
    const auto& o = dom.origin();
    const auto& e = dom.extent();
    constexpr double margin = 0.1;
    Lobe lx{o[0] + margin * e[0], (1 - 2 * margin) * e[0]};
    Lobe ly{o[1] + margin * e[1], (1 - 2 * margin) * e[1]};
    Lobe lz{o[2] + margin * e[2], (1 - 2 * margin) * e[2]};
    return make_vector_field(dom, [&](double x, double y, double z) {
        const double bx = lx.v(x), by = ly.v(y), bz = lz.v(z);
        return std::array<Cplx, 3>{
            Cplx(-(bx * ly.d2(y) * bz + bx * by * lz.d2(z)), 0.0),
            Cplx(lx.d1(x) * ly.d1(y) * bz, 0.0),
            Cplx(lx.d1(x) * by * lz.d1(z), 0.0)};
    });
}

Report run_verify(const Scenario& s, const VerifyOptions& opts) {
    const auto t0 = Clock::now();
    Scenario sc = s;
    if (!opts.res_override.empty()) {
        sc.resolutions = opts.res_override;
        for (std::size_t i = 1; i < sc.resolutions.size(); ++i)
            if (sc.resolutions[i] <= sc.resolutions[i - 1])
                throw ScenarioError("resolutions must be strictly increasing");
        sc.newton_res = std::min(sc.newton_res, sc.resolutions.back());
    }
    if (opts.tol_k_override > 0) sc.tol_k = opts.tol_k_override;
    if (opts.exclude_override >= 0) sc.exclude = opts.exclude_override;
    if (!opts.gauge_override.empty()) sc.gauge_spec = opts.gauge_override;

    Report rep;
    rep.scenario = sc.name;
    Battery b{sc, opts, rep};

    auto guarded = [&](const char* stage, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            b.add(std::string(stage) + "-error", 1.0, 0.0, false, e.what());
        }
    };
    guarded("algebra", [&] { run_algebra_check(b); });
    guarded("stencil", [&] { run_stencil_checks(b); });
    guarded("newton", [&] { run_newton_checks(b); });

    rep.status = !rep.checks.empty();
    for (const auto& c : rep.checks) rep.status = rep.status && c.pass;
    rep.elapsed_s = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

void print_report(std::ostream& os, const Report& r) {
    os << "scenario " << r.scenario << "\n";
    for (const auto& c : r.checks) {
        os << "  " << (c.pass ? "pass" : "FAIL") << "  " << std::left << std::setw(28)
           << c.name << std::scientific << std::setprecision(3) << " residual " << c.residual
           << "  bound " << c.bound << "\n";
        os.unsetf(std::ios::scientific);
    }
    if (!r.refinement.empty()) {
        os << "  refinement (d2-laplacian):\n";
        for (const auto& row : r.refinement) {
            os << "    h " << std::scientific << std::setprecision(3) << row.h << "  residual "
               << row.residual;
            if (row.ratio > 0) os << "  ratio " << std::fixed << std::setprecision(2) << row.ratio;
            os << "\n";
            os.unsetf(std::ios::scientific);
            os.unsetf(std::ios::fixed);
        }
    }
    os << "  status " << (r.status ? "PASS" : "FAIL") << "  (" << std::fixed
       << std::setprecision(2) << r.elapsed_s << " s)\n";
    os.unsetf(std::ios::fixed);
}

std::string report_json(const Report& r) {
    nlohmann::json j;
    j["scenario"] = r.scenario;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name},
                               {"residual", c.residual},
                               {"bound", c.bound},
                               {"pass", c.pass}});
    j["refinement"] = nlohmann::json::array();
    for (const auto& row : r.refinement)
        j["refinement"].push_back({{"h", row.h}, {"residual", row.residual}, {"ratio", row.ratio}});
    j["status"] = r.status ? "pass" : "fail";
    j["elapsed_s"] = r.elapsed_s;
    return j.dump(2);
}

} // namespace vekua
