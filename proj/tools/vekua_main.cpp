#include <array>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vekua/scenario.hpp"
#include "vekua/vfld.hpp"

namespace {

using namespace vekua;

constexpr std::size_t kNewtonCapNodes = 32ull * 32 * 32;

std::vector<int> parse_res_list(const std::string& v) {
    std::vector<int> out;
    std::string t = v;
    for (auto& ch : t)
        if (ch == ',') ch = ' ';
    std::istringstream is(t);
    int x;
    while (is >> x) out.push_back(x);
    if (out.empty()) throw ScenarioError("empty --res list");
    return out;
}

HarmonicGauge gauge_from_spec(const std::string& spec, const GridDomain&) {
    if (spec == "zero" || spec.empty()) return HarmonicGauge::zero();
    if (spec.rfind("vfld:", 0) == 0)
        return HarmonicGauge::from_field(read_scalar_vfld(spec.substr(5)));
    throw ScenarioError("unknown gauge spec '" + spec + "' (use zero or vfld:path)");
}

FactorizingFunction factorizer_from_files(const std::string& f_path, const std::string& q_path) {
    ScalarField f = read_scalar_vfld(f_path);
    if (q_path.empty()) return FactorizingFunction(std::move(f));
    return FactorizingFunction(std::move(f), read_scalar_vfld(q_path));
}

void refuse_large_newton(std::size_t nodes, bool force) {
    if (nodes <= kNewtonCapNodes) return;
    if (!force)
        throw ScenarioError("Newton potential is O(N^2); " + std::to_string(nodes) +
                            " nodes exceed the 32^3 cap (pass --force to run anyway)");
    std::cerr << "warning: Newton potential over " << nodes
              << " nodes exceeds the 32^3 cap; this will be slow\n";
}

struct CommonFlags {
    std::string json_path;
    int exclude = 2;
    bool force = false;
};

void maybe_write_json(const std::string& path, const Report& rep) {
    if (path.empty()) return;
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << report_json(rep) << "\n";
}

int cmd_verify(const std::string& scenario_arg, const VerifyOptions& vopts,
               const std::string& json_path, std::array<int, 3> base_override) {
    Scenario sc = load_scenario(scenario_arg);
    if (base_override[0] >= 0) sc.base = base_override;
    Report rep = run_verify(sc, vopts);
    print_report(std::cout, rep);
    maybe_write_json(json_path, rep);
    return rep.status ? 0 : 1;
}

int cmd_derive(const std::string& in, const std::string& f_path, const std::string& q_path,
               const std::string& out, double tol, int exclude) {
    BiquaternionField w = read_biquat_vfld(in);
    FactorizingFunction fac = factorizer_from_files(f_path, q_path);
    if (!(fac.domain() == w.domain())) throw IoError("field and f live on different grids");
    BersOptions opts;
    opts.solution_tol = tol;
    opts.purity_tol = tol;
    opts.exclude = exclude;
    double pre = vekua_main_residual(w, fac, exclude);
    std::cout << "main-equation residual " << pre << " (tol " << tol << ")\n";
    VectorField wdot = bers_derivative(w, fac, opts);
    write_vfld(out, wdot);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_antiderive(const std::string& in, const std::string& f_path, const std::string& q_path,
                   const std::string& out, const std::string& gauge_spec,
                   std::array<int, 3> base, std::array<double, 2> c, double tol,
                   const CommonFlags& flags) {
    VectorField w = read_vector_vfld(in);
    FactorizingFunction fac = factorizer_from_files(f_path, q_path);
    if (!(fac.domain() == w.domain())) throw IoError("field and f live on different grids");
    refuse_large_newton(w.node_count(), flags.force);
    PotentialPath path{base, Cplx(c[0], c[1]), PotentialPath::AxisOrder::XYZ};
    double pre = vekua_successor_conj_residual(to_biquat(w), fac, flags.exclude);
    std::cout << "conjugate-successor residual " << pre << " (tol " << tol << ")\n";
    BiquaternionField W =
        bers_antiderivative(w, fac, gauge_from_spec(gauge_spec, fac.domain()), path, tol);
    std::cout << "antiderivative main-equation residual "
              << vekua_main_residual(W, fac, flags.exclude) << "\n";
    write_vfld(out, W);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_conjugate(const std::string& direction, const std::string& in,
                  const std::string& f_path, const std::string& q_path, const std::string& out,
                  const std::string& gauge_spec, std::array<int, 3> base, double tol,
                  const CommonFlags& flags) {
    FactorizingFunction fac = factorizer_from_files(f_path, q_path);
    refuse_large_newton(fac.domain().node_count(), flags.force);
    if (direction == "s2v") {
        ScalarField w0 = read_scalar_vfld(in);
        if (!(fac.domain() == w0.domain())) throw IoError("field and f live on different grids");
        VectorField wv =
            conjugate_vector_part(w0, fac, gauge_from_spec(gauge_spec, fac.domain()), tol);
        std::cout << "full-solution main-equation residual "
                  << vekua_main_residual(combine(w0, wv), fac, flags.exclude) << "\n";
        write_vfld(out, wv);
    } else if (direction == "v2s") {
        VectorField wv = read_vector_vfld(in);
        if (!(fac.domain() == wv.domain())) throw IoError("field and f live on different grids");
        PotentialPath path{base, Cplx{}, PotentialPath::AxisOrder::XYZ};
        ScalarField w0 = conjugate_scalar_part(wv, fac, path, tol);
        std::cout << "scalar-part Schrodinger residual "
                  << schrodinger_residual(w0, fac.q(), flags.exclude) << "\n";
        write_vfld(out, w0);
    } else {
        throw ScenarioError("--direction must be s2v or v2s");
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_generate(const std::string& scenario_arg, int res_override, const std::string& out,
                 const std::string& json_path, int exclude) {
    Scenario sc = load_scenario(scenario_arg);
    if (sc.rho_spec.empty()) throw ScenarioError("scenario has no rho; nothing to generate");
    const int res = res_override > 0 ? res_override : sc.resolutions.back();
    GridDomain dom = scenario_domain(sc, res);
    FactorizingFunction fac = scenario_factorizer(sc, dom);
    PotentialPath path{sc.base, Cplx{}, PotentialPath::AxisOrder::XYZ};
    ScalarField psi = schrodinger_from_symmetry(fac, scenario_rho(sc.rho_spec), path, 0.05);
    const double h = dom.spacing(0);
    const double res_val = schrodinger_residual(psi, fac.q(), exclude);
    const double bound = sc.tol_k * h * h;
    std::cout << "psi Schrodinger residual " << res_val << " (bound " << bound << ")\n";
    if (!out.empty()) {
        write_vfld(out, psi);
        std::cout << "wrote " << out << "\n";
    }
    Report rep;
    rep.scenario = sc.name;
    rep.checks.push_back({"psi-schrodinger", res_val, bound, res_val <= bound});
    rep.status = res_val <= bound;
    maybe_write_json(json_path, rep);
    return rep.status ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial pseudoanalytic function toolkit: Vekua operators, Bers "
                 "derivatives/antiderivatives, conjugate constructions and exact "
                 "Schrodinger solutions on uniform grids"};
    app.require_subcommand(1);

    // verify
    std::string v_scenario, v_res, v_gauge, v_json;
    std::array<int, 3> v_base{-1, -1, -1};
    double v_tol_k = 0;
    int v_exclude = -1;
    bool v_force = false;
    auto* verify = app.add_subcommand("verify", "Run a scenario's verification battery");
    verify->add_option("scenario", v_scenario, "built-in name or scenario file")->required();
    verify->add_option("--res", v_res, "resolution list override, e.g. 16,32");
    verify->add_option("--tol-k", v_tol_k, "stencil bound constant K in K*h^2");
    verify->add_option("--gauge", v_gauge, "zero | vfld:path");
    verify->add_option("--base", v_base, "path base node i,j,k override")->delimiter(',');
    verify->add_option("--json", v_json, "write machine-readable report");
    verify->add_option("--exclude-boundary", v_exclude, "interior norm exclusion (default 2)");
    verify->add_flag("--force", v_force, "run Newton-potential checks above the 32^3 cap");

    // derive
    std::string d_in, d_f, d_q, d_out;
    double d_tol = 0.05;
    int d_exclude = 2;
    auto* derive = app.add_subcommand("derive", "Bers derivative of a stored solution field");
    derive->add_option("--in", d_in, "biquat VFLD solution of the main equation")->required();
    derive->add_option("--f", d_f, "scalar VFLD factorizing function")->required();
    derive->add_option("--q", d_q, "optional scalar VFLD analytic potential");
    derive->add_option("--out", d_out, "output vector VFLD")->required();
    derive->add_option("--tol", d_tol, "solution residual tolerance");
    derive->add_option("--exclude-boundary", d_exclude, "interior norm exclusion");

    // antiderive
    std::string a_in, a_f, a_q, a_out, a_gauge = "zero";
    std::array<int, 3> a_base{0, 0, 0};
    std::array<double, 2> a_c{0, 0};
    double a_tol = 0.05;
    CommonFlags a_flags;
    auto* antider = app.add_subcommand("antiderive", "Antiderivative of a derivative field");
    antider->add_option("--in", a_in, "vector VFLD solving the conjugate successor equation")
        ->required();
    antider->add_option("--f", a_f, "scalar VFLD factorizing function")->required();
    antider->add_option("--q", a_q, "optional scalar VFLD analytic potential");
    antider->add_option("--out", a_out, "output biquat VFLD")->required();
    antider->add_option("--gauge", a_gauge, "zero | vfld:path");
    antider->add_option("--base", a_base, "path base node i,j,k")->delimiter(',');
    antider->add_option("--c", a_c, "potential constant re,im")->delimiter(',');
    antider->add_option("--tol", a_tol, "precondition tolerance");
    antider->add_option("--exclude-boundary", a_flags.exclude, "interior norm exclusion");
    antider->add_flag("--force", a_flags.force, "exceed the 32^3 Newton cap");

    // conjugate
    std::string c_dir, c_in, c_f, c_q, c_out, c_gauge = "zero";
    std::array<int, 3> c_base{0, 0, 0};
    double c_tol = 0.05;
    CommonFlags c_flags;
    auto* conj = app.add_subcommand("conjugate", "Complete a partial solution (scalar<->vector)");
    conj->add_option("--direction", c_dir, "s2v (scalar to vector) or v2s")->required();
    conj->add_option("--in", c_in, "input VFLD (scalar for s2v, vector for v2s)")->required();
    conj->add_option("--f", c_f, "scalar VFLD factorizing function")->required();
    conj->add_option("--q", c_q, "optional scalar VFLD analytic potential");
    conj->add_option("--out", c_out, "output VFLD")->required();
    conj->add_option("--gauge", c_gauge, "zero | vfld:path (s2v only)");
    conj->add_option("--base", c_base, "path base node i,j,k (v2s only)")->delimiter(',');
    conj->add_option("--tol", c_tol, "precondition tolerance");
    conj->add_option("--exclude-boundary", c_flags.exclude, "interior norm exclusion");
    conj->add_flag("--force", c_flags.force, "exceed the 32^3 Newton cap");

    // generate
    std::string g_scenario, g_out, g_json;
    int g_res = 0, g_exclude = 2;
    auto* gen = app.add_subcommand("generate", "Exact Schrodinger solution from symmetry");
    gen->add_option("scenario", g_scenario, "built-in name or scenario file")->required();
    gen->add_option("--res", g_res, "resolution (default: scenario's finest)");
    gen->add_option("--out", g_out, "output scalar VFLD");
    gen->add_option("--json", g_json, "write machine-readable report");
    gen->add_option("--exclude-boundary", g_exclude, "interior norm exclusion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) {
            VerifyOptions vopts;
            if (!v_res.empty()) vopts.res_override = parse_res_list(v_res);
            vopts.tol_k_override = v_tol_k;
            vopts.exclude_override = v_exclude;
            vopts.gauge_override = v_gauge;
            vopts.force = v_force;
            return cmd_verify(v_scenario, vopts, v_json, v_base);
        }
        if (derive->parsed()) return cmd_derive(d_in, d_f, d_q, d_out, d_tol, d_exclude);
        if (antider->parsed())
            return cmd_antiderive(a_in, a_f, a_q, a_out, a_gauge, a_base, a_c, a_tol, a_flags);
        if (conj->parsed())
            return cmd_conjugate(c_dir, c_in, c_f, c_q, c_out, c_gauge, c_base, c_tol, c_flags);
        if (gen->parsed()) return cmd_generate(g_scenario, g_res, g_out, g_json, g_exclude);
    } catch (const vekua::Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const vekua::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
