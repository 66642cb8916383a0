#include "vekua/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vekua/errors.hpp"
#include "vekua/vfld.hpp"

namespace vekua {

double Scenario::bound_or(const std::string& key, double dflt) const {
    auto it = bounds.find(key);
    return it == bounds.end() ? dflt : it->second;
}

std::vector<std::string> builtin_scenario_names() { return {"trivial-f1", "cyl-f-r", "sph-inv-r"}; }

Scenario builtin_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "trivial-f1") {
        // f == 1 on the unit box; every operator degenerates to its constant
        // coefficient form and most residuals vanish to rounding.
        s.origin = {0, 0, 0};
        s.extent = {1, 1, 1};
        s.resolutions = {16, 32};
        s.newton_res = 12;
        s.f_spec = "one";
        s.q_spec = "zero";
        s.rho_spec = "x1";
        s.rho_orth_spec = "x2";
        s.w0_spec = "f";
        s.tol_k = 8.0;
        // degenerate pipeline: every quantity is exactly zero
        s.bounds["pipeline-v-residual"] = 1e-12;
        s.bounds["pipeline-scalar-part"] = 1e-12;
        s.bounds["pipeline-successor"] = 1e-12;
        s.bounds["pipeline-successor-conj"] = 1e-12;
        s.bounds["pipeline-div-fw"] = 1e-12;
        s.bounds["pipeline-rot-wf"] = 1e-12;
        s.bounds["b-right-inverse"] = 0.65;
    } else if (name == "cyl-f-r") {
        // cylindrical shell box, f(r) = r, q = 1/r^2, rho = log r
        s.origin = {1, 1, 0};
        s.extent = {1, 1, 1};
        s.resolutions = {16, 32};
        s.newton_res = 16;
        s.f_spec = "r-cyl";
        s.q_spec = "inv-r2-cyl";
        s.rho_spec = "log-r-cyl";
        s.rho_orth_spec = "z";
        s.w0_spec = "cyl-closed-form";
        s.tol_k = 8.0;
        // Newton-potential checks carry the finite-box boundary term of B;
        // bounds documented by the refinement study in the test suite.
        s.bounds["pipeline-v-residual"] = 0.25;
        s.bounds["pipeline-scalar-part"] = 5e-4;
        s.bounds["pipeline-successor"] = 0.035;
        s.bounds["pipeline-successor-conj"] = 0.035;
        s.bounds["pipeline-div-fw"] = 5e-3;
        s.bounds["pipeline-rot-wf"] = 0.04;
        s.bounds["b-right-inverse"] = 0.25;
    } else if (name == "sph-inv-r") {
        // spherical shell box, f = rho = 1/r (q = 0 away from the origin)
        s.origin = {1, 1, 1};
        s.extent = {1, 1, 1};
        s.resolutions = {16, 32};
        s.newton_res = 12;
        s.f_spec = "inv-r-sph";
        s.q_spec = "zero";
        s.rho_spec = "inv-r-sph";
        s.w0_spec = "x1";
        s.tol_k = 8.0;
        s.bounds["pipeline-v-residual"] = 0.25;
        s.bounds["pipeline-scalar-part"] = 1e-3;
        s.bounds["pipeline-successor"] = 0.13;
        s.bounds["pipeline-successor-conj"] = 0.13;
        s.bounds["pipeline-div-fw"] = 1e-2;
        s.bounds["pipeline-rot-wf"] = 0.2;
        s.bounds["b-right-inverse"] = 0.4;
    } else {
        throw ScenarioError("unknown scenario '" + name + "'");
    }
    return s;
}

namespace {

std::vector<std::string> tokens_of(std::string v) {
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream is(v);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ScenarioError("bad numeric value '" + s + "' for key '" + key + "'");
    }
}

int to_int(const std::string& s, const std::string& key) {
    double v = to_double(s, key);
    if (v != std::floor(v)) throw ScenarioError("expected integer for key '" + key + "'");
    return static_cast<int>(v);
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin_hint) {
    Scenario s;
    s.name = origin_hint;
    bool in_section = false;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.front() == '[') {
            if (line != "[scenario]")
                throw ScenarioError(origin_hint + ":" + std::to_string(lineno) +
                                    ": unknown section " + line);
            in_section = true;
            continue;
        }
        if (!in_section)
            throw ScenarioError(origin_hint + ": keys must appear under [scenario]");
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioError(origin_hint + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& t) {
            auto bb = t.find_first_not_of(" \t");
            auto ee = t.find_last_not_of(" \t");
            t = bb == std::string::npos ? "" : t.substr(bb, ee - bb + 1);
        };
        trim(key);
        trim(val);
        if (val.empty()) throw ScenarioError(origin_hint + ": empty value for '" + key + "'");

        auto vec3d = [&](std::array<double, 3>& out) {
            auto t = tokens_of(val);
            if (t.size() != 3) throw ScenarioError("key '" + key + "' needs 3 values");
            for (int k = 0; k < 3; ++k) out[k] = to_double(t[k], key);
        };
        if (key == "name") s.name = val;
        else if (key == "origin") vec3d(s.origin);
        else if (key == "extent") vec3d(s.extent);
        else if (key == "res") {
            s.resolutions.clear();
            for (auto& t : tokens_of(val)) s.resolutions.push_back(to_int(t, key));
        } else if (key == "res_newton") s.newton_res = to_int(val, key);
        else if (key == "f") s.f_spec = val;
        else if (key == "q") s.q_spec = val;
        else if (key == "rho") s.rho_spec = val;
        else if (key == "rho_orth") s.rho_orth_spec = val;
        else if (key == "w0") s.w0_spec = val;
        else if (key == "gauge") s.gauge_spec = val;
        else if (key == "base") {
            auto t = tokens_of(val);
            if (t.size() != 3) throw ScenarioError("key 'base' needs 3 node indices");
            for (int k = 0; k < 3; ++k) s.base[k] = to_int(t[k], key);
        } else if (key == "tol_k") s.tol_k = to_double(val, key);
        else if (key == "exclude") s.exclude = to_int(val, key);
        else if (key.rfind("bound.", 0) == 0) s.bounds[key.substr(6)] = to_double(val, key);
        else throw ScenarioError(origin_hint + ": unknown key '" + key + "'");
    }
    if (s.resolutions.empty()) throw ScenarioError(origin_hint + ": empty resolution list");
    for (std::size_t i = 1; i < s.resolutions.size(); ++i)
        if (s.resolutions[i] <= s.resolutions[i - 1])
            throw ScenarioError(origin_hint + ": resolutions must be strictly increasing");
    // referenced files must exist
    for (const std::string* spec : {&s.f_spec, &s.rho_spec, &s.rho_orth_spec, &s.w0_spec,
                                    &s.gauge_spec, &s.q_spec}) {
        if (spec->rfind("vfld:", 0) == 0) {
            std::string p = spec->substr(5);
            if (!std::filesystem::exists(p))
                throw ScenarioError(origin_hint + ": referenced file '" + p + "' does not exist");
        }
    }
    return s;
}

Scenario load_scenario(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path) &&
        std::filesystem::is_regular_file(name_or_path)) {
        std::ifstream is(name_or_path);
        if (!is) throw ScenarioError("cannot open scenario file '" + name_or_path + "'");
        std::stringstream ss;
        ss << is.rdbuf();
        return parse_scenario_text(ss.str(), name_or_path);
    }
    return builtin_scenario(name_or_path);
}

GridDomain scenario_domain(const Scenario& s, int res) {
    return GridDomain(s.origin, s.extent, {res, res, res});
}

namespace {

ScalarField eval_f_spec(const std::string& spec, const GridDomain& dom) {
    if (spec == "one")
        return make_scalar_field(dom, [](double, double, double) { return Cplx(1, 0); });
    if (spec == "exp-x")
        return make_scalar_field(dom,
                                 [](double x, double, double) { return Cplx(std::exp(x), 0); });
    if (spec == "r-cyl")
        return make_scalar_field(dom, [](double x, double y, double) {
            return Cplx(std::sqrt(x * x + y * y), 0);
        });
    if (spec == "inv-r-sph")
        return make_scalar_field(dom, [](double x, double y, double z) {
            return Cplx(1.0 / std::sqrt(x * x + y * y + z * z), 0);
        });
    if (spec == "linear-x")
        return make_scalar_field(dom, [](double x, double, double) { return Cplx(x, 0); });
    if (spec.rfind("vfld:", 0) == 0) return read_scalar_vfld(spec.substr(5));
    throw ScenarioError("unknown f spec '" + spec + "'");
}

} // namespace

ScalarField scenario_f_field(const Scenario& s, const GridDomain& dom) {
    return eval_f_spec(s.f_spec, dom);
}

FactorizingFunction scenario_factorizer(const Scenario& s, const GridDomain& dom) {
    ScalarField f = scenario_f_field(s, dom);
    if (s.q_spec.empty()) return FactorizingFunction(std::move(f));
    ScalarField q = [&]() -> ScalarField {
        if (s.q_spec == "zero")
            return make_scalar_field(dom, [](double, double, double) { return Cplx(0, 0); });
        if (s.q_spec == "one")
            return make_scalar_field(dom, [](double, double, double) { return Cplx(1, 0); });
        if (s.q_spec == "inv-r2-cyl")
            return make_scalar_field(dom, [](double x, double y, double) {
                return Cplx(1.0 / (x * x + y * y), 0);
            });
        if (s.q_spec.rfind("vfld:", 0) == 0) return read_scalar_vfld(s.q_spec.substr(5));
        throw ScenarioError("unknown q spec '" + s.q_spec + "'");
    }();
    return FactorizingFunction(std::move(f), std::move(q));
}

HarmonicFunctionSpec scenario_rho(const std::string& spec) {
    if (spec == "log-r-cyl") return HarmonicFunctionSpec::log_r_cyl();
    if (spec == "theta-cyl") return HarmonicFunctionSpec::theta_cyl();
    if (spec == "z") return HarmonicFunctionSpec::z_coord();
    if (spec == "inv-r-sph") return HarmonicFunctionSpec::inv_r_sph();
    if (spec == "x1") return HarmonicFunctionSpec::linear(1, 0, 0);
    if (spec == "x2") return HarmonicFunctionSpec::linear(0, 1, 0);
    if (spec.rfind("linear:", 0) == 0) {
        auto t = tokens_of(spec.substr(7));
        if (t.size() != 3) throw ScenarioError("linear rho needs 3 coefficients");
        return HarmonicFunctionSpec::linear(to_double(t[0], "rho"), to_double(t[1], "rho"),
                                            to_double(t[2], "rho"));
    }
    if (spec.rfind("vfld:", 0) == 0)
        return HarmonicFunctionSpec::custom(read_scalar_vfld(spec.substr(5)));
    throw ScenarioError("unknown rho spec '" + spec + "'");
}

ScalarField scenario_w0_field(const Scenario& s, const GridDomain& dom) {
    if (s.w0_spec == "f") return scenario_f_field(s, dom);
    if (s.w0_spec == "x1")
        return make_scalar_field(dom, [](double x, double, double) { return Cplx(x, 0); });
    if (s.w0_spec == "cyl-closed-form")
        return make_scalar_field(dom, [](double x, double y, double) {
            return Cplx(-0.5 / std::sqrt(x * x + y * y), 0);
        });
    if (s.w0_spec == "inv-r")
        return make_scalar_field(dom, [](double x, double y, double z) {
            return Cplx(1.0 / std::sqrt(x * x + y * y + z * z), 0);
        });
    if (s.w0_spec.rfind("vfld:", 0) == 0) return read_scalar_vfld(s.w0_spec.substr(5));
    throw ScenarioError("unknown w0 spec '" + s.w0_spec + "'");
}

HarmonicGauge scenario_gauge(const Scenario& s, const GridDomain& dom) {
    if (s.gauge_spec == "zero") return HarmonicGauge::zero();
    if (s.gauge_spec.rfind("vfld:", 0) == 0)
        return HarmonicGauge::from_field(read_scalar_vfld(s.gauge_spec.substr(5)));
    throw ScenarioError("unknown gauge spec '" + s.gauge_spec + "'");
}

} // namespace vekua
