#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "vekua/symmetric_solutions.hpp"

namespace vekua {

/// A named verification setup: box, resolution ladder, factorizing function,
/// harmonic data and per-check bounds.  Parsed from flat key = value text
/// (one [scenario] section) or taken from the built-in table.
struct Scenario {
    std::string name;
    std::array<double, 3> origin{0, 0, 0};
    std::array<double, 3> extent{1, 1, 1};
    std::vector<int> resolutions{16, 32}; ///< strictly increasing
    int newton_res = 12;                  ///< resolution for O(N^2) potential checks
    std::string f_spec = "one";
    std::string q_spec;        ///< analytic potential; empty = discrete lap f / f
    std::string rho_spec;      ///< harmonic function with grad parallel to grad f
    std::string rho_orth_spec; ///< harmonic function with grad orthogonal to grad f
    std::string w0_spec = "f"; ///< scalar Schrodinger solution for the pipeline
    std::string gauge_spec = "zero";
    std::array<int, 3> base{0, 0, 0};
    double tol_k = 8.0; ///< K of the stencil-check bound K h^2
    int exclude = 2;
    std::map<std::string, double> bounds; ///< absolute per-check overrides

    double bound_or(const std::string& key, double dflt) const;
};

std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name); ///< throws ScenarioError
/// File path (existing file) or built-in name.
Scenario load_scenario(const std::string& name_or_path);
Scenario parse_scenario_text(const std::string& text, const std::string& origin_hint);

// Scenario building blocks (shared between verify and the field commands).
GridDomain scenario_domain(const Scenario& s, int res);
ScalarField scenario_f_field(const Scenario& s, const GridDomain& dom);
FactorizingFunction scenario_factorizer(const Scenario& s, const GridDomain& dom);
HarmonicFunctionSpec scenario_rho(const std::string& spec);
ScalarField scenario_w0_field(const Scenario& s, const GridDomain& dom);
HarmonicGauge scenario_gauge(const Scenario& s, const GridDomain& dom);

/// Divergence-free, interior-supported test field with a known rot-rot
/// preimage (a separable bump); used by the Newton-potential right-inverse
/// checks.
VectorField interior_bump_field(const GridDomain& dom);

struct CheckResult {
    std::string name;
    double residual = 0;
    double bound = 0;
    bool pass = false;
};
struct RefinementRow {
    double h = 0;
    double residual = 0;
    double ratio = 0; ///< previous residual / this residual; 0 on first row
};
struct Report {
    std::string scenario;
    std::vector<CheckResult> checks;
    std::vector<RefinementRow> refinement;
    bool status = false;
    double elapsed_s = 0;
};

struct VerifyOptions {
    std::vector<int> res_override;
    double tol_k_override = 0; ///< 0 = use scenario value
    int exclude_override = -1;
    std::string gauge_override;
    bool force = false;  ///< allow Newton-potential checks above the cap
    int newton_cap = 32; ///< refuse B-dependent checks above cap^3 nodes
};

/// Runs the full check battery for a scenario.  Math preconditions that fail
/// inside checks are reported as failed checks, not exceptions.
Report run_verify(const Scenario& s, const VerifyOptions& opts = {});

void print_report(std::ostream& os, const Report& r);
std::string report_json(const Report& r);

} // namespace vekua
