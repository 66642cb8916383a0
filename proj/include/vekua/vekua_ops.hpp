#pragma once

#include <array>
#include <optional>

#include "vekua/grid_calculus.hpp"
#include "vekua/norms.hpp"

namespace vekua {

/// A validated nonvanishing scalar field f together with its cached
/// logarithmic Dirac derivative Df/f (purely vectorial) and Schrodinger
/// potential q = laplacian(f)/f.
///
/// By default q is the discrete laplacian(f)/f, which makes q f - lap f zero
/// by construction.  An analytic q may be supplied instead; it is validated
/// against the discrete one at stencil accuracy.
class FactorizingFunction {
  public:
    explicit FactorizingFunction(ScalarField f, double eps_f = 1e-10);
    FactorizingFunction(ScalarField f, ScalarField q, double eps_f = 1e-10,
                        double q_tol = 0.1);

    const GridDomain& domain() const { return f_.domain(); }
    const ScalarField& f() const { return f_; }
    const ScalarField& inv_f() const { return inv_f_; }
    const VectorField& df_over_f() const { return df_over_f_; }
    const ScalarField& q() const { return q_; }
    double eps_f() const { return eps_f_; }

  private:
    void build(double eps_f);
    ScalarField f_;
    ScalarField inv_f_;
    VectorField df_over_f_;
    ScalarField q_;
    double eps_f_;
};

/// The generating quartet F0 = f, Fk = e_k / f for the main Vekua equation.
struct GeneratingQuartet {
    std::array<BiquaternionField, 4> F;
    static GeneratingQuartet from(const FactorizingFunction& fac);
    const BiquaternionField& element(int alpha) const { return F[alpha]; }
};

// The four first-order operators built from f.  Naming: "main" is the operator
// whose kernel is the space of spatial pseudoanalytic functions; "successor"
// is the operator annihilating their derivatives; the "_conj" variants are the
// quaternion-conjugated companions (C_H main = -main_conj C_H node-wise).
//
//   vekua_main           W -> D W   - (Df/f) quat_conj(W)
//   vekua_main_conj      W -> D_r W - quat_conj(W) (Df/f)
//   vekua_successor      w -> D_r w + (Df/f) w
//   vekua_successor_conj w -> D w   + w (Df/f)
BiquaternionField vekua_main(const BiquaternionField& w, const FactorizingFunction& fac);
BiquaternionField vekua_main_conj(const BiquaternionField& w, const FactorizingFunction& fac);
BiquaternionField vekua_successor(const BiquaternionField& w, const FactorizingFunction& fac);
BiquaternionField vekua_successor_conj(const BiquaternionField& w,
                                       const FactorizingFunction& fac);

// Relative interior residuals of the same operators: ||op(w)|| divided by the
// sum of the norms of the operator's two constituent terms.
double vekua_main_residual(const BiquaternionField& w, const FactorizingFunction& fac,
                           int exclude = 2);
double vekua_main_conj_residual(const BiquaternionField& w, const FactorizingFunction& fac,
                                int exclude = 2);
double vekua_successor_residual(const BiquaternionField& w, const FactorizingFunction& fac,
                                int exclude = 2);
double vekua_successor_conj_residual(const BiquaternionField& w,
                                     const FactorizingFunction& fac, int exclude = 2);

struct BersOptions {
    double solution_tol = 0.05; ///< admissible vekua_main residual of W
    double purity_tol = 0.05;   ///< admissible scalar part of the derivative
    int exclude = 2;
};

/// Bers derivative of a solution W of the main Vekua equation: evaluates the
/// conjugate main operator, checks that the result is purely vectorial (the
/// theory guarantees it only for solutions; the residual is diagnostic) and
/// strips the scalar part.
/// Throws NotAVekuaSolution / ScalarPartNonzero.
VectorField bers_derivative(const BiquaternionField& w, const FactorizingFunction& fac,
                            const BersOptions& opts = {});

/// Alternative representation sum_a F_a * D(phi_a) over the generating
/// quartet; agrees with the conjugate-operator form at stencil accuracy on
/// solutions.  Returned raw (no purity check) for cross-checking.
BiquaternionField bers_derivative_quartet_form(const BiquaternionField& w,
                                               const FactorizingFunction& fac);

/// Coordinates of W in the generating quartet: phi0 = W0/f, phik = f Wk.
std::array<ScalarField, 4> phi_coords(const BiquaternionField& w,
                                      const FactorizingFunction& fac);
BiquaternionField from_phi_coords(const std::array<ScalarField, 4>& phi,
                                  const FactorizingFunction& fac);

/// Relative interior residual of (-laplacian + q) u; the universal oracle.
double schrodinger_residual(const ScalarField& u, const ScalarField& q, int exclude = 2);

} // namespace vekua
