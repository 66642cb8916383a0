#pragma once

#include <optional>

#include "vekua/vekua_ops.hpp"

namespace vekua {

/// Anchor of the three-segment axis-aligned integration path and the additive
/// constant of the potential.  The base point must be a grid node.
struct PotentialPath {
    enum class AxisOrder { XYZ, ZYX };
    std::array<int, 3> base{0, 0, 0};
    Cplx constant{};
    AxisOrder order = AxisOrder::XYZ;
};

/// Either the distinguished ZERO gauge or a validated harmonic field.
class HarmonicGauge {
  public:
    static HarmonicGauge zero() { return HarmonicGauge(); }
    static HarmonicGauge from_field(ScalarField h, double tol = 0.05, int exclude = 2);
    bool is_zero() const { return !h_.has_value(); }
    const ScalarField& field() const { return *h_; }

  private:
    HarmonicGauge() = default;
    std::optional<ScalarField> h_;
};

/// Relative interior residual of rot(psi); the conservativity oracle.
double conservativity_residual(const VectorField& psi, int exclude = 2);

/// Potential of a conservative field: line integral along the axis path
/// base -> x (three segments, composite trapezoid per segment), plus the
/// constant.  grad(result) recovers psi at stencil accuracy.
/// Throws NotConservative when the rot residual exceeds rot_tol.
ScalarField conservative_potential(const VectorField& psi, const PotentialPath& path,
                                   double rot_tol = 0.05);

/// Newton potential (1/4pi) int_box Q(y)/|x-y| dV, midpoint quadrature over
/// node cells with the equivalent-sphere self term Q(x) r_eq^2 / 2,
/// r_eq = (3 V_cell / 4pi)^{1/3}.  O(N^2) over nodes; parallel over targets;
/// distances are taken from index deltas, so the result is translation
/// covariant bit-for-bit.
VectorField newton_potential(const VectorField& q);

/// Antiderivative of the Bers derivative: given a purely vectorial solution w
/// of the conjugate successor equation, builds W with bers_derivative(W) = w:
///     W = 1/2 ( f A[w/f] - (1/f) rot(B[f w]) + grad(h)/f ).
/// Throws NotAV1Solution when the precondition residual exceeds tol.
BiquaternionField bers_antiderivative(const VectorField& w, const FactorizingFunction& fac,
                                      const HarmonicGauge& gauge, const PotentialPath& path,
                                      double tol = 0.05);

/// Completes a scalar Schrodinger solution W0 to a full Vekua solution
/// W = W0 + Wvec:   Wvec = -(1/f) ( rot(B[f^2 grad(W0/f)]) + grad h ).
/// Throws NotASchrodingerSolution.
VectorField conjugate_vector_part(const ScalarField& w0, const FactorizingFunction& fac,
                                  const HarmonicGauge& gauge, double tol = 0.05);

/// Inverse direction: recovers the scalar part from the vector part,
///     W0 = -f A[ f^{-2} rot(f Wvec) ].
/// Requires Phi = f Wvec to satisfy div Phi ~ 0 and rot(f^{-2} rot Phi) ~ 0.
/// Throws NotAPhiSolution.
ScalarField conjugate_scalar_part(const VectorField& wvec, const FactorizingFunction& fac,
                                  const PotentialPath& path, double tol = 0.05);

/// Residuals of the two conditions on Phi = f Wvec.
double div_residual(const VectorField& phi, int exclude = 2);
double rot_f2_rot_residual(const VectorField& phi, const FactorizingFunction& fac,
                           int exclude = 2);

} // namespace vekua
