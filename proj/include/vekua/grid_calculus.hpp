#pragma once

#include "vekua/grid.hpp"

namespace vekua {

/// d/dx_k by 2nd-order central differences at interior nodes and 2nd-order
/// one-sided stencils at the two boundary layers.  Exact on polynomials of
/// degree <= 2.
template <int C>
GridField<C> partial(const GridField<C>& f, int axis);

VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& v);
VectorField rot(const VectorField& v);

/// Composed stencil: sum_k partial(partial(f, k), k).  Kept operator-by-
/// operator (not fused) so every stage is testable on its own.
ScalarField laplacian(const ScalarField& f);

/// Left Dirac (Moisil-Theodorescu) operator D Q = sum_k e_k d_k Q.
/// Satisfies Sc(DQ) = -div Q, Vec(DQ) = grad Q0 + rot Q, and D^2 = -laplacian
/// as assembled expressions over identical stencils.
BiquaternionField dirac_left(const BiquaternionField& q);
BiquaternionField dirac_left(const ScalarField& q);

/// Right Dirac operator D_r Q = sum_k (d_k Q) e_k = -div Q + grad Q0 - rot Q.
BiquaternionField dirac_right(const BiquaternionField& q);

/// Node-wise norm of D[PQ] - (D[P]Q + quat_conj(P) D[Q] + 2 (Sc(PD))[Q])
/// with (Sc(PD))[Q] = -sum_k P_k d_k Q.  Test oracle for the Leibniz rule.
ScalarField leibniz_residual(const BiquaternionField& p, const BiquaternionField& q);

} // namespace vekua
