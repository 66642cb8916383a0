#pragma once

#include "vekua/antiderivative.hpp"

namespace vekua {

/// A harmonic function evaluated analytically at the nodes (built-in kinds),
/// or a user field validated by its laplacian residual.  Built-ins whose
/// singular set (cylinder axis / origin) meets the box are rejected.
class HarmonicFunctionSpec {
  public:
    enum class Kind { LogRCyl, ThetaCyl, ZCoord, InvRSph, Linear, Custom };

    static HarmonicFunctionSpec log_r_cyl();
    static HarmonicFunctionSpec theta_cyl();
    static HarmonicFunctionSpec z_coord();
    static HarmonicFunctionSpec inv_r_sph();
    static HarmonicFunctionSpec linear(double a, double b, double c);
    static HarmonicFunctionSpec custom(ScalarField rho);

    Kind kind() const { return kind_; }

    /// Node values; throws NotHarmonic if the box meets the singular set.
    ScalarField value(const GridDomain& dom) const;
    /// Analytic gradient for built-ins; discrete gradient for Custom.
    VectorField gradient(const GridDomain& dom) const;
    double harmonic_residual(const GridDomain& dom, int exclude = 2) const;

  private:
    HarmonicFunctionSpec(Kind k) : kind_(k) {}
    void check_regular(const GridDomain& dom) const;
    Kind kind_;
    std::array<double, 3> coeff_{};
    std::optional<ScalarField> custom_;
};

struct SolutionPair {
    VectorField F; ///< solves (D + M^{Df/f}) F = 0
    VectorField G; ///< solves (D - M^{Df/f}) G = 0
};

/// Solutions from a harmonic rho with grad f parallel to grad rho:
/// F = (1/f) D rho, G = f D rho.  Throws NotParallel / NotHarmonic.
SolutionPair parallel_solution(const FactorizingFunction& fac, const HarmonicFunctionSpec& rho,
                               double tol = 0.05);

/// Solutions from a harmonic rho with <grad f, grad rho> = 0:
/// F = f D rho, G = (1/f) D rho.  Throws NotOrthogonal / NotHarmonic.
SolutionPair orthogonal_solution(const FactorizingFunction& fac,
                                 const HarmonicFunctionSpec& rho, double tol = 0.05);

// Residuals of the two equations, for oracles and reports.
double dplus_residual(const VectorField& w, const FactorizingFunction& fac, int exclude = 2);
double dminus_residual(const VectorField& w, const FactorizingFunction& fac, int exclude = 2);

/// The cylindrical generating triplet for f = f(r), r^2 = x^2 + y^2:
///   F1 = (1/f) grad(log r),  F2 = f grad(theta),  F3 = f e3.
/// Requires the box to exclude the axis r = 0; the 3x3 component matrix is
/// nonsingular at every node of such a box.
class GeneratingTriplet {
  public:
    static GeneratingTriplet cylindrical(const FactorizingFunction& f_of_r);

    const VectorField& element(int k) const { return F_[k - 1]; } // k = 1..3
    ScalarField independence_determinant() const;

    /// Node-wise 3x3 solve: w = sum_k phi_k F_k.
    std::array<ScalarField, 3> decompose(const VectorField& w) const;
    VectorField recompose(const std::array<ScalarField, 3>& phi) const;

  private:
    explicit GeneratingTriplet(std::array<VectorField, 3> f) : F_(std::move(f)) {}
    std::array<VectorField, 3> F_;
};

/// Relative interior residual of sum_k (D phi_k) F_k (quaternion products);
/// zero iff the recomposed field solves the conjugate successor equation.
double triplet_equation_residual(const std::array<ScalarField, 3>& phi,
                                 const GeneratingTriplet& t, int exclude = 2);

/// Exact-solution factory: psi = f A[ D rho / f^2 ] solves (-lap + q) psi = 0
/// with q = lap f / f, whenever f is a function of the harmonic rho.
ScalarField schrodinger_from_symmetry(const FactorizingFunction& fac,
                                      const HarmonicFunctionSpec& rho,
                                      const PotentialPath& path, double tol = 0.05);

} // namespace vekua
