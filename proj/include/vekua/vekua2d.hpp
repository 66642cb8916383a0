#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "vekua/biquaternion.hpp"
#include "vekua/errors.hpp"

namespace vekua::plane {

/// 2D counterpart of GridDomain; same stencil order, n_k >= 5.
class Grid2D {
  public:
    Grid2D(std::array<double, 2> origin, std::array<double, 2> extent, std::array<int, 2> res);
    const std::array<double, 2>& origin() const { return origin_; }
    const std::array<double, 2>& extent() const { return extent_; }
    const std::array<int, 2>& res() const { return res_; }
    double spacing(int axis) const { return spacing_[axis]; }
    double coord(int axis, int i) const { return origin_[axis] + i * spacing_[axis]; }
    std::size_t node_count() const { return count_; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) + static_cast<std::size_t>(res_[0]) * j;
    }
    Cplx z_at(int i, int j) const { return {coord(0, i), coord(1, j)}; }
    friend bool operator==(const Grid2D& a, const Grid2D& b) {
        return a.origin_ == b.origin_ && a.extent_ == b.extent_ && a.res_ == b.res_;
    }

  private:
    std::array<double, 2> origin_{}, extent_{};
    std::array<int, 2> res_{};
    std::array<double, 2> spacing_{};
    std::size_t count_ = 0;
};

class ComplexField2D {
  public:
    explicit ComplexField2D(const Grid2D& g) : grid_(g), data_(g.node_count()) {}
    const Grid2D& grid() const { return grid_; }
    Cplx& at(std::size_t n) { return data_[n]; }
    const Cplx& at(std::size_t n) const { return data_[n]; }
    Cplx& at(int i, int j) { return data_[grid_.index(i, j)]; }
    const Cplx& at(int i, int j) const { return data_[grid_.index(i, j)]; }
    Cplx* data() { return data_.data(); }
    const Cplx* data() const { return data_.data(); }
    std::size_t node_count() const { return data_.size(); }

  private:
    Grid2D grid_;
    std::vector<Cplx> data_;
};

ComplexField2D make_field(const Grid2D& g, const std::function<Cplx(double, double)>& fn);

ComplexField2D partial(const ComplexField2D& f, int axis);
/// d_z = (d_x - i d_y)/2 and d_zbar = (d_x + i d_y)/2.
ComplexField2D d_z(const ComplexField2D& f);
ComplexField2D d_zbar(const ComplexField2D& f);
ComplexField2D laplacian(const ComplexField2D& f);

// Pointwise helpers.
ComplexField2D add(const ComplexField2D& a, const ComplexField2D& b);
ComplexField2D sub(const ComplexField2D& a, const ComplexField2D& b);
ComplexField2D mul(const ComplexField2D& a, const ComplexField2D& b);
ComplexField2D scale(Cplx s, const ComplexField2D& a);
ComplexField2D conj(const ComplexField2D& a);
ComplexField2D reciprocal(const ComplexField2D& a);
ComplexField2D real_part(const ComplexField2D& a);
ComplexField2D imag_part(const ComplexField2D& a);

double interior_rms(const ComplexField2D& f, int exclude = 2);
double noise_floor_2d(const ComplexField2D& f, int deriv_order, int exclude = 2);
double rel_of_2d(double num, std::initializer_list<double> scales);

/// Generating pair: Im(conj(F) G) > 0 at every node (validated).
struct GeneratingPair {
    ComplexField2D F, G;
    GeneratingPair(ComplexField2D f, ComplexField2D g);
    /// The pair (f, i/f) of the main Vekua equation; f real nonvanishing.
    static GeneratingPair main_pair(const ComplexField2D& f);
};

struct CharacteristicCoefficients {
    ComplexField2D a, b, A, B;
};
CharacteristicCoefficients characteristic_coefficients(const GeneratingPair& pair);

/// Real coefficient fields phi, psi of W = phi F + psi G (unique, exact).
std::array<ComplexField2D, 2> decompose(const ComplexField2D& w, const GeneratingPair& pair);

// Operators of the main Vekua equation for the pair (f, i/f), f real:
//   main:            d_zbar W - (f_zbar/f) conj(W)
//   main_bar:        d_z    W - (f_z/f)    conj(W)      (the derivative operator)
//   successor:       d_zbar w + (f_z/f)    conj(w)
//   successor_bar:   d_z    w + (f_zbar/f) conj(w)
ComplexField2D vekua_main(const ComplexField2D& w, const ComplexField2D& f);
ComplexField2D vekua_main_bar(const ComplexField2D& w, const ComplexField2D& f);
ComplexField2D vekua_successor(const ComplexField2D& w, const ComplexField2D& f);
ComplexField2D vekua_successor_bar(const ComplexField2D& w, const ComplexField2D& f);

double vekua_main_residual(const ComplexField2D& w, const ComplexField2D& f, int exclude = 2);
double vekua_successor_residual(const ComplexField2D& w, const ComplexField2D& f,
                                int exclude = 2);

/// Bers derivative W_z - (f_z/f) conj(W) of a solution of the main equation.
/// Throws NotAVekuaSolution when the precondition residual exceeds tol.
ComplexField2D bers_derivative(const ComplexField2D& w, const ComplexField2D& f,
                               double tol = 0.05, int exclude = 2);
/// Second representation f d_z(W1/f) + i (1/f) d_z(f W2); agrees with the
/// closed form at stencil accuracy on solutions.
ComplexField2D bers_derivative_coordinate_form(const ComplexField2D& w,
                                               const ComplexField2D& f);

struct PathBase2D {
    std::array<int, 2> base{0, 0};
    double constant = 0.0;
};

/// Reconstruction of a real potential phi from phi_z = Phi:
///   A[Phi] = 2 (int Phi1 dx - Phi2 dy) + c, requires d_y Phi1 + d_x Phi2 = 0.
/// Axis path x-then-y from the base node.  Throws CompatibilityViolated.
ComplexField2D potential_from_dz(const ComplexField2D& phi, const PathBase2D& path,
                                 double tol = 0.05);
/// Same for phi_zbar = Phi: 2 (int Phi1 dx + Phi2 dy) + c, requires
/// d_y Phi1 - d_x Phi2 = 0.
ComplexField2D potential_from_dzbar(const ComplexField2D& phi, const PathBase2D& path,
                                    double tol = 0.05);

/// Antiderivative of the Bers derivative: for Phi solving the successor
/// equation, w = f A[Phi/(2f)] + (i/f) A[-i f Phi / 2] solves the main
/// equation and has derivative Phi.  c1/c2 are the two potential constants
/// (the f and i/f directions of the kernel).
ComplexField2D antiderivative(const ComplexField2D& phi, const ComplexField2D& f,
                              const PathBase2D& path, double c2 = 0.0, double tol = 0.05);

/// Conjugate constructions: complete a real solution of (-lap+q)W1 = 0 with
/// q = lap f / f to W = W1 + i W2 in ker(main), and back.
ComplexField2D conjugate_imag_part(const ComplexField2D& w1, const ComplexField2D& f,
                                   const PathBase2D& path, double tol = 0.05);
ComplexField2D conjugate_real_part(const ComplexField2D& w2, const ComplexField2D& f,
                                   const PathBase2D& path, double tol = 0.05);

double schrodinger_residual(const ComplexField2D& u, const ComplexField2D& q,
                            int exclude = 2);
/// Potential of the associated equation satisfied by Im W:
/// r = 2 ((grad f)/f)^2 - q.
ComplexField2D associated_potential(const ComplexField2D& f, const ComplexField2D& q);

/// Adjoint pair F* = -2 conj(F)/(F conj(G) - conj(F) G), G* = 2 conj(G)/(...).
GeneratingPair adjoint_pair(const GeneratingPair& pair);

/// Grid staircase polyline; consecutive nodes differ by one step on one axis.
struct StaircasePath {
    std::vector<std::array<int, 2>> nodes;
    static StaircasePath l_shaped(const Grid2D& g, std::array<int, 2> from,
                                  std::array<int, 2> to, bool x_first);
};

/// The (F,G)-integral of U along the path (trapezoid per segment):
///   F(z1) Re int G* U dz + G(z1) Re int F* U dz.
/// For U the derivative of a pseudoanalytic W it reproduces
/// W(z1) - phi(z0) F(z1) - psi(z0) G(z1), path-independently.
Cplx pair_integral(const ComplexField2D& u, const GeneratingPair& pair,
                   const StaircasePath& path);

} // namespace vekua::plane
