#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "vekua/biquaternion.hpp"

namespace vekua {

/// Axis-aligned box with a uniform node lattice.  n_k >= 5 per axis so that
/// second-order one-sided boundary stencils exist.  Node spacing
/// h_k = L_k / (n_k - 1); node coordinates origin_k + i h_k.
class GridDomain {
  public:
    GridDomain(std::array<double, 3> origin, std::array<double, 3> extent,
               std::array<int, 3> res);

    const std::array<double, 3>& origin() const { return origin_; }
    const std::array<double, 3>& extent() const { return extent_; }
    const std::array<int, 3>& res() const { return res_; }
    double spacing(int axis) const { return spacing_[axis]; }
    double coord(int axis, int i) const { return origin_[axis] + i * spacing_[axis]; }

    std::size_t node_count() const { return count_; }

    /// x-fastest linear index.
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(res_[0]) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(res_[1]) * k);
    }
    std::array<int, 3> unpack(std::size_t n) const {
        int i = static_cast<int>(n % res_[0]);
        int j = static_cast<int>((n / res_[0]) % res_[1]);
        int k = static_cast<int>(n / (static_cast<std::size_t>(res_[0]) * res_[1]));
        return {i, j, k};
    }
    std::array<double, 3> point(std::size_t n) const {
        auto ijk = unpack(n);
        return {coord(0, ijk[0]), coord(1, ijk[1]), coord(2, ijk[2])};
    }
    bool contains_node(const std::array<int, 3>& ijk) const {
        return ijk[0] >= 0 && ijk[0] < res_[0] && ijk[1] >= 0 && ijk[1] < res_[1] &&
               ijk[2] >= 0 && ijk[2] < res_[2];
    }

    friend bool operator==(const GridDomain& a, const GridDomain& b) {
        return a.origin_ == b.origin_ && a.extent_ == b.extent_ && a.res_ == b.res_;
    }

  private:
    std::array<double, 3> origin_{}, extent_{};
    std::array<int, 3> res_{};
    std::array<double, 3> spacing_{};
    std::size_t count_ = 0;
};

/// Complex-valued samples on a GridDomain, C components per node.
/// Fields are immutable by convention once built: operators return new fields.
/// Storage is component-major so stencil sweeps stay contiguous per component.
template <int C>
class GridField {
  public:
    static_assert(C == 1 || C == 3 || C == 4);

    explicit GridField(const GridDomain& dom)
        : dom_(dom), count_(dom.node_count()), data_(C * dom.node_count()) {}

    const GridDomain& domain() const { return dom_; }
    static constexpr int components() { return C; }
    std::size_t node_count() const { return count_; }

    Cplx& at(std::size_t node, int comp = 0) { return data_[comp * count_ + node]; }
    const Cplx& at(std::size_t node, int comp = 0) const { return data_[comp * count_ + node]; }

    Cplx* component(int comp) { return data_.data() + comp * count_; }
    const Cplx* component(int comp) const { return data_.data() + comp * count_; }

  private:
    GridDomain dom_;
    std::size_t count_;
    std::vector<Cplx> data_;
};

using ScalarField = GridField<1>;
using VectorField = GridField<3>;
using BiquaternionField = GridField<4>;

/// Point-evaluation factories.  These are the construction boundary where
/// non-finite values are rejected (operators downstream assume finite input).
ScalarField make_scalar_field(const GridDomain& dom,
                              const std::function<Cplx(double, double, double)>& fn);
VectorField make_vector_field(
    const GridDomain& dom,
    const std::function<std::array<Cplx, 3>(double, double, double)>& fn);
BiquaternionField make_biquat_field(
    const GridDomain& dom, const std::function<Biquaternion(double, double, double)>& fn);

/// Throws std::invalid_argument if any component is NaN/Inf.
template <int C>
void ensure_finite(const GridField<C>& f, const char* what);

Biquaternion biquat_at(const BiquaternionField& f, std::size_t n);
void set_biquat(BiquaternionField& f, std::size_t n, const Biquaternion& q);

// Structure converters between field ranks.
BiquaternionField to_biquat(const ScalarField& f);
BiquaternionField to_biquat(const VectorField& f);
BiquaternionField combine(const ScalarField& s, const VectorField& v);
ScalarField scalar_part(const BiquaternionField& f);
VectorField vector_part(const BiquaternionField& f);
ScalarField component(const VectorField& f, int k);

// Pointwise algebra on fields (same domain required).
template <int C> GridField<C> add(const GridField<C>& a, const GridField<C>& b);
template <int C> GridField<C> sub(const GridField<C>& a, const GridField<C>& b);
template <int C> GridField<C> scale(Cplx s, const GridField<C>& a);
/// Pointwise multiplication by a scalar field.
template <int C> GridField<C> multiply(const ScalarField& s, const GridField<C>& a);
ScalarField reciprocal(const ScalarField& s);

} // namespace vekua
