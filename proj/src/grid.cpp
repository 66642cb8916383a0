#include "vekua/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vekua {

GridDomain::GridDomain(std::array<double, 3> origin, std::array<double, 3> extent,
                       std::array<int, 3> res)
    : origin_(origin), extent_(extent), res_(res) {
    for (int k = 0; k < 3; ++k) {
        if (!(extent_[k] > 0.0) || !std::isfinite(extent_[k]) || !std::isfinite(origin_[k]))
            throw std::invalid_argument("GridDomain: extent must be positive and finite");
        if (res_[k] < 5)
            throw std::invalid_argument("GridDomain: resolution must be >= 5 per axis, got " +
                                        std::to_string(res_[k]));
        spacing_[k] = extent_[k] / (res_[k] - 1);
    }
    count_ = static_cast<std::size_t>(res_[0]) * res_[1] * res_[2];
}

template <int C>
void ensure_finite(const GridField<C>& f, const char* what) {
    for (int c = 0; c < C; ++c) {
        const Cplx* p = f.component(c);
        for (std::size_t n = 0; n < f.node_count(); ++n)
            if (!std::isfinite(p[n].real()) || !std::isfinite(p[n].imag()))
                throw std::invalid_argument(std::string(what) + ": non-finite value at node " +
                                            std::to_string(n));
    }
}
template void ensure_finite<1>(const GridField<1>&, const char*);
template void ensure_finite<3>(const GridField<3>&, const char*);
template void ensure_finite<4>(const GridField<4>&, const char*);

ScalarField make_scalar_field(const GridDomain& dom,
                              const std::function<Cplx(double, double, double)>& fn) {
    ScalarField f(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        auto p = dom.point(n);
        f.at(n) = fn(p[0], p[1], p[2]);
    }
    ensure_finite(f, "scalar field");
    return f;
}

VectorField make_vector_field(
    const GridDomain& dom, const std::function<std::array<Cplx, 3>(double, double, double)>& fn) {
    VectorField f(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        auto p = dom.point(n);
        auto v = fn(p[0], p[1], p[2]);
        for (int c = 0; c < 3; ++c) f.at(n, c) = v[c];
    }
    ensure_finite(f, "vector field");
    return f;
}

BiquaternionField make_biquat_field(const GridDomain& dom,
                                    const std::function<Biquaternion(double, double, double)>& fn) {
    BiquaternionField f(dom);
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
        auto p = dom.point(n);
        set_biquat(f, n, fn(p[0], p[1], p[2]));
    }
    ensure_finite(f, "biquaternion field");
    return f;
}

Biquaternion biquat_at(const BiquaternionField& f, std::size_t n) {
    return {f.at(n, 0), f.at(n, 1), f.at(n, 2), f.at(n, 3)};
}

void set_biquat(BiquaternionField& f, std::size_t n, const Biquaternion& q) {
    f.at(n, 0) = q.q0;
    f.at(n, 1) = q.q1;
    f.at(n, 2) = q.q2;
    f.at(n, 3) = q.q3;
}

static void require_same_domain(const GridDomain& a, const GridDomain& b) {
    if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

BiquaternionField to_biquat(const ScalarField& f) {
    BiquaternionField out(f.domain());
    for (std::size_t n = 0; n < f.node_count(); ++n) out.at(n, 0) = f.at(n);
    return out;
}

BiquaternionField to_biquat(const VectorField& f) {
    BiquaternionField out(f.domain());
    for (int c = 0; c < 3; ++c)
        for (std::size_t n = 0; n < f.node_count(); ++n) out.at(n, c + 1) = f.at(n, c);
    return out;
}

BiquaternionField combine(const ScalarField& s, const VectorField& v) {
    require_same_domain(s.domain(), v.domain());
    BiquaternionField out(s.domain());
    for (std::size_t n = 0; n < s.node_count(); ++n) out.at(n, 0) = s.at(n);
    for (int c = 0; c < 3; ++c)
        for (std::size_t n = 0; n < v.node_count(); ++n) out.at(n, c + 1) = v.at(n, c);
    return out;
}

ScalarField scalar_part(const BiquaternionField& f) {
    ScalarField out(f.domain());
    for (std::size_t n = 0; n < f.node_count(); ++n) out.at(n) = f.at(n, 0);
    return out;
}

VectorField vector_part(const BiquaternionField& f) {
    VectorField out(f.domain());
    for (int c = 0; c < 3; ++c)
        for (std::size_t n = 0; n < f.node_count(); ++n) out.at(n, c) = f.at(n, c + 1);
    return out;
}

ScalarField component(const VectorField& f, int k) {
    ScalarField out(f.domain());
    for (std::size_t n = 0; n < f.node_count(); ++n) out.at(n) = f.at(n, k);
    return out;
}

template <int C>
GridField<C> add(const GridField<C>& a, const GridField<C>& b) {
    require_same_domain(a.domain(), b.domain());
    GridField<C> out(a.domain());
    for (int c = 0; c < C; ++c)
        for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n, c) = a.at(n, c) + b.at(n, c);
    return out;
}

template <int C>
GridField<C> sub(const GridField<C>& a, const GridField<C>& b) {
    require_same_domain(a.domain(), b.domain());
    GridField<C> out(a.domain());
    for (int c = 0; c < C; ++c)
        for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n, c) = a.at(n, c) - b.at(n, c);
    return out;
}

template <int C>
GridField<C> scale(Cplx s, const GridField<C>& a) {
    GridField<C> out(a.domain());
    for (int c = 0; c < C; ++c)
        for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n, c) = s * a.at(n, c);
    return out;
}

template <int C>
GridField<C> multiply(const ScalarField& s, const GridField<C>& a) {
    require_same_domain(s.domain(), a.domain());
    GridField<C> out(a.domain());
    for (int c = 0; c < C; ++c)
        for (std::size_t n = 0; n < a.node_count(); ++n) out.at(n, c) = s.at(n) * a.at(n, c);
    return out;
}

ScalarField reciprocal(const ScalarField& s) {
    ScalarField out(s.domain());
    for (std::size_t n = 0; n < s.node_count(); ++n) out.at(n) = 1.0 / s.at(n);
    return out;
}

template GridField<1> add(const GridField<1>&, const GridField<1>&);
template GridField<3> add(const GridField<3>&, const GridField<3>&);
template GridField<4> add(const GridField<4>&, const GridField<4>&);
template GridField<1> sub(const GridField<1>&, const GridField<1>&);
template GridField<3> sub(const GridField<3>&, const GridField<3>&);
template GridField<4> sub(const GridField<4>&, const GridField<4>&);
template GridField<1> scale(Cplx, const GridField<1>&);
template GridField<3> scale(Cplx, const GridField<3>&);
template GridField<4> scale(Cplx, const GridField<4>&);
template GridField<1> multiply(const ScalarField&, const GridField<1>&);
template GridField<3> multiply(const ScalarField&, const GridField<3>&);
template GridField<4> multiply(const ScalarField&, const GridField<4>&);

} // namespace vekua
