#include "vekua/grid_calculus.hpp"

#include "vekua/detail/stencil.hpp"

namespace vekua {

template <int C>
GridField<C> partial(const GridField<C>& f, int axis) {
    const GridDomain& d = f.domain();
    GridField<C> out(d);
    const auto& n = d.res();
    const std::size_t stride[3] = {1, static_cast<std::size_t>(n[0]),
                                   static_cast<std::size_t>(n[0]) * n[1]};
    const int b1 = (axis + 1) % 3, b2 = (axis + 2) % 3;
    const double h = d.spacing(axis);
    for (int c = 0; c < C; ++c) {
        const Cplx* in = f.component(c);
        Cplx* o = out.component(c);
        for (int i2 = 0; i2 < n[b2]; ++i2)
            for (int i1 = 0; i1 < n[b1]; ++i1) {
                const std::size_t base = stride[b1] * i1 + stride[b2] * i2;
                detail::d1_line(in + base, o + base, n[axis], stride[axis], h);
            }
    }
    return out;
}

template GridField<1> partial(const GridField<1>&, int);
template GridField<3> partial(const GridField<3>&, int);
template GridField<4> partial(const GridField<4>&, int);

VectorField grad(const ScalarField& f) {
    VectorField out(f.domain());
    for (int k = 0; k < 3; ++k) {
        ScalarField d = partial(f, k);
        for (std::size_t n = 0; n < f.node_count(); ++n) out.at(n, k) = d.at(n);
    }
    return out;
}

ScalarField div(const VectorField& v) {
    ScalarField out(v.domain());
    for (int k = 0; k < 3; ++k) {
        VectorField d = partial(v, k);
        for (std::size_t n = 0; n < v.node_count(); ++n) out.at(n) += d.at(n, k);
    }
    return out;
}

VectorField rot(const VectorField& v) {
    const GridDomain& dom = v.domain();
    VectorField out(dom);
    VectorField d0 = partial(v, 0), d1 = partial(v, 1), d2 = partial(v, 2);
    for (std::size_t n = 0; n < v.node_count(); ++n) {
        out.at(n, 0) = d1.at(n, 2) - d2.at(n, 1);
        out.at(n, 1) = d2.at(n, 0) - d0.at(n, 2);
        out.at(n, 2) = d0.at(n, 1) - d1.at(n, 0);
    }
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    ScalarField out(f.domain());
    for (int k = 0; k < 3; ++k) {
        ScalarField dd = partial(partial(f, k), k);
        for (std::size_t n = 0; n < f.node_count(); ++n) out.at(n) += dd.at(n);
    }
    return out;
}

BiquaternionField dirac_left(const BiquaternionField& q) {
    BiquaternionField out(q.domain());
    for (int k = 1; k <= 3; ++k) {
        BiquaternionField d = partial(q, k - 1);
        const Biquaternion ek = Biquaternion::unit(k);
        for (std::size_t n = 0; n < q.node_count(); ++n)
            set_biquat(out, n, biquat_at(out, n) + ek * biquat_at(d, n));
    }
    return out;
}

BiquaternionField dirac_left(const ScalarField& q) { return dirac_left(to_biquat(q)); }

BiquaternionField dirac_right(const BiquaternionField& q) {
    BiquaternionField out(q.domain());
    for (int k = 1; k <= 3; ++k) {
        BiquaternionField d = partial(q, k - 1);
        const Biquaternion ek = Biquaternion::unit(k);
        for (std::size_t n = 0; n < q.node_count(); ++n)
            set_biquat(out, n, biquat_at(out, n) + biquat_at(d, n) * ek);
    }
    return out;
}

ScalarField leibniz_residual(const BiquaternionField& p, const BiquaternionField& q) {
    const GridDomain& dom = p.domain();
    BiquaternionField pq(dom);
    for (std::size_t n = 0; n < p.node_count(); ++n)
        set_biquat(pq, n, biquat_at(p, n) * biquat_at(q, n));

    BiquaternionField lhs = dirac_left(pq);
    BiquaternionField dp = dirac_left(p), dq = dirac_left(q);
    std::array<BiquaternionField, 3> dkq = {partial(q, 0), partial(q, 1), partial(q, 2)};

    ScalarField out(dom);
    for (std::size_t n = 0; n < p.node_count(); ++n) {
        const Biquaternion pn = biquat_at(p, n);
        Biquaternion rhs = biquat_at(dp, n) * biquat_at(q, n) +
                           quat_conj(pn) * biquat_at(dq, n);
        // 2 (Sc(PD))[Q] = -2 sum_k P_k d_k Q
        for (int k = 1; k <= 3; ++k)
            rhs = rhs - 2.0 * pn[k] * biquat_at(dkq[k - 1], n);
        out.at(n) = norm(biquat_at(lhs, n) - rhs);
    }
    return out;
}

} // namespace vekua
