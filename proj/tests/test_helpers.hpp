#pragma once

#include <random>

#include "vekua/grid.hpp"
#include "vekua/norms.hpp"

namespace testutil {

using vekua::Biquaternion;
using vekua::Cplx;

inline Biquaternion random_biquat(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto c = [&] { return Cplx(u(rng), u(rng)); };
    return {c(), c(), c(), c()};
}

inline vekua::GridDomain unit_box(int n) {
    return vekua::GridDomain({0, 0, 0}, {1, 1, 1}, {n, n, n});
}

inline vekua::GridDomain cyl_box(int n) {
    return vekua::GridDomain({1, 1, 0}, {1, 1, 1}, {n, n, n});
}

/// Random trivariate polynomial of total degree <= deg with complex
/// coefficients; smooth, deterministic under the caller's rng.
struct RandomPoly {
    struct Term {
        int a, b, c;
        Cplx coeff;
    };
    std::vector<Term> terms;

    static RandomPoly make(std::mt19937& rng, int deg) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        RandomPoly p;
        for (int a = 0; a <= deg; ++a)
            for (int b = 0; a + b <= deg; ++b)
                for (int c = 0; a + b + c <= deg; ++c)
                    p.terms.push_back({a, b, c, Cplx(u(rng), u(rng)) / double(1 + a + b + c)});
        return p;
    }
    Cplx operator()(double x, double y, double z) const {
        Cplx v{};
        for (const auto& t : terms) {
            double m = 1.0;
            for (int i = 0; i < t.a; ++i) m *= x;
            for (int i = 0; i < t.b; ++i) m *= y;
            for (int i = 0; i < t.c; ++i) m *= z;
            v += t.coeff * m;
        }
        return v;
    }
};

inline vekua::BiquaternionField random_poly_biquat(const vekua::GridDomain& dom,
                                                   std::mt19937& rng, int deg) {
    std::array<RandomPoly, 4> polys{RandomPoly::make(rng, deg), RandomPoly::make(rng, deg),
                                    RandomPoly::make(rng, deg), RandomPoly::make(rng, deg)};
    return vekua::make_biquat_field(dom, [&](double x, double y, double z) {
        return Biquaternion{polys[0](x, y, z), polys[1](x, y, z), polys[2](x, y, z),
                            polys[3](x, y, z)};
    });
}

inline vekua::VectorField random_poly_vector(const vekua::GridDomain& dom, std::mt19937& rng,
                                             int deg) {
    std::array<RandomPoly, 3> polys{RandomPoly::make(rng, deg), RandomPoly::make(rng, deg),
                                    RandomPoly::make(rng, deg)};
    return vekua::make_vector_field(dom, [&](double x, double y, double z) {
        return std::array<Cplx, 3>{polys[0](x, y, z), polys[1](x, y, z), polys[2](x, y, z)};
    });
}

} // namespace testutil
