#pragma once

#include <cstddef>

#include "vekua/biquaternion.hpp"

namespace vekua::detail {

/// One strided 1D derivative line: central differences inside, one-sided
/// 3-point stencils at the two ends.  Both are second order; both are exact
/// on polynomials of degree <= 2.  Shared by the 3D and 2D operators.
inline void d1_line(const Cplx* in, Cplx* out, int m, std::size_t stride, double h) {
    const double c = 1.0 / (2.0 * h);
    out[0] = c * (-3.0 * in[0] + 4.0 * in[stride] - in[2 * stride]);
    for (int i = 1; i + 1 < m; ++i)
        out[i * stride] = c * (in[(i + 1) * stride] - in[(i - 1) * stride]);
    const std::size_t e = static_cast<std::size_t>(m - 1) * stride;
    out[e] = c * (3.0 * in[e] - 4.0 * in[e - stride] + in[e - 2 * stride]);
}

} // namespace vekua::detail
