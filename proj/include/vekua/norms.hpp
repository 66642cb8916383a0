#pragma once

#include <initializer_list>

#include "vekua/grid.hpp"

namespace vekua {

/// RMS over interior nodes, all components pooled.  `exclude` is the boundary
/// layer depth left out (one-sided stencils pollute constants there).
template <int C>
double interior_rms(const GridField<C>& f, int exclude = 2);

/// num / max(sum of scales, tiny); 0 when num is 0.
double rel_of(double num, std::initializer_list<double> scales);

/// Noise floor for residual denominators: stencils applied to exact data
/// leave rounding noise of order 1e-16 / h per derivative, which would turn
/// degenerate 0/0 residuals into O(1) ratios.  The floor sits far above that
/// noise and far below any genuine h^2 residual at admissible resolutions.
template <int C>
double noise_floor(const GridField<C>& f, int deriv_order, int exclude = 2);

/// Residuals at or below this level are considered exactly satisfied
/// (e.g. refinement-ratio gates skip them).
inline constexpr double kDegenerateResidual = 1e-7;

} // namespace vekua
