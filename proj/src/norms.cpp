#include "vekua/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace vekua {

template <int C>
double interior_rms(const GridField<C>& f, int exclude) {
    const GridDomain& d = f.domain();
    const auto& n = d.res();
    for (int k = 0; k < 3; ++k)
        if (n[k] - 2 * exclude < 1)
            throw std::invalid_argument("interior_rms: boundary exclusion leaves no nodes");
    double acc = 0.0;
    std::size_t cnt = 0;
    for (int k = exclude; k < n[2] - exclude; ++k)
        for (int j = exclude; j < n[1] - exclude; ++j)
            for (int i = exclude; i < n[0] - exclude; ++i) {
                const std::size_t idx = d.index(i, j, k);
                for (int c = 0; c < C; ++c) acc += std::norm(f.at(idx, c));
                ++cnt;
            }
    return std::sqrt(acc / static_cast<double>(cnt));
}

template double interior_rms(const GridField<1>&, int);
template double interior_rms(const GridField<3>&, int);
template double interior_rms(const GridField<4>&, int);

double rel_of(double num, std::initializer_list<double> scales) {
    double den = 0.0;
    for (double s : scales) den += s;
    if (num == 0.0) return 0.0;
    return num / std::max(den, 1e-300);
}

template <int C>
double noise_floor(const GridField<C>& f, int deriv_order, int exclude) {
    const GridDomain& d = f.domain();
    double h = d.spacing(0);
    for (int k = 1; k < 3; ++k) h = std::min(h, d.spacing(k));
    double amp = 1.0;
    for (int o = 0; o < deriv_order; ++o) amp /= h;
    return 1e-8 * interior_rms(f, exclude) * amp;
}

template double noise_floor(const GridField<1>&, int, int);
template double noise_floor(const GridField<3>&, int, int);
template double noise_floor(const GridField<4>&, int, int);

} // namespace vekua
