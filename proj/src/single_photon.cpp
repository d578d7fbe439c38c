#include "homqed/single_photon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace homqed {

ScatteringMatrix amplitudes(double detuning, double gamma, Geometry geometry) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const cplx denom(detuning, gamma);
    ScatteringMatrix s;
    s.detuning = detuning;
    s.r = detuning / denom;
    s.t = cplx(0.0, -gamma) / denom;
    if (geometry == Geometry::embedded_reflector) std::swap(s.r, s.t);
    return s;
}

double unitarity_defect(const ScatteringMatrix& s) {
    const std::array<std::array<cplx, 2>, 2> m{{{s.r, s.t}, {s.t, s.r}}};
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cplx acc = std::conj(m[0][i]) * m[0][j] + std::conj(m[1][i]) * m[1][j];
            if (i == j) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

cplx smatrix_kernel(int alpha, int beta, double q, double gamma, Geometry geometry) {
    if ((alpha != 1 && alpha != 2) || (beta != 1 && beta != 2))
        throw std::invalid_argument("channels must be 1 or 2");
    return amplitudes(q, gamma, geometry).element(alpha, beta);
}

}  // namespace homqed
