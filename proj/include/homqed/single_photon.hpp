// single_photon.hpp: one-photon scattering amplitudes of the two-level emitter.

#pragma once

#include "homqed/core.hpp"

namespace homqed {

/// 2×2 one-photon S-matrix at a fixed detuning, reflection-symmetric
/// (r = r', t = t'). Entry convention: r is the same-channel amplitude s11 = s22,
/// t the cross-channel amplitude s12 = s21.
struct ScatteringMatrix {
    double detuning{0.0};
    cplx r{};
    cplx t{};

    double transmission() const { return std::norm(t); }
    double reflection() const { return std::norm(r); }

    /// s_{αβ} for channels α, β ∈ {1, 2}.
    cplx element(int alpha, int beta) const { return alpha == beta ? r : t; }
};

/// r = w/(w + iΓ), t = -iΓ/(w + iΓ) for the resonant link and the HOM splitter;
/// the two are exchanged for the embedded reflector.
ScatteringMatrix amplitudes(double detuning, double gamma,
                            Geometry geometry = Geometry::resonant_link);

/// max |(S†S - 1)_{ij}|.
double unitarity_defect(const ScatteringMatrix& s);

/// Smooth factor s_{αβ}(q) of the on-shell one-photon S-matrix; the momentum
/// delta is consumed analytically by the two-photon code.
cplx smatrix_kernel(int alpha, int beta, double q, double gamma, Geometry geometry);

}  // namespace homqed
