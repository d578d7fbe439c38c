// analytic.hpp: leading-order results for nearly monochromatic packets (Γ ≫ 1).

#pragma once

#include "homqed/core.hpp"
#include "homqed/quadrature.hpp"

namespace homqed::analytic {

struct CoherenceFactors {
    enum class Provenance { gaussian_closed_form, quadrature };

    double nu{1.0};    // overlap of the pair amplitude with its exchange
    double zeta{0.0};  // weight of the bound-state correction
    Provenance provenance{Provenance::gaussian_closed_form};
};

/// Two readings of the interaction correction to the HOM antibunching.
/// `splitting_formula` is δP = -2ζ T²(1 - 4R), which gives ζ/2 at balance;
/// `direct` is twice that, giving δP = ζ at balance. The exact two-photon path
/// selects `direct` (see oracle::factor_audit).
enum class HomCorrectionReading { direct, splitting_formula };

inline constexpr HomCorrectionReading kAuditedReading = HomCorrectionReading::direct;

/// (T - R)². Throws std::invalid_argument unless |T + R - 1| ≤ 1e-9.
double p0_hom_monochromatic(double transmission, double reflection);

/// T² + R² - 2νTR.
double p0_hom_delayed(double transmission, double reflection, double nu);

/// N⁻¹ Re ∫∫ dε dξ B̄(ε,ξ) B(ε,-ξ) with N = ∫∫|B|².
double coherence_nu(const PairAmplitude& pair,
                    const quadrature::QuadratureRule& rule = quadrature::QuadratureRule::adaptive());

/// N⁻¹ ∫ dε/(2πΓ) |∫ dξ B(ε,ξ)|² with N = (1 + δ_{ββ'}) ∫∫|B|².
double zeta_weight(const PairAmplitude& pair, double gamma,
                   const quadrature::QuadratureRule& rule = quadrature::QuadratureRule::adaptive());

CoherenceFactors coherence_factors(const PairAmplitude& pair, double gamma,
                                   const quadrature::QuadratureRule& rule =
                                       quadrature::QuadratureRule::adaptive());

// Gaussian closed forms.
double nu_gaussian(double delay);                     // e^{-Δ²}
double zeta_hom_gaussian(double gamma, double delay); // e^{-Δ²} / (√π Γ)
double zeta_blockade(double gamma, double delay);     // 1 / (√π Γ (1 + e^{Δ²}))
CoherenceFactors gaussian_coherence_factors(const ModelParams& params);

double delta_p_hom(double zeta12, double transmission, double reflection,
                   HomCorrectionReading reading = HomCorrectionReading::splitting_formula);

/// ζ₁₁ T² (1 - 4R).
double delta_p_res(double zeta11, double transmission, double reflection);

struct Asymptote {
    double p0{0.0};
    double delta{0.0};
    double total() const { return p0 + delta; }
};

/// Leading-order antibunching for Gaussian packets at the packet centre:
/// HOM inputs use p0_hom_delayed + delta_p_hom, resonance inputs use
/// P⁰ = 2TR + delta_p_res with ζ₁₁ = ζ_bl.
Asymptote antibunching_asymptote(const ModelParams& params,
                                 HomCorrectionReading reading = kAuditedReading);

}  // namespace homqed::analytic
