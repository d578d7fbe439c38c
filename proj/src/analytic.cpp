#include "homqed/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "homqed/single_photon.hpp"

namespace homqed::analytic {

namespace {

using quadrature::GaussHermiteRule;
using quadrature::LineDomain;
using quadrature::PanelOptions;
using quadrature::QuadratureRule;
using quadrature::Values;

void require_probabilities(double t, double r) {
    if (std::abs(t + r - 1.0) > 1e-9)
        throw std::invalid_argument("transmission and reflection must sum to one");
}

// Integrates over the pair plane in (ε, ξ). `inner` maps (ε, ξ) to a Values<N>
// bundle, `outer` turns the ξ-integrated bundle at ε into a Values<M>.
template <class Inner, class Outer>
auto pair_plane(const PairAmplitude& pair, const QuadratureRule& rule, Inner&& inner,
                Outer&& outer) {
    const Interval s = pair.support();
    if (rule.kind == QuadratureRule::Kind::gauss_hermite) {
        if (!pair.is_gaussian())
            throw std::invalid_argument("Gauss-Hermite rules need Gaussian profiles");
        const GaussHermiteRule gh(rule.order);
        const double w0 = pair.profile_a().center();
        return 2.0 * quadrature::integrate_gauss_hermite_full(
                         [&](double u) {
                             const double eps = 2.0 * (w0 + u);
                             return outer(eps, quadrature::integrate_gauss_hermite_full(
                                                   [&](double xi) { return inner(eps, xi); }, gh,
                                                   LineDomain{0.0, std::sqrt(2.0)}));
                         },
                         gh, LineDomain{0.0, 1.0});
    }
    PanelOptions in_opt = rule.panel_options();
    in_opt.rel_tol = 0.1 * rule.tolerance;
    in_opt.abs_tol = 1e-18;
    PanelOptions out_opt = rule.panel_options();
    out_opt.abs_tol = 1e-18;
    return quadrature::integrate_adaptive(
               [&](double eps) {
                   const double xl = std::min(0.5 * eps - s.lo, s.hi - 0.5 * eps);
                   using V = std::decay_t<decltype(inner(eps, 0.0))>;
                   V v{};
                   if (xl > 0.0) {
                       v = quadrature::integrate_adaptive(
                               [&](double xi) { return inner(eps, xi); }, Interval{-xl, xl},
                               in_opt)
                               .value;
                   }
                   return outer(eps, v);
               },
               Interval{2.0 * s.lo, 2.0 * s.hi}, out_opt)
        .value;
}

}  // namespace

double p0_hom_monochromatic(double transmission, double reflection) {
    require_probabilities(transmission, reflection);
    const double d = transmission - reflection;
    return d * d;
}

double p0_hom_delayed(double transmission, double reflection, double nu) {
    require_probabilities(transmission, reflection);
    if (nu < -1e-12 || nu > 1.0 + 1e-12) throw std::invalid_argument("nu must lie in [0, 1]");
    return transmission * transmission + reflection * reflection -
           2.0 * nu * transmission * reflection;
}

double coherence_nu(const PairAmplitude& pair, const QuadratureRule& rule) {
    const auto total = pair_plane(
        pair, rule,
        [&](double eps, double xi) {
            Values<2> v;
            const cplx b = pair(0.5 * eps + xi, 0.5 * eps - xi);
            const cplx b_swapped = pair(0.5 * eps - xi, 0.5 * eps + xi);
            v[0] = std::norm(b);
            v[1] = (std::conj(b) * b_swapped).real();
            return v;
        },
        [](double, const Values<2>& v) { return v; });
    return total[1] / total[0];
}

double zeta_weight(const PairAmplitude& pair, double gamma, const QuadratureRule& rule) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const auto total = pair_plane(
        pair, rule,
        [&](double eps, double xi) {
            Values<3> v;
            const cplx b = pair(0.5 * eps + xi, 0.5 * eps - xi);
            v[0] = std::norm(b);
            v[1] = b.real();
            v[2] = b.imag();
            return v;
        },
        [](double, const Values<3>& v) {
            Values<2> out;
            out[0] = v[0];
            out[1] = v[1] * v[1] + v[2] * v[2];
            return out;
        });
    const double n = (pair.symmetrized() ? 2.0 : 1.0) * total[0];
    return total[1] / (2.0 * kPi * gamma * n);
}

CoherenceFactors coherence_factors(const PairAmplitude& pair, double gamma,
                                   const QuadratureRule& rule) {
    return {coherence_nu(pair, rule), zeta_weight(pair, gamma, rule),
            CoherenceFactors::Provenance::quadrature};
}

double nu_gaussian(double delay) { return std::exp(-delay * delay); }

double zeta_hom_gaussian(double gamma, double delay) {
    return std::exp(-delay * delay) / (std::sqrt(kPi) * gamma);
}

double zeta_blockade(double gamma, double delay) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    // 1/(1 + e^{Δ²}) written to stay finite for large delays.
    const double d2 = delay * delay;
    return std::exp(-d2) / (std::sqrt(kPi) * gamma * (1.0 + std::exp(-d2)));
}

CoherenceFactors gaussian_coherence_factors(const ModelParams& params) {
    const double delay = params.delay();
    const double zeta = params.same_input_channel() ? zeta_blockade(params.gamma(), delay)
                                                    : zeta_hom_gaussian(params.gamma(), delay);
    return {params.same_input_channel() ? 1.0 : nu_gaussian(delay), zeta,
            CoherenceFactors::Provenance::gaussian_closed_form};
}

double delta_p_hom(double zeta12, double transmission, double reflection,
                   HomCorrectionReading reading) {
    require_probabilities(transmission, reflection);
    const double splitting = -2.0 * zeta12 * transmission * transmission * (1.0 - 4.0 * reflection);
    return reading == HomCorrectionReading::direct ? 2.0 * splitting : splitting;
}

double delta_p_res(double zeta11, double transmission, double reflection) {
    require_probabilities(transmission, reflection);
    return zeta11 * transmission * transmission * (1.0 - 4.0 * reflection);
}

Asymptote antibunching_asymptote(const ModelParams& params, HomCorrectionReading reading) {
    // The reflector is the link with the outgoing channels relabelled, so its
    // antibunching follows from the link amplitudes.
    const Geometry g = params.same_input_channel() ? Geometry::resonant_link : params.geometry();
    const ScatteringMatrix s = amplitudes(params.center(), params.gamma(), g);
    const double t = s.transmission();
    const double r = 1.0 - t;
    const CoherenceFactors f = gaussian_coherence_factors(params);
    if (params.same_input_channel())
        return {2.0 * t * r, delta_p_res(f.zeta, t, r)};
    return {p0_hom_delayed(t, r, f.nu), delta_p_hom(f.zeta, t, r, reading)};
}

}  // namespace homqed::analytic
