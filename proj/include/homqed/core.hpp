// core.hpp: model parameters, spectral profiles and incoming photon-pair states.
//
// Units: every frequency and momentum is measured in units of the packet
// width σ, every time in units of 1/σ. The TLS linewidth then only enters as
// Γ = γ/σ and the delay as Δ = στ.

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace homqed {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class Geometry {
    hom_split,           // photons enter through different channels
    embedded_reflector,  // TLS inside a waveguide: resonant photons reflected
    resonant_link,       // TLS linking two waveguides: resonant photons transmitted
};

std::string_view to_string(Geometry g);
Geometry geometry_from_string(std::string_view name);

struct Interval {
    double lo{0.0};
    double hi{0.0};
    double width() const { return hi - lo; }
};

class ModelParams {
public:
    double gamma() const { return gamma_; }
    double delay() const { return delay_; }
    double center() const { return center_; }
    Geometry geometry() const { return geometry_; }
    int in_channel() const { return beta_; }
    int in_channel_prime() const { return beta_prime_; }
    bool same_input_channel() const { return beta_ == beta_prime_; }

private:
    friend ModelParams make_params(double, double, double, Geometry, int, int);
    ModelParams() = default;

    double gamma_{1.0};
    double delay_{0.0};
    double center_{0.0};
    Geometry geometry_{Geometry::hom_split};
    int beta_{1};
    int beta_prime_{2};
};

/// Validated parameter bundle. Throws std::invalid_argument when Γ is not a
/// positive finite number, a channel is outside {1,2}, or the channel pair does
/// not fit the geometry (HOM needs distinct inputs, the resonance geometries
/// need identical ones).
ModelParams make_params(double gamma, double delay, double center, Geometry geometry,
                        int beta, int beta_prime);

/// Same as make_params with the canonical input channels of the geometry:
/// (1,2) for hom_split, (1,1) otherwise.
ModelParams make_params(double gamma, double delay, double center, Geometry geometry);

struct SpectralSample {
    double detuning{0.0};
    cplx amplitude{};
};

/// One-photon spectral amplitude g(q - w0), L²-normalised on the real line.
///
/// The Gaussian kind has an intensity |g|² of unit standard deviation:
///   g(q) = (2π)^{-1/4} exp(-(q - w0)² / 4).
/// Tabulated profiles are natural cubic splines through the samples (real and
/// imaginary parts separately), zero outside the sampled range, and are
/// rescaled on construction so that ∫|g|² = 1 holds exactly for the spline.
class SpectralProfile {
public:
    enum class Kind { gaussian, tabulated };

    static SpectralProfile gaussian(double center);
    static SpectralProfile tabulated(std::vector<SpectralSample> samples);

    Kind kind() const { return kind_; }
    double center() const { return center_; }
    double width() const { return 1.0; }

    cplx operator()(double q) const;

    /// Interval outside of which the amplitude is zero or below double
    /// precision relevance (±12 widths for the Gaussian).
    Interval support() const;

    /// ∫|g|² over the support, evaluated exactly for splines and by a fixed
    /// high-order rule for the Gaussian.
    double norm_squared() const;

private:
    SpectralProfile() = default;

    Kind kind_{Kind::gaussian};
    double center_{0.0};
    double scale_{1.0};
    std::vector<double> x_;
    std::vector<cplx> y_;
    std::vector<cplx> m_;  // second derivatives of the spline
};

/// Two-photon incoming amplitude B(q, q') for photons entering through
/// channels (β, β'):  B(q,q') = g_a(q) g_b(q') exp(i q Δ), symmetrised as
/// ½[B(q,q') + B(q',q)] when both photons share a channel.
class PairAmplitude {
public:
    PairAmplitude(SpectralProfile a, SpectralProfile b, double delay, bool symmetrized);

    cplx operator()(double q, double q_prime) const;

    const SpectralProfile& profile_a() const { return a_; }
    const SpectralProfile& profile_b() const { return b_; }
    double delay() const { return delay_; }
    bool symmetrized() const { return symmetrized_; }
    bool is_gaussian() const;

    /// Smallest interval containing the supports of both profiles.
    Interval support() const;

private:
    cplx raw(double q, double q_prime) const;

    SpectralProfile a_;
    SpectralProfile b_;
    double delay_;
    bool symmetrized_;
};

PairAmplitude make_pair_amplitude(const ModelParams& params);
PairAmplitude make_pair_amplitude(const ModelParams& params, const SpectralProfile& profile);

/// Centre-of-mass and relative variables of an outgoing momentum pair.
struct PairKinematics {
    double eps{0.0};  // k + k'
    double xi{0.0};   // (k - k') / 2
    cplx omega{};     // eps/2 + iΓ
    cplx a_prod{};    // (k + iΓ)(k' + iΓ) = omega² - xi²
};

PairKinematics pair_kinematics(double k, double k_prime, double gamma);

}  // namespace homqed
