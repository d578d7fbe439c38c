#include "homqed/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace homqed {

namespace {

constexpr double kGaussianHalfWidth = 12.0;

bool valid_channel(int c) { return c == 1 || c == 2; }

// 4-point Gauss–Legendre on [-1, 1]; exact for the degree-6 polynomial |S|²
// of a cubic spline piece.
constexpr std::array<double, 4> kGl4Nodes{-0.8611363115940526, -0.3399810435848563,
                                          0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGl4Weights{0.3478548451374538, 0.6521451548625461,
                                            0.6521451548625461, 0.3478548451374538};

}  // namespace

std::string_view to_string(Geometry g) {
    switch (g) {
    case Geometry::hom_split: return "hom";
    case Geometry::embedded_reflector: return "reflector";
    case Geometry::resonant_link: return "link";
    }
    return "unknown";
}

Geometry geometry_from_string(std::string_view name) {
    if (name == "hom") return Geometry::hom_split;
    if (name == "reflector") return Geometry::embedded_reflector;
    if (name == "link") return Geometry::resonant_link;
    throw std::invalid_argument("unknown geometry '" + std::string(name) +
                                "' (expected hom, reflector or link)");
}

ModelParams make_params(double gamma, double delay, double center, Geometry geometry,
                        int beta, int beta_prime) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be a positive finite number");
    if (!std::isfinite(delay) || !std::isfinite(center))
        throw std::invalid_argument("delay and center must be finite");
    if (!valid_channel(beta) || !valid_channel(beta_prime))
        throw std::invalid_argument("input channels must be 1 or 2");
    if (geometry == Geometry::hom_split && beta == beta_prime)
        throw std::invalid_argument("hom geometry needs photons in different input channels");
    if (geometry != Geometry::hom_split && beta != beta_prime)
        throw std::invalid_argument("resonance geometries need both photons in one input channel");

    ModelParams p;
    p.gamma_ = gamma;
    p.delay_ = delay;
    p.center_ = center;
    p.geometry_ = geometry;
    p.beta_ = beta;
    p.beta_prime_ = beta_prime;
    return p;
}

ModelParams make_params(double gamma, double delay, double center, Geometry geometry) {
    const int beta_prime = geometry == Geometry::hom_split ? 2 : 1;
    return make_params(gamma, delay, center, geometry, 1, beta_prime);
}

// ---------------------------------------------------------------------------
// SpectralProfile

SpectralProfile SpectralProfile::gaussian(double center) {
    if (!std::isfinite(center)) throw std::invalid_argument("profile center must be finite");
    SpectralProfile p;
    p.kind_ = Kind::gaussian;
    p.center_ = center;
    return p;
}

SpectralProfile SpectralProfile::tabulated(std::vector<SpectralSample> samples) {
    if (samples.size() < 4)
        throw std::invalid_argument("tabulated profile needs at least 4 samples");
    std::sort(samples.begin(), samples.end(),
              [](const auto& l, const auto& r) { return l.detuning < r.detuning; });
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].detuning > samples[i - 1].detuning))
            throw std::invalid_argument("tabulated profile detunings must be distinct");
    }

    SpectralProfile p;
    p.kind_ = Kind::tabulated;
    const std::size_t n = samples.size();
    p.x_.resize(n);
    p.y_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.x_[i] = samples[i].detuning;
        p.y_[i] = samples[i].amplitude;
    }

    // Natural spline: tridiagonal solve for the second derivatives.
    p.m_.assign(n, cplx{});
    std::vector<double> c(n, 0.0);
    std::vector<cplx> d(n, cplx{});
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = p.x_[i] - p.x_[i - 1];
        const double h1 = p.x_[i + 1] - p.x_[i];
        const double a = h0 / 6.0;
        const double b = (h0 + h1) / 3.0;
        const double cc = h1 / 6.0;
        const cplx rhs = (p.y_[i + 1] - p.y_[i]) / h1 - (p.y_[i] - p.y_[i - 1]) / h0;
        const double denom = b - a * c[i - 1];
        c[i] = cc / denom;
        d[i] = (rhs - a * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) p.m_[i] = d[i] - c[i] * p.m_[i + 1];

    // Intensity-weighted mean of the samples.
    double moment = 0.0;
    double total = 0.0;
    for (const auto& s : samples) {
        moment += std::norm(s.amplitude) * s.detuning;
        total += std::norm(s.amplitude);
    }
    p.center_ = total > 0.0 ? moment / total : 0.5 * (p.x_.front() + p.x_.back());

    const double n2 = p.norm_squared();
    if (!(n2 > 0.0)) throw std::invalid_argument("tabulated profile has zero norm");
    p.scale_ = 1.0 / std::sqrt(n2);
    return p;
}

cplx SpectralProfile::operator()(double q) const {
    if (kind_ == Kind::gaussian) {
        const double x = q - center_;
        return {std::pow(2.0 * kPi, -0.25) * std::exp(-0.25 * x * x), 0.0};
    }
    if (q < x_.front() || q > x_.back()) return {};
    const auto it = std::upper_bound(x_.begin(), x_.end(), q);
    std::size_t hi = static_cast<std::size_t>(it - x_.begin());
    if (hi >= x_.size()) hi = x_.size() - 1;
    const std::size_t lo = hi - 1;
    const double h = x_[hi] - x_[lo];
    const double a = (x_[hi] - q) / h;
    const double b = (q - x_[lo]) / h;
    const cplx value = a * y_[lo] + b * y_[hi] +
                       ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * (h * h / 6.0);
    return scale_ * value;
}

Interval SpectralProfile::support() const {
    if (kind_ == Kind::gaussian)
        return {center_ - kGaussianHalfWidth, center_ + kGaussianHalfWidth};
    return {x_.front(), x_.back()};
}

double SpectralProfile::norm_squared() const {
    if (kind_ == Kind::gaussian) {
        // Trapezoid sums converge geometrically for Gaussians.
        const Interval s = support();
        const int n = 2400;
        const double h = s.width() / n;
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            sum += w * std::norm((*this)(s.lo + i * h));
        }
        return sum * h;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        const double mid = 0.5 * (x_[i] + x_[i + 1]);
        const double half = 0.5 * (x_[i + 1] - x_[i]);
        for (std::size_t j = 0; j < kGl4Nodes.size(); ++j)
            sum += kGl4Weights[j] * half * std::norm((*this)(mid + half * kGl4Nodes[j]));
    }
    return sum;
}

// ---------------------------------------------------------------------------
// PairAmplitude

PairAmplitude::PairAmplitude(SpectralProfile a, SpectralProfile b, double delay, bool symmetrized)
    : a_(std::move(a)), b_(std::move(b)), delay_(delay), symmetrized_(symmetrized) {
    if (!std::isfinite(delay)) throw std::invalid_argument("delay must be finite");
}

cplx PairAmplitude::raw(double q, double q_prime) const {
    return a_(q) * b_(q_prime) * std::polar(1.0, q * delay_);
}

cplx PairAmplitude::operator()(double q, double q_prime) const {
    if (!symmetrized_) return raw(q, q_prime);
    return 0.5 * (raw(q, q_prime) + raw(q_prime, q));
}

bool PairAmplitude::is_gaussian() const {
    return a_.kind() == SpectralProfile::Kind::gaussian &&
           b_.kind() == SpectralProfile::Kind::gaussian;
}

Interval PairAmplitude::support() const {
    const Interval sa = a_.support();
    const Interval sb = b_.support();
    return {std::min(sa.lo, sb.lo), std::max(sa.hi, sb.hi)};
}

PairAmplitude make_pair_amplitude(const ModelParams& params) {
    return make_pair_amplitude(params, SpectralProfile::gaussian(params.center()));
}

PairAmplitude make_pair_amplitude(const ModelParams& params, const SpectralProfile& profile) {
    return PairAmplitude(profile, profile, params.delay(), params.same_input_channel());
}

PairKinematics pair_kinematics(double k, double k_prime, double gamma) {
    PairKinematics kin;
    kin.eps = k + k_prime;
    kin.xi = 0.5 * (k - k_prime);
    kin.omega = cplx(0.5 * kin.eps, gamma);
    kin.a_prod = cplx(k, gamma) * cplx(k_prime, gamma);
    return kin;
}

}  // namespace homqed
