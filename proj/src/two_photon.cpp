#include "homqed/two_photon.hpp"

#include <cmath>
#include <stdexcept>

#include "homqed/single_photon.hpp"

namespace homqed {

namespace {

using quadrature::GaussHermiteRule;
using quadrature::LineDomain;
using quadrature::PanelOptions;
using quadrature::QuadratureRule;
using quadrature::Values;

const double kSqrt2 = std::sqrt(2.0);

// Ordered outgoing pairs (1,1), (1,2), (2,1), (2,2).
constexpr std::array<std::array<int, 2>, 4> kPairs{{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};

std::array<cplx, 4> independent_all(const PairAmplitude& pair, double k, double k_prime,
                                     const ModelParams& params) {
    const ScatteringMatrix sk = amplitudes(k, params.gamma(), params.geometry());
    const ScatteringMatrix skp = amplitudes(k_prime, params.gamma(), params.geometry());
    const int b = params.in_channel();
    const int bp = params.in_channel_prime();
    const cplx direct = pair(k, k_prime);
    const cplx exchanged = pair(k_prime, k);
    std::array<cplx, 4> out{};
    for (std::size_t j = 0; j < kPairs.size(); ++j) {
        const int a = kPairs[j][0];
        const int ap = kPairs[j][1];
        out[j] = sk.element(a, b) * skp.element(ap, bp) * direct +
                 sk.element(a, bp) * skp.element(ap, b) * exchanged;
    }
    return out;
}

// Half-length of the relative-momentum segment at fixed ε on which both
// momenta stay inside the support.
double xi_limit(const Interval& support, double eps) {
    return std::min(0.5 * eps - support.lo, support.hi - 0.5 * eps);
}

void require_interaction_support(double gamma) {
    if (gamma < kMinInteractionGamma)
        throw std::invalid_argument("interaction integrals need gamma >= 0.1");
}

void require_gaussian_envelope(const PairAmplitude& pair) {
    if (!pair.is_gaussian() || pair.profile_a().center() != pair.profile_b().center())
        throw std::invalid_argument(
            "Gauss-Hermite rules need two Gaussian profiles with a common centre");
}

// ∫ dξ B(ε/2+ξ, ε/2-ξ) / (Ω² - ξ²)
cplx bound_integral(const PairAmplitude& pair, double eps, double gamma,
                    const QuadratureRule& rule) {
    const cplx omega(0.5 * eps, gamma);
    const cplx omega2 = omega * omega;
    auto integrand = [&](double xi) {
        return pair(0.5 * eps + xi, 0.5 * eps - xi) / (omega2 - xi * xi);
    };
    if (rule.kind == QuadratureRule::Kind::gauss_hermite) {
        require_gaussian_envelope(pair);
        const GaussHermiteRule gh(rule.order);
        return quadrature::integrate_gauss_hermite_full(integrand, gh, LineDomain{0.0, kSqrt2});
    }
    const double xl = xi_limit(pair.support(), eps);
    if (!(xl > 0.0)) return {};
    PanelOptions opt = rule.panel_options();
    opt.abs_tol = 1e-16;
    opt.poles = {omega, -omega};
    return quadrature::integrate_adaptive(integrand, Interval{-xl, xl}, opt).value;
}

}  // namespace

cplx independent_amplitude(int alpha, int alpha_prime, const PairAmplitude& pair, double k,
                           double k_prime, const ModelParams& params) {
    if ((alpha != 1 && alpha != 2) || (alpha_prime != 1 && alpha_prime != 2))
        throw std::invalid_argument("channels must be 1 or 2");
    return independent_all(pair, k, k_prime, params)[2 * (alpha - 1) + (alpha_prime - 1)];
}

cplx interaction_amplitude(double k, double k_prime, const PairAmplitude& pair,
                           const ModelParams& params, const QuadratureRule& rule) {
    const double gamma = params.gamma();
    require_interaction_support(gamma);
    const PairKinematics kin = pair_kinematics(k, k_prime, gamma);
    const cplx integral = bound_integral(pair, kin.eps, gamma, rule);
    return -(4.0 * gamma * gamma * kin.omega / kin.a_prod) * integral / (2.0 * kPi);
}

OutgoingAmplitude::OutgoingAmplitude(int alpha, int alpha_prime, PairAmplitude pair,
                                     ModelParams params, TwoPhotonOptions options)
    : alpha_(alpha),
      alpha_prime_(alpha_prime),
      pair_(std::move(pair)),
      params_(params),
      options_(options) {
    if ((alpha != 1 && alpha != 2) || (alpha_prime != 1 && alpha_prime != 2))
        throw std::invalid_argument("channels must be 1 or 2");
}

cplx OutgoingAmplitude::operator()(double k, double k_prime) const {
    cplx value{};
    if (options_.include_independent)
        value += independent_amplitude(alpha_, alpha_prime_, pair_, k, k_prime, params_);
    if (options_.include_interaction) {
        value += cplx(0.0, -options_.interaction_weight) *
                 interaction_amplitude(k, k_prime, pair_, params_, options_.rule);
    }
    return value;
}

OutgoingAmplitude outgoing_amplitude(int alpha, int alpha_prime, const PairAmplitude& pair,
                                     const ModelParams& params, const TwoPhotonOptions& options) {
    return OutgoingAmplitude(alpha, alpha_prime, pair, params, options);
}

// ---------------------------------------------------------------------------
// ProbabilityTable

double ProbabilityTable::sum() const {
    double s = 0.0;
    for (const auto& row : entries)
        for (const auto& e : row) s += e.total();
    return s;
}

double ProbabilityTable::unitarity_defect() const { return std::abs(sum() - 1.0); }

double ProbabilityTable::antibunching() const { return probability(1, 2) + probability(2, 1); }
double ProbabilityTable::antibunching_p0() const { return at(1, 2).p0 + at(2, 1).p0; }
double ProbabilityTable::antibunching_delta() const {
    return at(1, 2).delta() + at(2, 1).delta();
}

double ProbabilityTable::p_hom() const {
    if (beta == beta_prime) throw std::logic_error("p_hom needs photons in different inputs");
    return antibunching();
}

double ProbabilityTable::p_res() const {
    if (beta != beta_prime) throw std::logic_error("p_res needs photons in one input channel");
    return antibunching();
}

// ---------------------------------------------------------------------------
// probability_table
//
// Integration runs in the pair variables (ε, ξ) with dk dk' = dε dξ. For every
// ε the relative-momentum integrals give ∫|B|², ∫|F⁰|², ∫F⁰*/A and the bound
// integral I(ε) at once. The bound amplitude is (2iΓ²/π)(Ω/A) I(ε); its modulus
// squared integrates over ξ in closed form, ∫ dξ |Ω|²/|Ω² - ξ²|² = π/(2Γ), so
// the slowly decaying tails in ξ never have to be sampled.

ProbabilityTable probability_table(const PairAmplitude& pair, const ModelParams& params,
                                   const TwoPhotonOptions& options) {
    const double gamma = params.gamma();
    if (options.include_interaction) require_interaction_support(gamma);

    const bool gh = options.rule.kind == QuadratureRule::Kind::gauss_hermite;
    const double w = options.interaction_weight;
    const cplx bound_prefactor(0.0, 2.0 * gamma * gamma / kPi);
    const Interval support = pair.support();

    using Inner = Values<15>;
    using Outer = Values<10>;
    const GaussHermiteRule gh_rule(gh ? options.rule.order : 1);

    auto inner_integrand = [&](double eps, double xi) {
        Inner v;
        const double k = 0.5 * eps + xi;
        const double kp = 0.5 * eps - xi;
        const cplx b = pair(k, kp);
        v[0] = std::norm(b);
        if (options.include_independent) {
            const auto f0 = independent_all(pair, k, kp, params);
            const cplx inv_a = 1.0 / (cplx(k, gamma) * cplx(kp, gamma));
            for (std::size_t j = 0; j < 4; ++j) {
                v[1 + j] = std::norm(f0[j]);
                const cplx g = std::conj(f0[j]) * inv_a;
                v[5 + 2 * j] = g.real();
                v[6 + 2 * j] = g.imag();
            }
        }
        const cplx omega(0.5 * eps, gamma);
        const cplx ib = b / (omega * omega - xi * xi);
        v[13] = ib.real();
        v[14] = ib.imag();
        return v;
    };

    auto outer_integrand = [&](double eps) {
        Outer out;
        Inner v;
        if (gh) {
            // |B|² and |F⁰|² fall off as exp(-ξ²), the terms linear in B as
            // exp(-ξ²/2); each group gets the matching Hermite scale.
            auto f = [&](double xi) { return inner_integrand(eps, xi); };
            v = quadrature::integrate_gauss_hermite_full(f, gh_rule, LineDomain{0.0, 1.0});
            const Inner linear =
                quadrature::integrate_gauss_hermite_full(f, gh_rule, LineDomain{0.0, kSqrt2});
            for (std::size_t j = 5; j < 15; ++j) v[j] = linear[j];
        } else {
            const double xl = xi_limit(support, eps);
            if (!(xl > 0.0)) return out;
            PanelOptions opt = options.rule.panel_options();
            opt.rel_tol = 0.1 * options.rule.tolerance;
            opt.abs_tol = 1e-17;
            const cplx omega(0.5 * eps, gamma);
            opt.poles = {omega, -omega};
            v = quadrature::integrate_adaptive(
                    [&](double xi) { return inner_integrand(eps, xi); }, Interval{-xl, xl}, opt)
                    .value;
        }
        const cplx omega(0.5 * eps, gamma);
        const cplx bound_int(v[13], v[14]);
        out[0] = v[0];
        for (std::size_t j = 0; j < 4; ++j) {
            out[1 + j] = v[1 + j];
            const cplx g(v[5 + 2 * j], v[6 + 2 * j]);
            out[5 + j] = 2.0 * (w * bound_prefactor * omega * bound_int * g).real();
        }
        out[9] = std::norm(bound_int);
        return out;
    };

    Outer total;
    if (gh) {
        require_gaussian_envelope(pair);
        const double w0 = pair.profile_a().center();
        total = 2.0 * quadrature::integrate_gauss_hermite_full(
                          [&](double u) { return outer_integrand(2.0 * (w0 + u)); }, gh_rule,
                          LineDomain{0.0, 1.0});
    } else {
        PanelOptions opt = options.rule.panel_options();
        opt.abs_tol = 1e-16;
        opt.breakpoints = {2.0 * pair.profile_a().center(), 2.0 * pair.profile_b().center()};
        opt.poles = {cplx(0.0, 2.0 * gamma)};
        total = quadrature::integrate_adaptive(outer_integrand,
                                               Interval{2.0 * support.lo, 2.0 * support.hi}, opt)
                    .value;
    }

    ProbabilityTable table;
    table.beta = params.in_channel();
    table.beta_prime = params.in_channel_prime();
    table.normalization = (params.same_input_channel() ? 2.0 : 1.0) * total[0];
    if (!(table.normalization > 0.0))
        throw std::invalid_argument("incoming pair amplitude has zero norm");

    const double scale = 1.0 / (2.0 * table.normalization);
    const double bound = options.include_interaction
                             ? w * w * (2.0 * gamma * gamma * gamma / kPi) * total[9] * scale
                             : 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        ProbabilityEntry& e = table.entries[kPairs[j][0] - 1][kPairs[j][1] - 1];
        e.p0 = total[1 + j] * scale;
        e.cross = options.include_interaction ? total[5 + j] * scale : 0.0;
        e.bound = bound;
    }

    for (const auto& [a, ap] : kPairs) {
        const double p = table.probability(a, ap);
        if (p < -1e-6 || p > 1.0 + 1e-6) {
            table.warnings.push_back("P_" + std::to_string(a) + std::to_string(ap) +
                                     " outside [0, 1]: " + std::to_string(p));
        }
    }
    if (options.include_independent && table.unitarity_defect() > 1e-2)
        table.warnings.push_back("sum rule defect " + std::to_string(table.unitarity_defect()));
    return table;
}

double p_hom(const ModelParams& params, const TwoPhotonOptions& options) {
    if (params.geometry() != Geometry::hom_split)
        throw std::invalid_argument("p_hom needs the hom geometry");
    return probability_table(make_pair_amplitude(params), params, options).p_hom();
}

double p_res(const ModelParams& params, const TwoPhotonOptions& options) {
    if (params.geometry() == Geometry::hom_split)
        throw std::invalid_argument("p_res needs a resonance geometry");
    return probability_table(make_pair_amplitude(params), params, options).p_res();
}

double calibrated_interaction_weight(const PairAmplitude& pair, const ModelParams& params,
                                     double target, const TwoPhotonOptions& options) {
    TwoPhotonOptions unit = options;
    unit.include_independent = true;
    unit.include_interaction = true;
    unit.interaction_weight = 1.0;
    const ProbabilityTable t = probability_table(pair, params, unit);
    const double cross = t.at(1, 2).cross + t.at(2, 1).cross;
    const double bound = t.at(1, 2).bound + t.at(2, 1).bound;
    if (!(bound > 0.0)) throw std::runtime_error("bound term vanishes; weight undetermined");
    const double disc = cross * cross + 4.0 * bound * target;
    if (disc < 0.0) throw std::runtime_error("no real interaction weight reaches the target");
    return (-cross + std::sqrt(disc)) / (2.0 * bound);
}

}  // namespace homqed
