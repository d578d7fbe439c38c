#include "homqed/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace homqed::quadrature {

GaussHermiteRule::GaussHermiteRule(int order) {
    if (order < 1 || order > 300)
        throw std::invalid_argument("Gauss-Hermite order must be in [1, 300]");
    const int n = order;
    nodes_.assign(n, 0.0);
    weights_.assign(n, 0.0);

    // Newton iteration on the orthonormal Hermite recurrence, roots found from
    // the largest downwards with the usual asymptotic starting guesses.
    const double pim4 = std::pow(kPi, -0.25);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * nodes_[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * nodes_[1];
        else
            z = 2.0 * z - nodes_[i - 2];

        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw std::runtime_error("Gauss-Hermite node iteration did not converge");
        nodes_[i] = z;
        nodes_[n - 1 - i] = -z;
        weights_[i] = 2.0 / (pp * pp);
        weights_[n - 1 - i] = weights_[i];
    }
    if (n % 2 == 1) nodes_[n / 2] = 0.0;

    unweighted_.resize(n);
    for (int i = 0; i < n; ++i) unweighted_[i] = weights_[i] * std::exp(nodes_[i] * nodes_[i]);
}

namespace detail {

std::vector<double> initial_breaks(Interval iv, const PanelOptions& opt) {
    std::vector<double> pts{iv.lo, iv.hi};
    auto add = [&](double x) {
        if (x > iv.lo && x < iv.hi) pts.push_back(x);
    };
    for (double b : opt.breakpoints) add(b);
    for (const cplx& p : opt.poles) {
        const double d = std::abs(p.imag());
        if (!(d > 0.0)) {
            add(p.real());
            continue;
        }
        add(p.real());
        for (double s = d; s < iv.width(); s *= 2.0) {
            add(p.real() - s);
            add(p.real() + s);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-12 * iv.width(); }),
              pts.end());
    return pts;
}

}  // namespace detail

cplx integrate_1d(const std::function<cplx(double)>& f, const QuadratureRule& rule,
                  const LineDomain& domain, const PanelOptions& extra) {
    if (rule.kind == QuadratureRule::Kind::gauss_hermite) {
        const GaussHermiteRule gh(rule.order);
        return integrate_gauss_hermite_full(f, gh, domain);
    }
    PanelOptions opt = extra;
    opt.rel_tol = rule.tolerance;
    return integrate_adaptive(f, domain.interval(), opt).value;
}

cplx integrate_2d(const std::function<cplx(double, double)>& f, const QuadratureRule& rule,
                  const LineDomain& x_domain, const LineDomain& y_domain) {
    if (rule.kind == QuadratureRule::Kind::gauss_hermite) {
        const GaussHermiteRule gh(rule.order);
        return integrate_gauss_hermite_full(
            [&](double x) {
                return integrate_gauss_hermite_full([&](double y) { return f(x, y); }, gh,
                                                    y_domain);
            },
            gh, x_domain);
    }
    PanelOptions inner = rule.panel_options();
    inner.rel_tol = 0.1 * rule.tolerance;
    return integrate_adaptive(
               [&](double x) {
                   return integrate_adaptive([&](double y) { return f(x, y); },
                                             y_domain.interval(), inner)
                       .value;
               },
               x_domain.interval(), rule.panel_options())
        .value;
}

}  // namespace homqed::quadrature
