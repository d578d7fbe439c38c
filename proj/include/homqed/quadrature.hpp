// quadrature.hpp: Gauss-Hermite and adaptive Gauss-Kronrod integration.
//
// Integrands may return double, cplx, or a fixed-size Values<N> bundle; the
// adaptive rule then controls the largest component error.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "homqed/core.hpp"

namespace homqed::quadrature {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate_(error_estimate) {}
    double error_estimate() const { return error_estimate_; }

private:
    double error_estimate_;
};

/// Fixed-size bundle of reals so that several integrals can share one set of
/// adaptive panels.
template <std::size_t N>
struct Values {
    std::array<double, N> v{};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    Values& operator+=(const Values& o) {
        for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
        return *this;
    }
    friend Values operator+(Values a, const Values& b) { return a += b; }
    friend Values operator-(Values a, const Values& b) {
        for (std::size_t i = 0; i < N; ++i) a.v[i] -= b.v[i];
        return a;
    }
    friend Values operator*(double s, Values a) {
        for (auto& x : a.v) x *= s;
        return a;
    }
    friend Values operator*(Values a, double s) { return s * a; }
};

inline double max_abs(double x) { return std::abs(x); }
inline double max_abs(const cplx& z) { return std::abs(z); }
template <std::size_t N>
double max_abs(const Values<N>& x) {
    double m = 0.0;
    for (double c : x.v) m = std::max(m, std::abs(c));
    return m;
}

/// Nodes t_i and weights w_i with ∫ exp(-t²) p(t) dt = Σ w_i p(t_i), exact for
/// polynomials of degree ≤ 2n-1.
class GaussHermiteRule {
public:
    explicit GaussHermiteRule(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    /// w_i exp(t_i²): weights for integrands that still carry their envelope.
    const std::vector<double>& unweighted() const { return unweighted_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> unweighted_;
};

/// Packet-centred description of the real line: the Gauss-Hermite envelope is
/// exp(-((x - center)/scale)²); panel rules truncate to center ± half_width·scale.
struct LineDomain {
    double center{0.0};
    double scale{1.0};
    double half_width{12.0};

    Interval interval() const {
        return {center - half_width * scale, center + half_width * scale};
    }
};

struct PanelOptions {
    double rel_tol{1e-11};
    double abs_tol{1e-15};
    int max_panels{4000};
    std::vector<double> breakpoints;
    // Integrand poles off the real axis. Panels are graded geometrically
    // towards Re(pole) down to a width of |Im(pole)|.
    std::vector<cplx> poles;
};

struct QuadratureRule {
    enum class Kind { gauss_hermite, adaptive_panel };

    Kind kind{Kind::adaptive_panel};
    int order{40};
    double tolerance{1e-11};

    static QuadratureRule gauss_hermite(int order) { return {Kind::gauss_hermite, order, 0.0}; }
    static QuadratureRule adaptive(double tolerance = 1e-11) {
        return {Kind::adaptive_panel, 0, tolerance};
    }

    PanelOptions panel_options() const {
        PanelOptions o;
        o.rel_tol = tolerance;
        return o;
    }
};

template <class V>
struct Estimate {
    V value{};
    double error{0.0};
    int panels{0};
};

namespace detail {

// Kronrod 15 / Gauss 7 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
    double a;
    double b;
    V value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class V, class F>
Panel<V> kronrod15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const V fc = f(c);
    V kron = kWgk[7] * fc;
    V gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const V f1 = f(c - dx);
        const V f2 = f(c + dx);
        const V s = f1 + f2;
        kron += kWgk[j] * s;
        if (j % 2 == 1) gauss += kWg[j / 2] * s;
    }
    kron = h * kron;
    gauss = h * gauss;
    return {a, b, kron, max_abs(kron - gauss)};
}

std::vector<double> initial_breaks(Interval iv, const PanelOptions& opt);

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 15 on a finite interval: the panel with the
/// largest error estimate is bisected until the total estimate drops below
/// max(abs_tol, rel_tol·|I|). Throws QuadratureError once max_panels is spent.
template <class F>
auto integrate_adaptive(F&& f, Interval iv, const PanelOptions& opt = {})
    -> Estimate<std::decay_t<std::invoke_result_t<F&, double>>> {
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    Estimate<V> out;
    if (!(iv.hi > iv.lo)) return out;

    std::priority_queue<detail::Panel<V>> heap;
    const std::vector<double> breaks = detail::initial_breaks(iv, opt);
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        auto p = detail::kronrod15<V>(f, breaks[i], breaks[i + 1]);
        total_error += p.error;
        heap.push(std::move(p));
    }

    auto sum_values = [&heap] {
        V total{};
        auto copy = heap;
        while (!copy.empty()) {
            total += copy.top().value;
            copy.pop();
        }
        return total;
    };

    V total = sum_values();
    while (total_error > std::max(opt.abs_tol, opt.rel_tol * max_abs(total))) {
        if (static_cast<int>(heap.size()) >= opt.max_panels) {
            throw QuadratureError("adaptive quadrature did not converge within " +
                                      std::to_string(opt.max_panels) + " panels",
                                  total_error);
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("adaptive quadrature hit panel width underflow", total_error);
        }
        auto left = detail::kronrod15<V>(f, worst.a, mid);
        auto right = detail::kronrod15<V>(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        total += left.value + right.value - worst.value;
        heap.push(std::move(left));
        heap.push(std::move(right));
    }

    out.value = sum_values();
    out.panels = static_cast<int>(heap.size());
    out.error = 0.0;
    while (!heap.empty()) {
        out.error += heap.top().error;
        heap.pop();
    }
    return out;
}

/// Σ w_i h(center + scale·t_i)·scale, i.e. ∫ f with f = h·exp(-((x-center)/scale)²):
/// the caller supplies the integrand already divided by its Gaussian envelope.
template <class F>
auto integrate_gauss_hermite(F&& h, const GaussHermiteRule& rule, const LineDomain& dom) {
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    V sum{};
    for (int i = 0; i < rule.order(); ++i)
        sum += rule.weights()[i] * h(dom.center + dom.scale * rule.nodes()[i]);
    return dom.scale * sum;
}

/// Gauss-Hermite applied to an integrand that still carries its envelope.
template <class F>
auto integrate_gauss_hermite_full(F&& f, const GaussHermiteRule& rule, const LineDomain& dom) {
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    V sum{};
    for (int i = 0; i < rule.order(); ++i)
        sum += rule.unweighted()[i] * f(dom.center + dom.scale * rule.nodes()[i]);
    return dom.scale * sum;
}

/// ∫ f over the real line. The integrand is always passed in full; a
/// Gauss-Hermite rule uses the domain's envelope, a panel rule integrates over
/// the truncated interval.
cplx integrate_1d(const std::function<cplx(double)>& f, const QuadratureRule& rule,
                  const LineDomain& domain, const PanelOptions& extra = {});

/// Tensor-product Gauss-Hermite, or nested adaptive panels (outer x, inner y).
cplx integrate_2d(const std::function<cplx(double, double)>& f, const QuadratureRule& rule,
                  const LineDomain& x_domain, const LineDomain& y_domain);

}  // namespace homqed::quadrature
