#include <doctest.h>

#include "support.hpp"

#include <cmath>

#include "homqed/quadrature.hpp"

using namespace homqed;
using namespace homqed::quadrature;

namespace {
const double kSqrtPi = std::sqrt(kPi);
}

TEST_CASE("Gauss-Hermite rule is exact for polynomials of degree 2n-1") {
    for (int n : {1, 2, 5, 20, 40, 100}) {
        const GaussHermiteRule rule(n);
        REQUIRE(rule.order() == n);
        // ∫ x^{2m} e^{-x²} = Γ(m + 1/2)
        for (int m = 0; 2 * m <= 2 * n - 1 && m <= 20; ++m) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += rule.weights()[i] * std::pow(rule.nodes()[i], 2 * m);
            CHECK(sum == rel(std::tgamma(m + 0.5), 1e-12));
        }
        double odd = 0.0;
        double scale = 0.0;
        for (int i = 0; i < n; ++i) {
            const double term = rule.weights()[i] * std::pow(rule.nodes()[i], 2 * n - 1);
            odd += term;
            scale += std::abs(term);
        }
        CHECK(std::abs(odd) <= 1e-12 * scale);
    }
    CHECK_THROWS_AS(GaussHermiteRule(0), std::invalid_argument);
    CHECK_THROWS_AS(GaussHermiteRule(301), std::invalid_argument);
}

TEST_CASE("integrate_1d on Gaussian integrands") {
    const LineDomain line{0.0, 1.0};
    auto gauss = [](double x) { return cplx(std::exp(-x * x)); };
    auto fourier = [](double x) { return std::exp(cplx(-x * x, x)); };
    for (const QuadratureRule& rule : {QuadratureRule::gauss_hermite(40), QuadratureRule::adaptive()}) {
        CHECK(std::abs(integrate_1d(gauss, rule, line) - kSqrtPi) < 1e-10);
        CHECK(std::abs(integrate_1d(fourier, rule, line) - kSqrtPi * std::exp(-0.25)) < 1e-10);
    }
}

TEST_CASE("pole integrand matches a dense midpoint sum") {
    const cplx omega(1.0, 2.0);
    auto f = [&](double x) { return std::exp(-x * x) / (omega * omega - x * x); };
    const int n = 1000000;
    const double h = 24.0 / n;
    cplx riemann{};
    for (int i = 0; i < n; ++i) riemann += f(-12.0 + (i + 0.5) * h);
    riemann *= h;
    PanelOptions poles;
    poles.poles = {omega, -omega};
    CHECK(std::abs(integrate_1d(f, QuadratureRule::adaptive(), LineDomain{}, poles) - riemann) <
          1e-8);
    CHECK(std::abs(integrate_1d(f, QuadratureRule::gauss_hermite(40), LineDomain{}) - riemann) <
          1e-8);
}

TEST_CASE("adaptive rule resolves a narrow peak with a pole hint and reports its panels") {
    const double d = 1e-3;
    PanelOptions opt;
    opt.poles = {cplx(0.3, d)};
    const auto est = integrate_adaptive([&](double x) { return d / ((x - 0.3) * (x - 0.3) + d * d); },
                                        Interval{-1.0, 1.0}, opt);
    const double exact = std::atan(0.7 / d) + std::atan(1.3 / d);
    CHECK(est.value == rel(exact, 1e-10));
    CHECK(est.panels > 1);
    CHECK(est.error < 1e-9);
}

TEST_CASE("adaptive rule throws with the last error estimate when the budget is spent") {
    PanelOptions opt;
    opt.max_panels = 3;
    try {
        integrate_adaptive([](double x) { return std::sqrt(std::abs(x - 0.123)); },
                           Interval{-1.0, 1.0}, opt);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.error_estimate() > 0.0);
    }
}

TEST_CASE("Values bundles share panels") {
    const auto est = integrate_adaptive(
        [](double x) {
            Values<2> v;
            v[0] = std::sin(x);
            v[1] = x * x;
            return v;
        },
        Interval{0.0, kPi});
    CHECK(est.value[0] == rel(2.0, 1e-12));
    CHECK(est.value[1] == rel(kPi * kPi * kPi / 3.0, 1e-12));
}

TEST_CASE("integrate_2d: Gaussian and separable integrands") {
    const LineDomain line{0.0, 1.0};
    auto g2 = [](double x, double y) { return cplx(std::exp(-x * x - y * y)); };
    auto gx = [](double x) { return std::exp(cplx(-x * x, 0.5 * x)) * (1.0 + x * x); };
    auto hy = [](double y) { return cplx(std::exp(-(y - 0.3) * (y - 0.3)) * std::cos(y)); };
    auto sep = [&](double x, double y) { return gx(x) * hy(y); };
    for (const QuadratureRule& rule : {QuadratureRule::gauss_hermite(40), QuadratureRule::adaptive()}) {
        CHECK(std::abs(integrate_2d(g2, rule, line, line) - kPi) < 1e-10);
        const cplx product = integrate_1d(gx, rule, line) * integrate_1d(hy, rule, line);
        CHECK(std::abs(integrate_2d(sep, rule, line, line) - product) < 1e-10);
    }
}
