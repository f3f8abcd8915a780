#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qlm/chebyshev.hpp"

using qlm::cheb::Series;

TEST_CASE("lobatto nodes are ascending with exact endpoints") {
    auto x = qlm::cheb::lobatto_nodes(9);
    CHECK(x.front() == -1.0);
    CHECK(x.back() == 1.0);
    CHECK(x[4] == 0.0);
    for (std::size_t j = 1; j < x.size(); ++j) CHECK(x[j] > x[j - 1]);
}

TEST_CASE("from_samples reproduces basis polynomials") {
    const std::size_t n = 17;
    auto xs = qlm::cheb::lobatto_nodes(n);
    for (int k : {0, 1, 2, 5, 11}) {
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = std::cos(k * std::acos(std::clamp(xs[j], -1.0, 1.0)));
        auto s = Series::from_samples(v);
        for (std::size_t i = 0; i < s.size(); ++i) {
            double expect = (static_cast<int>(i) == k) ? 1.0 : 0.0;
            CHECK(std::fabs(s.coefficients()[i] - expect) < 1e-13);
        }
    }
}

TEST_CASE("interpolation round trip on a random polynomial") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> mono(12);
    for (double& c : mono) c = U(rng);
    auto s = Series::from_monomial(mono);

    auto horner = [&](double x) {
        double v = 0.0;
        for (std::size_t i = mono.size(); i-- > 0;) v = v * x + mono[i];
        return v;
    };
    for (int i = 0; i < 50; ++i) {
        double x = U(rng);
        CHECK(s(x) == doctest::Approx(horner(x)).epsilon(1e-14));
    }

    auto resampled = Series::from_function([&](double x) { return s(x); }, 33);
    for (int i = 0; i < 20; ++i) {
        double x = U(rng);
        CHECK(resampled(x) == doctest::Approx(s(x)).epsilon(1e-13));
    }
}

TEST_CASE("derivative matches central finite differences") {
    auto f = Series::from_function([](double x) { return std::exp(0.7 * x) * std::sin(2.0 * x); }, 40);
    auto df = f.derivative();
    const double h = 1e-6;
    for (double x : {-0.8, -0.2, 0.0, 0.41, 0.9}) {
        double fd = (f(x + h) - f(x - h)) / (2.0 * h);
        CHECK(df(x) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("integration: coefficients and quadrature weights agree") {
    // int_{-1}^{1} exp(x) = e - 1/e
    auto f = Series::from_function([](double x) { return std::exp(x); }, 32);
    double exact = std::exp(1.0) - std::exp(-1.0);
    CHECK(f.integrate() == doctest::Approx(exact).epsilon(1e-14));

    const std::size_t n = 32;
    auto xs = qlm::cheb::lobatto_nodes(n);
    auto ws = qlm::cheb::quadrature_weights(n);
    double q = 0.0, total_w = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        q += ws[j] * std::exp(xs[j]);
        total_w += ws[j];
    }
    CHECK(q == doctest::Approx(exact).epsilon(1e-14));
    CHECK(total_w == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("times_monomial is exact in coefficient space") {
    auto w = Series::from_monomial(std::vector{1.1, 0.0, -0.1});  // 1 + 0.1(1-x^2)
    auto P = w.times_monomial(std::vector{1.0, 0.0, -1.0});
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        double x = U(rng);
        double expect = (1.0 - x * x) * (1.1 - 0.1 * x * x);
        CHECK(P(x) == doctest::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("constant series stays bit-exact") {
    auto one = Series::constant(1.0);
    CHECK(one(0.3) == 1.0);
    CHECK(one(-1.0) == 1.0);
    CHECK(one.derivative()(0.5) == 0.0);
}
