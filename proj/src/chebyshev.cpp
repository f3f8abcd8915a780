#include "qlm/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qlm::cheb {

namespace {

constexpr double kPi = std::numbers::pi;

// Multiply a Chebyshev coefficient vector by x in place:
// x T_k = (T_{k+1} + T_{k-1}) / 2, with x T_0 = T_1.
std::vector<double> times_x(const std::vector<double>& a) {
    std::vector<double> b(a.size() + 1, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k == 0) {
            b[1] += a[0];
        } else {
            b[k + 1] += 0.5 * a[k];
            b[k - 1] += 0.5 * a[k];
        }
    }
    return b;
}

}  // namespace

std::vector<double> lobatto_nodes(std::size_t n) {
    if (n < 2) throw std::invalid_argument("lobatto_nodes: need n >= 2");
    const std::size_t N = n - 1;
    std::vector<double> x(n);
    for (std::size_t j = 0; j <= N; ++j)
        x[j] = -std::cos(kPi * static_cast<double>(j) / static_cast<double>(N));
    x.front() = -1.0;
    x.back() = 1.0;
    if (n % 2 == 1) x[N / 2] = 0.0;
    return x;
}

Series::Series(std::vector<double> coef) : coef_(std::move(coef)) {
    if (coef_.empty()) coef_.push_back(0.0);
}

Series Series::from_samples(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("Series::from_samples: need >= 2 samples");
    const std::size_t N = n - 1;
    // values are at ascending nodes -cos(j pi / N); index i = N - j gives the
    // standard descending ordering cos(i pi / N).
    std::vector<double> a(n, 0.0);
    const double invN = 1.0 / static_cast<double>(N);
    for (std::size_t k = 0; k <= N; ++k) {
        double sum = 0.5 * (values[N] + (k % 2 == 0 ? values[0] : -values[0]));
        for (std::size_t i = 1; i < N; ++i) {
            double fi = values[N - i];
            sum += fi * std::cos(kPi * static_cast<double>(k * i) * invN);
        }
        a[k] = 2.0 * invN * sum;
    }
    a[0] *= 0.5;
    a[N] *= 0.5;
    return Series(std::move(a));
}

Series Series::from_function(const std::function<double(double)>& f, std::size_t n) {
    auto x = lobatto_nodes(n);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(x[j]);
    return from_samples(v);
}

Series Series::from_monomial(std::span<const double> monomial) {
    if (monomial.empty()) return Series({0.0});
    // Horner in coefficient space: c_{d} then repeatedly *x + c_{k}.
    std::vector<double> acc{monomial.back()};
    for (std::size_t i = monomial.size() - 1; i-- > 0;) {
        acc = times_x(acc);
        acc[0] += monomial[i];
    }
    return Series(std::move(acc));
}

double Series::operator()(double x) const {
    const std::size_t n = coef_.size();
    if (n == 1) return coef_[0];
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = n - 1; k >= 1; --k) {
        double b0 = coef_[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coef_[0] + x * b1 - b2;
}

Series Series::derivative() const {
    const std::size_t n = coef_.size();
    if (n == 1) return Series({0.0});
    std::vector<double> d(n - 1, 0.0);
    // c_{k-1} = c_{k+1} + 2 k a_k, descending; c_0 halved at the end.
    double cp1 = 0.0, cp2 = 0.0;  // c_{k+1}, c_{k+2}
    for (std::size_t k = n - 1; k >= 1; --k) {
        double c = cp2 + 2.0 * static_cast<double>(k) * coef_[k];
        d[k - 1] = c;
        cp2 = cp1;
        cp1 = c;
    }
    d[0] *= 0.5;
    return Series(std::move(d));
}

double Series::integrate() const {
    double s = 0.0;
    for (std::size_t k = 0; k < coef_.size(); k += 2) {
        double kk = static_cast<double>(k);
        s += coef_[k] * 2.0 / (1.0 - kk * kk);
    }
    return s;
}

Series Series::times_monomial(std::span<const double> monomial) const {
    if (monomial.empty()) return Series({0.0});
    std::vector<double> acc = coef_;
    for (double& c : acc) c *= monomial.back();
    for (std::size_t i = monomial.size() - 1; i-- > 0;) {
        acc = times_x(acc);
        for (std::size_t k = 0; k < coef_.size(); ++k) acc[k] += monomial[i] * coef_[k];
    }
    return Series(std::move(acc));
}

Series Series::operator+(const Series& other) const {
    std::vector<double> r(std::max(coef_.size(), other.coef_.size()), 0.0);
    for (std::size_t k = 0; k < coef_.size(); ++k) r[k] += coef_[k];
    for (std::size_t k = 0; k < other.coef_.size(); ++k) r[k] += other.coef_[k];
    return Series(std::move(r));
}

Series Series::operator-(const Series& other) const {
    std::vector<double> r(std::max(coef_.size(), other.coef_.size()), 0.0);
    for (std::size_t k = 0; k < coef_.size(); ++k) r[k] += coef_[k];
    for (std::size_t k = 0; k < other.coef_.size(); ++k) r[k] -= other.coef_[k];
    return Series(std::move(r));
}

Series Series::scaled(double c) const {
    std::vector<double> r = coef_;
    for (double& v : r) v *= c;
    return Series(std::move(r));
}

double Series::tail_magnitude() const {
    const std::size_t n = coef_.size();
    if (n < 8) return 0.0;
    double m = 0.0;
    for (std::size_t k = (3 * n) / 4; k < n; ++k) m = std::max(m, std::fabs(coef_[k]));
    return m;
}

std::vector<double> quadrature_weights(std::size_t n) {
    if (n < 2) throw std::invalid_argument("quadrature_weights: need n >= 2");
    const std::size_t N = n - 1;
    // Weights follow from interpolate-then-integrate: w_j = sum_k mu_k M_{kj},
    // where M is the sample-to-coefficient map and mu_k = int T_k.
    std::vector<double> mu(n, 0.0);
    for (std::size_t k = 0; k < n; k += 2) {
        double kk = static_cast<double>(k);
        mu[k] = 2.0 / (1.0 - kk * kk);
    }
    const double invN = 1.0 / static_cast<double>(N);
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j <= N; ++j) {
        const std::size_t i = N - j;  // descending index of ascending node j
        const double scale_j = (i == 0 || i == N) ? 0.5 : 1.0;
        double s = 0.0;
        for (std::size_t k = 0; k <= N; ++k) {
            double halve_k = (k == 0 || k == N) ? 0.5 : 1.0;
            s += mu[k] * halve_k * std::cos(kPi * static_cast<double>(k * i) * invN);
        }
        w[j] = 2.0 * invN * scale_j * s;
    }
    return w;
}

}  // namespace qlm::cheb
