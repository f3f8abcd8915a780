#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qlm::cheb {

/// Chebyshev-Gauss-Lobatto nodes on [-1,1], ascending (x_0 = -1, x_{n-1} = +1).
std::vector<double> lobatto_nodes(std::size_t n);

/// Clenshaw-Curtis quadrature weights for lobatto_nodes(n):
/// sum_j w_j f(x_j) ~ integral of f over [-1,1], exact for degree < n.
std::vector<double> quadrature_weights(std::size_t n);

/// Polynomial in the Chebyshev basis, f(x) = sum_k a_k T_k(x), x in [-1,1].
class Series {
public:
    Series() : coef_{0.0} {}
    explicit Series(std::vector<double> coef);

    static Series constant(double c) { return Series({c}); }

    /// Interpolant through samples taken at lobatto_nodes(values.size()).
    static Series from_samples(std::span<const double> values);

    static Series from_function(const std::function<double(double)>& f, std::size_t n);

    /// Exact basis conversion from monomial coefficients c0 + c1 x + c2 x^2 + ...
    static Series from_monomial(std::span<const double> monomial);

    double operator()(double x) const;  // Clenshaw recurrence

    Series derivative() const;

    /// Definite integral over [-1,1].
    double integrate() const;

    /// Product with a polynomial given in monomial coefficients,
    /// carried out exactly in coefficient space.
    Series times_monomial(std::span<const double> monomial) const;

    Series operator+(const Series& other) const;
    Series operator-(const Series& other) const;
    Series scaled(double c) const;

    std::size_t size() const { return coef_.size(); }
    std::span<const double> coefficients() const { return coef_; }

    /// Largest |a_k| over the trailing quarter of the coefficients;
    /// a crude resolution indicator for sampled inputs.
    double tail_magnitude() const;

private:
    std::vector<double> coef_;
};

}  // namespace qlm::cheb
