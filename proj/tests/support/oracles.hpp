#ifndef TRIQUAD_TESTS_ORACLES_HPP
#define TRIQUAD_TESTS_ORACLES_HPP

// Reference computations for the tests. Nothing here calls into the library
// under test except the plain TrianglePoint struct.

#include "triquad/domain.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace triquad::oracle {

// Generalized binomial coefficient C(r, k) for real r.
inline long double binomial(long double r, int k)
{
    long double c = 1.0L;
    for (int i = 0; i < k; ++i)
        c *= (r - i) / (k - i);
    return c;
}

// Explicit sum
//   P_n^{a,b}(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s),
// in extended precision because the terms alternate in sign.
inline double jacobi_sum(double a, double b, int n, double x)
{
    const long double lx = x;
    long double v = 0.0L;
    for (int s = 0; s <= n; ++s)
        v += binomial(n + static_cast<long double>(a), n - s)
             * binomial(n + static_cast<long double>(b), s) * std::pow((lx - 1.0L) / 2.0L, s)
             * std::pow((lx + 1.0L) / 2.0L, n - s);
    return static_cast<double>(v);
}

struct Rule1d
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Golub-Welsch for the weight (1-x)^a (1+x)^b on [-1, 1].
inline Rule1d gauss_jacobi(int n, double a, double b)
{
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k)
    {
        const double s = 2.0 * k + a + b;
        t(k, k) = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n)
        {
            const double j = k + 1;
            const double sj = 2.0 * j + a + b;
            const double beta =
                4.0 * j * (j + a) * (j + b) * (j + a + b) / (sj * sj * (sj + 1.0) * (sj - 1.0));
            t(k, k + 1) = t(k + 1, k) = std::sqrt(beta);
        }
    }
    const double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0)
                       / std::tgamma(a + b + 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
    Rule1d r;
    for (int k = 0; k < n; ++k)
    {
        r.nodes.push_back(eig.eigenvalues()(k));
        const double v0 = eig.eigenvectors()(0, k);
        r.weights.push_back(mu0 * v0 * v0);
    }
    return r;
}

inline Rule1d gauss_legendre(int n)
{
    return gauss_jacobi(n, 0.0, 0.0);
}

// Integral over the reference triangle through the collapsed map
//   xi1 = (1 + e1)(1 - e2)/2 - 1, xi2 = e2,  dxi = (1 - e2)/2 de1 de2,
// with Gauss-Legendre in e1 and Gauss-Jacobi(1,0) in e2 absorbing (1 - e2).
class TriangleQuadrature
{
public:
    explicit TriangleQuadrature(int n)
    {
        const Rule1d gl = gauss_legendre(n);
        const Rule1d gj = gauss_jacobi(n, 1.0, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
            {
                const double e1 = gl.nodes[i];
                const double e2 = gj.nodes[j];
                points_.push_back({(1.0 + e1) * (1.0 - e2) / 2.0 - 1.0, e2});
                weights_.push_back(0.5 * gl.weights[i] * gj.weights[j]);
            }
    }

    const std::vector<TrianglePoint>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }

    double integrate(const std::function<double(const TrianglePoint&)>& f) const
    {
        double s = 0.0;
        for (std::size_t k = 0; k < points_.size(); ++k)
            s += weights_[k] * f(points_[k]);
        return s;
    }

private:
    std::vector<TrianglePoint> points_;
    std::vector<double> weights_;
};

// Iterated 1-D Gauss-Legendre over the unit right triangle:
// int_0^1 int_0^(1-x) x^a y^b dy dx.
inline double unit_monomial_integral(int a, int b, int nodes = 64)
{
    const Rule1d gl = gauss_legendre(nodes);
    double outer = 0.0;
    for (int i = 0; i < nodes; ++i)
    {
        const double x = 0.5 * (gl.nodes[i] + 1.0);
        const double top = 1.0 - x;
        double inner = 0.0;
        for (int j = 0; j < nodes; ++j)
        {
            const double y = 0.5 * top * (gl.nodes[j] + 1.0);
            inner += 0.5 * top * gl.weights[j] * std::pow(y, b);
        }
        outer += 0.5 * gl.weights[i] * std::pow(x, a) * inner;
    }
    return outer;
}

// Unnormalized g_{m,n} from the collapsed coordinate directly, away from the
// apex: (1 - xi2)^m P_m(eta) P_n^{2m+1,0}(xi2), eta = (1 + 2 xi1 + xi2)/(1 - xi2).
inline double kd_collapsed(int m, int n, const TrianglePoint& p)
{
    const double y = 1.0 - p.xi2;
    const double eta = (1.0 + 2.0 * p.xi1 + p.xi2) / y;
    return std::pow(y, m) * jacobi_sum(0.0, 0.0, m, eta) * jacobi_sum(2.0 * m + 1.0, 0.0, n, p.xi2);
}

// Central difference of f at x with step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace triquad::oracle

#endif // TRIQUAD_TESTS_ORACLES_HPP
