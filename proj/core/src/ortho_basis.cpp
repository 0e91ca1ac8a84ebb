#include "triquad/ortho_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace triquad {

namespace {

double clamp_unit(double x)
{
    if (x > 1.0 && x <= 1.0 + 1e-12)
        return 1.0;
    if (x < -1.0 && x >= -1.0 - 1e-12)
        return -1.0;
    return x;
}

// Generalized binomial coefficient r (r-1) ... (r-k+1) / k!.
double binomial(double r, int k)
{
    double c = 1.0;
    for (int i = 0; i < k; ++i)
        c *= (r - i) / (i + 1);
    return c;
}

// Explicit sum, used only where the recurrence divides by zero
// (alpha = beta = -1).
double jacobi_explicit(double alpha, double beta, int n, double x)
{
    const double lo = 0.5 * (x - 1.0);
    const double hi = 0.5 * (x + 1.0);
    double sum = 0.0;
    for (int s = 0; s <= n; ++s)
        sum += binomial(n + alpha, n - s) * binomial(n + beta, s) * std::pow(lo, s)
               * std::pow(hi, n - s);
    return sum;
}

// Fills out[0..nmax] with P_n^{alpha,beta}(x).
void jacobi_sequence(double alpha, double beta, int nmax, double x, double* out)
{
    if (nmax < 0)
        return;
    out[0] = 1.0;
    if (nmax == 0)
        return;
    out[1] = 0.5 * ((alpha + beta + 2.0) * x + alpha - beta);

    const double apb = alpha + beta;
    const double a2b2 = alpha * alpha - beta * beta;
    for (int n = 2; n <= nmax; ++n)
    {
        const double s = 2.0 * n + apb;
        const double a1 = 2.0 * n * (n + apb) * (s - 2.0);
        const double a2 = (s - 1.0) * a2b2;
        const double a3 = (s - 2.0) * (s - 1.0) * s;
        const double a4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * s;
        out[n] = ((a2 + a3 * x) * out[n - 1] - a4 * out[n - 2]) / a1;
    }
}

struct LegendreFactor
{
    std::vector<double> q, qx, qy;
};

// Q_m(x, y) = y^m P_m(x / y) and its partials for m = 0..mmax, via
// (k+1) Q_{k+1} = (2k+1) x Q_k - k y^2 Q_{k-1}.
void homogeneous_legendre(int mmax, double x, double y, LegendreFactor& f, bool grads)
{
    f.q.assign(mmax + 1, 0.0);
    f.q[0] = 1.0;
    if (mmax >= 1)
        f.q[1] = x;
    for (int k = 1; k < mmax; ++k)
        f.q[k + 1] = ((2 * k + 1) * x * f.q[k] - k * y * y * f.q[k - 1]) / (k + 1);

    if (!grads)
        return;
    f.qx.assign(mmax + 1, 0.0);
    f.qy.assign(mmax + 1, 0.0);
    if (mmax >= 1)
        f.qx[1] = 1.0;
    for (int k = 1; k < mmax; ++k)
    {
        f.qx[k + 1] = ((2 * k + 1) * (f.q[k] + x * f.qx[k]) - k * y * y * f.qx[k - 1]) / (k + 1);
        f.qy[k + 1] = ((2 * k + 1) * x * f.qy[k]
                       - k * (2.0 * y * f.q[k - 1] + y * y * f.qy[k - 1]))
                      / (k + 1);
    }
}

void check_index(const BasisSpec& spec, const MultiIndex& idx)
{
    if (idx.m < 0 || idx.n < 0 || idx.degree() > spec.degree)
        throw std::out_of_range("basis index (" + std::to_string(idx.m) + ", "
                                + std::to_string(idx.n) + ") not in P_"
                                + std::to_string(spec.degree));
}

} // namespace

MultiIndex index_of(int k)
{
    if (k < 0)
        throw std::out_of_range("index_of: negative rank");
    int t = 0;
    while (basis_dimension(t) <= k)
        ++t;
    const int m = k - basis_dimension(t - 1);
    return {m, t - m};
}

int rank_of(const MultiIndex& idx)
{
    return basis_dimension(idx.degree() - 1) + idx.m;
}

double jacobi(double alpha, double beta, int n, double x)
{
    if (n < 0)
        return 0.0;
    x = clamp_unit(x);
    if (alpha + beta <= -2.0 + 1e-14)
        return jacobi_explicit(alpha, beta, n, x);

    if (n < 16)
    {
        double buf[16];
        jacobi_sequence(alpha, beta, n, x, buf);
        return buf[n];
    }
    std::vector<double> buf(n + 1);
    jacobi_sequence(alpha, beta, n, x, buf.data());
    return buf[n];
}

double jacobi_derivative(double alpha, double beta, int n, double x)
{
    if (n <= 0)
        return 0.0;
    return 0.5 * (n + alpha + beta + 1.0) * jacobi(alpha + 1.0, beta + 1.0, n - 1, x);
}

double kd_normalization(const MultiIndex& idx)
{
    // integral of g_{m,n}^2 = 2^{2m+1} / ((2m+1)(m+n+1))
    return std::sqrt((2.0 * idx.m + 1.0) * (idx.m + idx.n + 1.0)) / std::ldexp(1.0, idx.m);
}

double kd_eval(const BasisSpec& spec, const MultiIndex& idx, const TrianglePoint& p)
{
    check_index(spec, idx);
    LegendreFactor f;
    homogeneous_legendre(idx.m, 1.0 + 2.0 * p.xi1 + p.xi2, 1.0 - p.xi2, f, false);
    const double value = f.q[idx.m] * jacobi(2.0 * idx.m + 1.0, 0.0, idx.n, p.xi2);
    return spec.normalized ? kd_normalization(idx) * value : value;
}

std::array<double, 2> kd_gradient(const BasisSpec& spec, const MultiIndex& idx,
                                  const TrianglePoint& p)
{
    check_index(spec, idx);
    LegendreFactor f;
    homogeneous_legendre(idx.m, 1.0 + 2.0 * p.xi1 + p.xi2, 1.0 - p.xi2, f, true);
    const double a = 2.0 * idx.m + 1.0;
    const double jac = jacobi(a, 0.0, idx.n, p.xi2);
    const double djac = jacobi_derivative(a, 0.0, idx.n, p.xi2);

    // dx/dxi1 = 2, dx/dxi2 = 1, dy/dxi2 = -1
    double g1 = 2.0 * f.qx[idx.m] * jac;
    double g2 = (f.qx[idx.m] - f.qy[idx.m]) * jac + f.q[idx.m] * djac;
    if (spec.normalized)
    {
        const double c = kd_normalization(idx);
        g1 *= c;
        g2 *= c;
    }
    return {g1, g2};
}

double kd_integral(const BasisSpec& spec, const MultiIndex& idx)
{
    check_index(spec, idx);
    return idx.m == 0 && idx.n == 0 ? 2.0 : 0.0;
}

BasisEvaluation vandermonde(const BasisSpec& spec, std::span<const TrianglePoint> points,
                            bool with_gradients)
{
    const int deg = spec.degree;
    const int dim = spec.dimension();
    const auto npts = static_cast<Eigen::Index>(points.size());

    BasisEvaluation out;
    out.values.resize(npts, dim);
    if (with_gradients)
    {
        out.d_xi1.resize(npts, dim);
        out.d_xi2.resize(npts, dim);
    }

    std::vector<double> norm(dim);
    for (int k = 0; k < dim; ++k)
        norm[k] = spec.normalized ? kd_normalization(index_of(k)) : 1.0;

    LegendreFactor f;
    std::vector<double> jac(deg + 1), djac(deg + 1);
    for (Eigen::Index j = 0; j < npts; ++j)
    {
        const TrianglePoint& p = points[j];
        const double xi2 = clamp_unit(p.xi2);
        homogeneous_legendre(deg, 1.0 + 2.0 * p.xi1 + p.xi2, 1.0 - p.xi2, f, with_gradients);

        for (int m = 0; m <= deg; ++m)
        {
            const int nmax = deg - m;
            jacobi_sequence(2.0 * m + 1.0, 0.0, nmax, xi2, jac.data());
            if (with_gradients)
            {
                djac[0] = 0.0;
                jacobi_sequence(2.0 * m + 2.0, 1.0, nmax - 1, xi2, djac.data() + 1);
                for (int n = 1; n <= nmax; ++n)
                    djac[n] *= 0.5 * (n + 2.0 * m + 2.0);
            }

            for (int n = 0; n <= nmax; ++n)
            {
                const int k = rank_of({m, n});
                out.values(j, k) = norm[k] * f.q[m] * jac[n];
                if (with_gradients)
                {
                    out.d_xi1(j, k) = norm[k] * 2.0 * f.qx[m] * jac[n];
                    out.d_xi2(j, k) =
                        norm[k] * ((f.qx[m] - f.qy[m]) * jac[n] + f.q[m] * djac[n]);
                }
            }
        }
    }
    return out;
}

} // namespace triquad
