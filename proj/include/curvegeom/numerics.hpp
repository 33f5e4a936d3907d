#pragma once

// Small numerical toolkit shared by the geometry modules: finite-difference
// stencils on arbitrary grids, cumulative quadrature, interpolation and
// total-least-squares hyperplane fits.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace cg {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4d = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

// Fornberg's algorithm. Returns c[k][j], the weight of node j for the k-th
// derivative at z, for k = 0..m.
std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& nodes, int m);

struct Stencil {
    std::vector<std::size_t> idx;
    std::vector<double> w;
};

// Stencil for the order-th derivative at sample i. Centered when the window
// fits, shifted to one side near the ends. For periodic data the last sample
// duplicates the first and the window wraps around.
Stencil make_stencil(const std::vector<double>& x, std::size_t i, int order, bool periodic,
                     int width = 7);

template <class T>
std::vector<T> derivative(const std::vector<double>& x, const std::vector<T>& f, int order,
                          bool periodic = false, int width = 7) {
    const std::size_t n = x.size();
    std::vector<T> out(n);
    const std::size_t last = periodic ? n - 1 : n;
    for (std::size_t i = 0; i < last; ++i) {
        Stencil st = make_stencil(x, i, order, periodic, width);
        T acc = f[st.idx[0]] * st.w[0];
        for (std::size_t k = 1; k < st.idx.size(); ++k) acc += f[st.idx[k]] * st.w[k];
        out[i] = acc;
    }
    if (periodic) out[n - 1] = out[0];
    return out;
}

// Cumulative integral F(x_i) = int_{x_0}^{x_i} f, piecewise cubic (4th order).
std::vector<double> cumulative_integral(const std::vector<double>& x, const std::vector<double>& f);
double integral(const std::vector<double>& x, const std::vector<double>& f);
// Trapezoid over one period; last sample duplicates the first.
double periodic_integral(const std::vector<double>& x, const std::vector<double>& f);

// Composite Simpson on a uniform grid with an odd number of samples; an even
// count gets a 3/8 panel at the end.
double simpson(const std::vector<double>& x, const std::vector<double>& f);

// 4-point Lagrange interpolation on a sorted grid.
double interp(const std::vector<double>& x, const std::vector<double>& f, double xq);
std::vector<double> linspace(double a, double b, std::size_t n);

// Orthogonal-regression hyperplane {y : <normal, y> = offset} with offset >= 0.
struct HyperplaneFit {
    Vec normal;
    double offset = 0;    // distance of the hyperplane to the origin
    Vec centroid;
    double residual = 0;  // RMS orthogonal distance
    double spread = 0;    // RMS distance of samples from their centroid
    double rms_norm = 0;  // RMS sample norm
};
HyperplaneFit fit_affine_hyperplane(const std::vector<Vec>& samples);
// Hyperplane forced through the origin: offset = 0.
HyperplaneFit fit_linear_hyperplane(const std::vector<Vec>& samples);

// Diagonal-metric helpers; g holds the signature, e.g. (1,1,-1).
inline double mdot(const Vec& a, const Vec& b, const Vec& g) { return (a.array() * b.array() * g.array()).sum(); }

// Transports normals along a curve by n' = -eps <n, t'>_g t with RK4 on the
// sample grid (cubic midpoint values), where eps = <t,t>_g. After each step the
// normals are projected off t (and off q, if given) and re-orthonormalized in g.
std::vector<std::vector<Vec>> transport_normals(const std::vector<double>& s, const std::vector<Vec>& t,
                                                const std::vector<Vec>& tprime, const Vec& g,
                                                const std::vector<Vec>& init,
                                                const std::vector<Vec>* q = nullptr);

double max_abs(const std::vector<double>& v);
double rms(const std::vector<double>& v);
double mean(const std::vector<double>& v);
double stddev(const std::vector<double>& v);

} // namespace cg
