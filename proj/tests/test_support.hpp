#pragma once

#include "curvegeom/curve_kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace cgtest {

using cg::Mat3;
using cg::Vec;
using cg::Vec3;

constexpr double pi = std::numbers::pi;

unsigned seed();

inline Vec v3(double x, double y, double z) { return Vec(Vec3(x, y, z)); }

inline cg::SampledCurve helix(double a, double b, double u1, std::size_t n) {
    return cg::sample_curve([=](double u) { return v3(a * std::cos(u), a * std::sin(u), b * u); }, 0, u1, n);
}

// Latitude wave on the sphere of radius r about c.
inline cg::SampledCurve sphere_wave(double r, const Vec3& c, double amp, std::size_t n) {
    return cg::sample_curve(
        [=](double u) {
            const double g = amp * std::sin(3 * u);
            return Vec(c + r * Vec3(std::cos(u) * std::cos(g), std::sin(u) * std::cos(g), std::sin(g)));
        },
        0, 2 * pi, n, true);
}

// Closed, non-planar, never straight.
inline cg::SampledCurve trefoil_like(std::size_t n) {
    return cg::sample_curve(
        [](double u) {
            return v3(std::cos(u) + 0.3 * std::cos(2 * u), std::sin(u) - 0.3 * std::sin(2 * u), 0.4 * std::sin(3 * u));
        },
        0, 2 * pi, n, true);
}

inline Mat3 random_rotation(std::mt19937& rng) {
    std::normal_distribution<double> g;
    Mat3 A;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = g(rng);
    Eigen::HouseholderQR<Mat3> qr(A);
    Mat3 Q = qr.householderQ();
    if (Q.determinant() < 0) Q.col(0) *= -1;
    return Q;
}

inline double max_rel(const std::vector<double>& got, const std::vector<double>& want) {
    double e = 0;
    for (std::size_t i = 0; i < got.size(); ++i) e = std::max(e, std::abs(got[i] - want[i]) / std::abs(want[i]));
    return e;
}

} // namespace cgtest

namespace cgtest {

// Closed curve: unit circle plus random low Fourier modes of size ~0.15.
inline cg::SampledCurve random_closed_curve(std::mt19937& rng, std::size_t n) {
    std::normal_distribution<double> g(0, 0.15);
    Vec3 a[4], b[4];
    for (int k = 1; k <= 3; ++k) {
        a[k] = Vec3(g(rng), g(rng), g(rng)) / k;
        b[k] = Vec3(g(rng), g(rng), g(rng)) / k;
    }
    a[1] += Vec3(1, 0, 0);
    b[1] += Vec3(0, 1, 0);
    return cg::sample_curve(
        [=](double u) {
            Vec3 p = Vec3::Zero();
            for (int k = 1; k <= 3; ++k) p += a[k] * std::cos(k * u) + b[k] * std::sin(k * u);
            return Vec(p);
        },
        0, 2 * pi, n, true);
}

} // namespace cgtest
