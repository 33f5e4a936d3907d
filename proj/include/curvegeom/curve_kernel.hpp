#pragma once

#include "curvegeom/numerics.hpp"

#include <functional>
#include <vector>

namespace cg {

using ScalarFn = std::function<double(double)>;
using CurveFn = std::function<Vec(double)>;

// Ordered samples of a curve. params need not be arc length; closed curves
// repeat the first point at the end.
struct SampledCurve {
    std::vector<double> params;
    std::vector<Vec> points;
    int ambient_dim = 3;
    bool closed = false;

    std::size_t size() const { return points.size(); }
};

// Throws InvalidCurve on malformed samples, DegenerateCurve on a stalled
// velocity.
void validate(const SampledCurve& c);
SampledCurve make_curve(std::vector<double> params, std::vector<Vec> points, bool closed = false);
SampledCurve sample_curve(const CurveFn& f, double a, double b, std::size_t n, bool closed = false);

// Parameter derivatives of the sample points (periodic stencils when closed).
std::vector<Vec> point_derivative(const SampledCurve& c, int order);
std::vector<double> speeds(const SampledCurve& c);
std::vector<double> arc_length(const SampledCurve& c);

SampledCurve resample_by_arclength(const SampledCurve& c, std::size_t n);

struct FrenetData {
    std::vector<double> s;
    std::vector<Vec3> points;
    std::vector<Vec3> t, n, b;
    std::vector<double> kappa, tau;
    std::vector<bool> kappa_defined;
    bool closed = false;
};

// Curvature below this (or below the finite-difference noise floor) counts
// as an inflection.
inline constexpr double kKappaTol = 1e-9;

FrenetData frenet_apparatus(const SampledCurve& c);

struct FrenetIntegration {
    SampledCurve curve;
    std::vector<Mat3> frames; // columns t, n, b
};

// frame0 columns are (t, n, b) at s0.
FrenetIntegration integrate_frenet_frames(const ScalarFn& kappa, const ScalarFn& tau, const Vec3& p0,
                                          const Mat3& frame0, double s0, double s1, double step);
SampledCurve integrate_frenet(const ScalarFn& kappa, const ScalarFn& tau, const Vec3& p0, const Mat3& frame0,
                              double s0, double s1, double step);

// Plane curve with curvature c0/s^p on [s0, s1], returned in the plane.
SampledCurve powerlaw_plane_curve(double c0, double p, double s0, double s1, std::size_t n);
// Closed form for p = 1/2.
Vec hydrogen_curve_point(double c0, double s);

struct OsculatingSphere {
    Vec3 center = Vec3::Zero();
    double radius = 0;
    bool finite = false;
};

// Sphere at the sample whose arc length is nearest to s0.
OsculatingSphere osculating_sphere(const SampledCurve& c, double s0);
std::vector<OsculatingSphere> osculating_spheres(const FrenetData& fd);

// J = <alpha - p, alpha' x alpha''> in arc length.
std::vector<double> spherical_curvature_J(const SampledCurve& c, const Vec3& center);

Vec3 to3(const Vec& v);

} // namespace cg
