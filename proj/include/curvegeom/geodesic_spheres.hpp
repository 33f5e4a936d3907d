#pragma once

#include "curvegeom/rm_frames.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cg {

// S^{m+1}(r) = {<q,q> = r^2} in E^{m+2}, or the upper sheet
// H^{m+1}(r) = {<q,q>_1 = -r^2, q_1 > 0} with <x,y>_1 = -x1 y1 + x2 y2 + ...
enum class FormKind { Sphere, Hyperbolic };

struct SpaceForm {
    FormKind kind = FormKind::Sphere;
    double r = 1;
    int dim = 2;  // m + 1, so points have dim + 1 coordinates

    Vec signature() const;
    double dot(const Vec& a, const Vec& b) const;
    double norm2(const Vec& q) const { return dot(q, q); }
    bool contains(const Vec& q, double tol = 1e-8) const;
};

// cos(u/r) p + r sin(u/r) v, or the cosh/sinh analogue.
Vec exp_map(const SpaceForm& form, const Vec& p, const Vec& v, double u);

// Tangential part of an ambient derivative dy at q.
Vec covariant_derivative(const SpaceForm& form, const Vec& q, const Vec& dy);

// Unit tangent at x of the geodesic from p through x, pointing away from p.
Vec radial_tangent(const SpaceForm& form, const Vec& p, const Vec& x);

struct ManifoldRMData {
    SpaceForm form;
    std::vector<double> s;
    std::vector<Vec> points, t;
    std::vector<std::vector<Vec>> normals;    // normals[k][i], tangent to the form
    std::vector<std::vector<double>> kappas;  // <nabla_t t, n_k>
    std::vector<double> kappa;                // |nabla_t t|

    std::size_t m() const { return normals.size(); }
    std::size_t size() const { return s.size(); }
};

// Normal-bundle transport of an RM frame. Without a seed, n1 is chosen from
// the coordinate axes.
ManifoldRMData manifold_rm_frame(const SpaceForm& form, const SampledCurve& c,
                                 const std::optional<Vec>& init_normal = std::nullopt);

struct GeodesicSphereResult {
    bool on_sphere = false;
    double z0 = 0;
    Vec center;
    double C = 0;              // sum a_i kappa_i + C = 0 with |a| = 1
    Vec a;
    double fit_residual = 0;
    double center_drift = 0;
    std::string reason;
};

GeodesicSphereResult geodesic_sphere_test(const ManifoldRMData& rm);

struct TotallyGeodesicResult {
    bool plane = false;
    bool degenerate = false;   // every kappa_i vanishes; direction unconstrained
    Vec direction;             // u = sum a_i n_i, constant ambient vector
    double fit_residual = 0;   // RMS distance to the best hyperplane through 0
    double u_drift = 0;
};

TotallyGeodesicResult totally_geodesic_test(const ManifoldRMData& rm);

struct FrenetSphericalResult {
    double residual = 0;   // RMS of d/ds[(1/tau)(1/kappa)'] + tau/kappa
    std::vector<double> s, kappa, tau;
};

// Curves in S^3(r) or H^3(r).
FrenetSphericalResult frenet_spherical_test_3d(const SpaceForm& form, const SampledCurve& c);

} // namespace cg
