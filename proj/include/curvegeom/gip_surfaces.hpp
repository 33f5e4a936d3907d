#pragma once

#include "curvegeom/rm_frames.hpp"

#include <vector>

namespace cg {

// Rows index the first surface coordinate, columns the second.
using Grid = Eigen::MatrixXd;

enum class FrameKind { Frenet, RM };

struct TubeGeometry {
    FrameKind frame_kind = FrameKind::Frenet;
    double r = 0;
    std::vector<double> s, phi;           // phi in [0, 2 pi), n_phi points
    std::vector<double> kappa, tau, theta;
    std::vector<double> kappa1, kappa2;   // RM only
    std::vector<Vec3> points, e1, e2;     // (n, b) or (n1, n2)
    Grid f, g11, g12, g22, h11, h12, h22, K, H, Vgip;
};

// Closed-form fundamental forms of X = alpha + r cos(phi) e1 + r sin(phi) e2
// with the inward normal; Vgip = -(H^2 - K) in units hbar^2 / 2m = 1.
TubeGeometry tube_geometry(const SampledCurve& centerline, double r, FrameKind kind, std::size_t n_phi = 64);

Vec3 tube_point(const TubeGeometry& tube, std::size_t i, double phi);

enum class CriticalClass { Min, Max, Saddle, Degenerate };
const char* critical_class_name(CriticalClass c);

struct CriticalPoint {
    double s = 0, phi = 0;
    CriticalClass cls = CriticalClass::Degenerate;
};

// Critical points of Vgip from the zeros of kappa'; Frenet angles.
std::vector<CriticalPoint> vgip_critical_points(const TubeGeometry& tube);

// Curvatures of a sampled parametrized surface X[i][j] = X(u_i, v_j), by
// finite differences. The normal is X_u x X_v unless flip_normal.
struct SurfaceCurvatures {
    Grid g11, g12, g22, h11, h12, h22, K, H;
};
SurfaceCurvatures surface_curvatures_grid(const std::vector<double>& u, const std::vector<double>& v,
                                          const std::vector<std::vector<Vec3>>& X, bool periodic_v = false,
                                          bool flip_normal = false);

enum class SurfaceKind { Cylindrical, Revolution, Helicoidal };
const char* surface_kind_name(SurfaceKind k);

// Surface with metric du^2 + f(u)^2 dv^2 in its natural coordinates.
struct InvariantSurface {
    SurfaceKind kind = SurfaceKind::Cylindrical;
    std::vector<double> u, f, H, K;

    // cylindrical: section in the xy plane translated along a
    Vec3 direction = Vec3::UnitZ();
    SampledCurve section;
    std::vector<double> section_s;  // arc length of the section

    // revolution: profile (rho, lambda) rotated about the z axis
    std::vector<double> rho, lambda, A;

    // helicoidal: X = (rho cos(w phi), rho sin(w phi), lambda + phi),
    // phi = chi / a + Phi(xi)
    double omega = 1, a = 1;
    std::vector<double> U, Ud, Udd, Phi, dlambda, dPhi;

    // Embedded point at sample i of u and transverse coordinate v.
    Vec3 point(std::size_t i, double v) const;
};

SurfaceCurvatures invariant_surface_curvatures(const InvariantSurface& s, const std::vector<double>& v,
                                               bool flip_normal = false);

// Section with prescribed H(s) on [0, length]; a must have a_3 != 0.
InvariantSurface cylindrical_from_mean_curvature(const ScalarFn& H, const Vec3& a, double length,
                                                 std::size_t n = 2001);

// Profile lambda(rho) with sqrt(H^2 - K) = U(rho); sign picks the branch.
InvariantSurface revolution_from_U(const ScalarFn& U, double a1, double a2, double rho0, double rho1,
                                   std::size_t n = 2001, int sign = 1);

// RMS of Z' - 2 i U Z + |Z|^2 with Z = (x' + i z') / x, unit-speed profile.
double kenmotsu_residual(const std::vector<double>& s, const std::vector<double>& x, const std::vector<double>& z,
                         const std::vector<double>& U);

// Helicoidal surface with metric dxi^2 + U^2 dchi^2.
InvariantSurface bour_surface(const ScalarFn& U, double omega, double a, double xi0, double xi1,
                              std::size_t n = 2001, int sign = 1);

// First fundamental form in (xi, chi) from the closed-form tangents.
struct HelicoidalMetric {
    std::vector<double> g11, g12, g22;
};
HelicoidalMetric helicoidal_metric(const InvariantSurface& s);

struct MinimalHelicoidal {
    double omega = 1, omega0 = 1, omega1 = 0;
    double b() const { return omega0 - omega1 * omega1; }
    double U2(double xi) const { return (omega * xi + omega1) * (omega * xi + omega1) + b(); }
    double K(double xi) const { return -b() * omega * omega / (U2(xi) * U2(xi)); }
};

struct MinimalHelicoidalSurface {
    MinimalHelicoidal family;
    InvariantSurface surface;
};
MinimalHelicoidalSurface minimal_helicoidal_family(double omega, double omega0, double omega1, double xi0, double xi1,
                                                   std::size_t n = 2001);

} // namespace cg
