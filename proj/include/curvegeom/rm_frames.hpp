#pragma once

#include "curvegeom/curve_kernel.hpp"

#include <vector>

namespace cg {

// Adapted frame {t, n_1..n_m} in E^{m+1} whose normals are rotation minimizing.
struct RMFrameData {
    std::vector<double> s;
    std::vector<Vec> points;
    std::vector<Vec> t;
    std::vector<std::vector<Vec>> normals;     // normals[k][i]
    std::vector<std::vector<double>> kappas;   // kappas[k][i]
    std::vector<double> theta;                 // only from rm_from_frenet
    bool closed = false;

    std::size_t m() const { return normals.size(); }
    std::size_t size() const { return s.size(); }
    Vec development(std::size_t i) const;
};

// n1 = cos(theta) n - sin(theta) b, n2 = sin(theta) n + cos(theta) b, theta' = tau.
RMFrameData rm_from_frenet(const FrenetData& fd, double theta0);

// Discrete RM frame by two reflections per step, in any dimension. The
// remaining normals are completed from init_normal.
RMFrameData rm_double_reflection(const SampledCurve& c, const Vec& init_normal);

// Motion coefficients of an orthonormal frame (e0, e1, e2) with e0 = t:
// e0' = chi2 e1 - chi1 e2, e1' = -chi2 e0 + omega e2.
struct FrameMotion {
    std::vector<double> omega, chi1, chi2, w;
};
FrameMotion frame_motion(const std::vector<double>& s, const std::vector<Mat3>& frames);

std::vector<Mat3> frames_of(const RMFrameData& rm);
std::vector<Mat3> frames_of(const FrenetData& fd);
// Normals turned by phi(s): e1 = cos(phi) n1 + sin(phi) n2.
std::vector<Mat3> rotate_normals(const RMFrameData& rm, const std::vector<double>& phi);

std::vector<double> angular_velocity(const std::vector<double>& s, const std::vector<Mat3>& frames);
std::vector<double> angular_velocity(const RMFrameData& rm);
std::vector<double> angular_velocity(const FrenetData& fd);

enum class FitKind { LineNotThroughOrigin, LineThroughOrigin, NotALine, Point };
const char* fit_kind_name(FitKind k);

// For m > 2 the "line" is an affine hyperplane of the development space.
struct NormalDevelopment {
    std::vector<Vec> samples;
    FitKind fit_kind = FitKind::NotALine;
    double fit_residual = 0;
    double distance = 0;   // hyperplane distance to the origin
    Vec normal;            // unit normal of the fitted hyperplane
    Vec direction;         // line direction, m = 2 only
    Vec coeffs;            // a with <a, kappa> + 1 = 0
    double tol = 0;

    bool spherical() const { return fit_kind == FitKind::LineNotThroughOrigin || fit_kind == FitKind::Point; }
    double radius() const { return 1.0 / distance; }
};

// Throws DegenerateFit when every sample is the origin.
NormalDevelopment classify_development(const std::vector<Vec>& samples);
NormalDevelopment normal_development(const RMFrameData& rm);

// P = alpha - sum a_i n_i per sample.
std::vector<Vec> sphere_centers(const RMFrameData& rm, const NormalDevelopment& nd);
// Largest distance of a sample from the mean.
double drift(const std::vector<Vec>& v);

double total_torsion(const SampledCurve& c);

// Angle of the closing n1 relative to the starting (n1, n2), in (-pi, pi].
double holonomy_angle(const RMFrameData& rm);
double wrap_angle(double a);

} // namespace cg
