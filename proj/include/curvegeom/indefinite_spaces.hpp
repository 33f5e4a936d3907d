#pragma once

#include "curvegeom/rm_frames.hpp"

#include <utility>
#include <vector>

namespace cg {

// ---- Lorentz-Minkowski space, <x,y>_1 = x1 y1 + x2 y2 - x3 y3 ----

enum class Causal { Spacelike, Timelike, Lightlike };
const char* causal_name(Causal c);

inline const Vec3 kLorentzSig(1.0, 1.0, -1.0);
inline double ldot(const Vec3& a, const Vec3& b) { return a(0) * b(0) + a(1) * b(1) - a(2) * b(2); }

// <u x v, w>_1 = det(u, v, w)
Vec3 lorentz_cross(const Vec3& u, const Vec3& v);

// Lightlike when |<v,v>_1| <= tol |v|^2.
Causal causal_character(const Vec3& v, double tol = 1e-10);

// New params are (pseudo) arc length; points are kept. Lightlike curves use
// d(sigma) = <a'', a''>_1^(1/4) du so that <a_sigma sigma, a_sigma sigma>_1 = 1.
std::pair<SampledCurve, Causal> reparametrize_causal(const SampledCurve& c);

struct LorentzRMData {
    std::vector<double> s;
    std::vector<Vec3> points, t, n1, n2;
    std::vector<double> kappa1, kappa2;
    std::vector<double> kappa;   // sqrt|<t',t'>_1|
    std::vector<int> eta;        // sign of <t',t'>_1, 0 when lightlike
    std::vector<double> theta;   // angle to the normalized t' (NaN where t' is null)
    int eps = 1;                 // <t,t>_1
    int eps1 = 1;                // <n1,n1>_1
    Causal character = Causal::Spacelike;
};

// Spacelike curves get a timelike n1, timelike curves a spacelike one;
// n2 = t x n1 in both cases, so <n2,n2>_1 = 1.
LorentzRMData lorentz_rm_frame(const SampledCurve& c);

struct NullFrameData {
    std::vector<double> s;
    std::vector<Vec3> t, z1, z2;
    std::vector<double> kappa1, kappa2, kappa3;
};

// Null frame with z1 spacelike unit, z2 lightlike, <t,z2>_1 = 1. Straight
// lightlike lines (kappa1 = 0) raise DegenerateLightlike.
NullFrameData null_frame(const SampledCurve& c);

enum class LorentzSphereKind { PseudoSphere, PseudoHyperbolic, LightCone, None };
const char* lorentz_sphere_name(LorentzSphereKind k);

struct LorentzSphere {
    LorentzSphereKind kind = LorentzSphereKind::None;
    Vec3 center = Vec3::Zero();
    double radius = 0;
    double a1 = 0, a2 = 0;       // 1 + eps (a1 kappa1 + a2 kappa2) = 0
    double fit_residual = 0;
    double center_drift = 0;
};

LorentzSphere lorentz_sphere_membership(const LorentzRMData& rm);

// ---- simply isotropic space I^3, top view = projection to z = 0 ----

struct IsoFrameData {
    std::vector<double> s;
    std::vector<Vec3> points, t, n, b;
    std::vector<double> kappa, tau, rm_theta, kappa1, kappa2;
};

IsoFrameData iso_apparatus(const SampledCurve& c, double theta0 = 0.0);

enum class IsoSphereKind { Cylindrical, Parabolic, Plane, None };
const char* iso_sphere_name(IsoSphereKind k);

struct IsoSphere {
    IsoSphereKind kind = IsoSphereKind::None;
    double radius = 0;            // Cylindrical
    Vec line_normal;              // Parabolic / Plane
    double line_distance = 0;
    double kappa_spread = 0;      // std/mean of kappa
    double fit_residual = 0;
};

IsoSphere iso_sphere_classify(const IsoFrameData& iso);

} // namespace cg
