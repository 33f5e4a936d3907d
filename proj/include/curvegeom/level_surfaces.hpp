#pragma once

#include "curvegeom/indefinite_spaces.hpp"

#include <functional>
#include <string>

namespace cg {

// grad and hess are optional; finite differences are used when empty.
struct ScalarField {
    std::function<double(const Vec3&)> F;
    std::function<Vec3(const Vec3&)> grad;
    std::function<Mat3(const Vec3&)> hess;

    Vec3 gradient(const Vec3& p) const;
    Mat3 hessian(const Vec3& p) const;
};

// Field of the quadric <B(x-P), x-P> with analytic derivatives.
ScalarField quadric_field(const Mat3& B, const Vec3& P);

enum class QuadricKind { Ellipsoid, OneSheet, TwoSheet, DegenerateCylinderLike };
const char* quadric_kind_name(QuadricKind k);

struct QuadricClass {
    int index = 0;  // number of negative eigenvalues
    bool degenerate = false;
    QuadricKind kind = QuadricKind::Ellipsoid;
    Vec3 eigenvalues = Vec3::Zero();
};

// Eigenvalues below 1e-8 * ||B|| count as zero.
QuadricClass classify_matrix(const Mat3& B);
QuadricClass hessian_index(const ScalarField& field, const Vec3& p);

struct LevelMembership {
    bool on_level = false;
    double c = 0;                    // mean F along the curve
    double residual = 0;             // RMS of b2 k2 + b1 k1 + b0
    double derivative_residual = 0;  // max |b_i' - <Hess t, n_i>|
    double min_tangency = 0;         // min |<grad F, t>|
};

// rm must be a Euclidean RM frame of the curve (same samples).
LevelMembership level_membership_euclidean(const SampledCurve& c, const RMFrameData& rm, const ScalarField& field,
                                           double residual_tol = 1e-4);

struct QuadricMembership {
    bool on_quadric = false;
    double rho = 0;          // <B(x-P), x-P> = rho
    std::string branch;      // euclidean, lorentz, isotropic
    double center_offset = 0;
    std::string reason;
};

// Tests membership in {<B(x-P), x-P> = rho} for some rho, dispatching on the
// index of B: definite -> Euclidean spheres, index 1 or 2 -> Lorentz spheres,
// one zero eigenvalue -> isotropic cylinders.
QuadricMembership quadric_membership(const SampledCurve& c, const Mat3& B, const Vec3& P);

// Any unit vector orthogonal to t.
Vec generic_normal(const Vec& t);

} // namespace cg
