#include "curvegeom/level_surfaces.hpp"
#include "curvegeom/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cg {

Vec3 ScalarField::gradient(const Vec3& p) const {
    if (grad) return grad(p);
    const double h = 1e-5 * (1.0 + p.norm());
    Vec3 g;
    for (int k = 0; k < 3; ++k) {
        const Vec3 e = h * Vec3::Unit(k);
        g(k) = (-F(p + 2 * e) + 8 * F(p + e) - 8 * F(p - e) + F(p - 2 * e)) / (12 * h);
    }
    return g;
}

Mat3 ScalarField::hessian(const Vec3& p) const {
    if (hess) return hess(p);
    const double h = 1e-4 * (1.0 + p.norm());
    const double f0 = F(p);
    Mat3 H;
    for (int i = 0; i < 3; ++i) {
        const Vec3 ei = h * Vec3::Unit(i);
        H(i, i) = (-F(p + 2 * ei) + 16 * F(p + ei) - 30 * f0 + 16 * F(p - ei) - F(p - 2 * ei)) / (12 * h * h);
        for (int j = 0; j < i; ++j) {
            const Vec3 ej = h * Vec3::Unit(j);
            H(i, j) = H(j, i) = (F(p + ei + ej) - F(p + ei - ej) - F(p - ei + ej) + F(p - ei - ej)) / (4 * h * h);
        }
    }
    return H;
}

ScalarField quadric_field(const Mat3& B, const Vec3& P) {
    ScalarField f;
    f.F = [B, P](const Vec3& x) { return (x - P).dot(B * (x - P)); };
    f.grad = [B, P](const Vec3& x) { return Vec3(2.0 * B * (x - P)); };
    f.hess = [B](const Vec3&) { return Mat3(2.0 * B); };
    return f;
}

const char* quadric_kind_name(QuadricKind k) {
    switch (k) {
    case QuadricKind::Ellipsoid: return "Ellipsoid";
    case QuadricKind::OneSheet: return "OneSheet";
    case QuadricKind::TwoSheet: return "TwoSheet";
    case QuadricKind::DegenerateCylinderLike: return "DegenerateCylinderLike";
    }
    return "?";
}

QuadricClass classify_matrix(const Mat3& B) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (B + B.transpose()));
    QuadricClass q;
    q.eigenvalues = es.eigenvalues();
    const double tol = 1e-8 * std::max(B.norm(), 1e-300);
    for (int k = 0; k < 3; ++k) {
        if (std::abs(q.eigenvalues(k)) <= tol)
            q.degenerate = true;
        else if (q.eigenvalues(k) < 0)
            ++q.index;
    }
    if (q.degenerate)
        q.kind = QuadricKind::DegenerateCylinderLike;
    else if (q.index == 0 || q.index == 3)
        q.kind = QuadricKind::Ellipsoid;
    else if (q.index == 1)
        q.kind = QuadricKind::OneSheet;
    else
        q.kind = QuadricKind::TwoSheet;
    return q;
}

QuadricClass hessian_index(const ScalarField& field, const Vec3& p) { return classify_matrix(field.hessian(p)); }

LevelMembership level_membership_euclidean(const SampledCurve& c, const RMFrameData& rm, const ScalarField& field,
                                           double residual_tol) {
    if (rm.m() != 2 || rm.size() != c.size()) fail(ErrorCode::InvalidArgument, "RM frame does not match the curve");
    const std::size_t N = c.size();
    std::vector<double> crit(N), b1(N), b2(N), Fv(N), tang(N);
    std::vector<Vec3> Ht(N);
    for (std::size_t i = 0; i < N; ++i) {
        const Vec3 p = to3(c.points[i]), t = to3(rm.t[i]);
        const Vec3 g = field.gradient(p);
        Ht[i] = field.hessian(p) * t;
        const double b0 = Ht[i].dot(t);
        b1[i] = g.dot(to3(rm.normals[0][i]));
        b2[i] = g.dot(to3(rm.normals[1][i]));
        crit[i] = b2[i] * rm.kappas[1][i] + b1[i] * rm.kappas[0][i] + b0;
        Fv[i] = field.F(p);
        tang[i] = std::abs(g.dot(t));
    }
    const auto db1 = derivative(rm.s, b1, 1);
    const auto db2 = derivative(rm.s, b2, 1);
    LevelMembership out;
    out.residual = rms(crit);
    for (std::size_t i = 0; i < N; ++i) {
        out.derivative_residual = std::max(out.derivative_residual, std::abs(db1[i] - Ht[i].dot(to3(rm.normals[0][i]))));
        out.derivative_residual = std::max(out.derivative_residual, std::abs(db2[i] - Ht[i].dot(to3(rm.normals[1][i]))));
    }
    out.min_tangency = *std::min_element(tang.begin(), tang.end());
    out.c = mean(Fv);
    out.on_level = out.residual < residual_tol && out.derivative_residual < 1e-3 && out.min_tangency < 1e-6;
    return out;
}

Vec generic_normal(const Vec& t) {
    const Eigen::Index d = t.size();
    Vec best;
    double bn = -1;
    for (Eigen::Index k = 0; k < d; ++k) {
        Vec e = Vec::Unit(d, k);
        e -= e.dot(t) / t.squaredNorm() * t;
        if (e.norm() > bn) {
            bn = e.norm();
            best = e;
        }
    }
    return best / bn;
}

namespace {

SampledCurve map_curve(const SampledCurve& c, const Mat3& A, const Vec3& P) {
    SampledCurve out = c;
    out.ambient_dim = 3;
    for (auto& p : out.points) p = A * (to3(p) - P);
    return out;
}

double center_scale(double rho) { return 1e-3 * std::max(1.0, std::sqrt(std::abs(rho))); }

QuadricMembership euclidean_branch(const SampledCurve& y) {
    QuadricMembership out;
    out.branch = "euclidean";
    const auto d1 = point_derivative(y, 1);
    const auto rm = rm_double_reflection(y, generic_normal(d1[0] / d1[0].norm()));
    const auto nd = normal_development(rm);
    if (!nd.spherical()) {
        out.reason = std::string("normal development is ") + fit_kind_name(nd.fit_kind);
        return out;
    }
    const auto P = sphere_centers(rm, nd);
    Vec c = Vec::Zero(3);
    for (const auto& p : P) c += p;
    c /= static_cast<double>(P.size());
    out.rho = nd.radius() * nd.radius();
    out.center_offset = c.norm();
    if (drift(P) > 1e-3 || out.center_offset > center_scale(out.rho)) {
        out.reason = "sphere center does not match P";
        return out;
    }
    out.on_quadric = true;
    return out;
}

QuadricMembership lorentz_branch(const SampledCurve& y) {
    QuadricMembership out;
    out.branch = "lorentz";
    const auto rm = lorentz_rm_frame(y);
    const auto ls = lorentz_sphere_membership(rm);
    if (ls.kind == LorentzSphereKind::None) {
        out.reason = "no pseudo-sphere fits";
        return out;
    }
    out.rho = ls.kind == LorentzSphereKind::PseudoSphere       ? ls.radius * ls.radius
              : ls.kind == LorentzSphereKind::PseudoHyperbolic ? -ls.radius * ls.radius
                                                               : 0.0;
    out.center_offset = ls.center.norm();
    if (out.center_offset > center_scale(out.rho)) {
        out.reason = "pseudo-sphere center does not match P";
        return out;
    }
    out.on_quadric = true;
    return out;
}

QuadricMembership isotropic_branch(const SampledCurve& y) {
    QuadricMembership out;
    out.branch = "isotropic";
    const auto iso = iso_apparatus(y);
    const auto cl = iso_sphere_classify(iso);
    if (cl.kind != IsoSphereKind::Cylindrical) {
        out.reason = std::string("isotropic class is ") + iso_sphere_name(cl.kind);
        return out;
    }
    Vec2 c = Vec2::Zero();
    for (std::size_t i = 0; i < iso.s.size(); ++i)
        c += iso.points[i].head<2>() + iso.n[i].head<2>() / iso.kappa[i];
    c /= static_cast<double>(iso.s.size());
    out.rho = cl.radius * cl.radius;
    out.center_offset = c.norm();
    if (out.center_offset > center_scale(out.rho)) {
        out.reason = "cylinder axis does not pass through P";
        return out;
    }
    out.on_quadric = true;
    return out;
}

} // namespace

QuadricMembership quadric_membership(const SampledCurve& c, const Mat3& B0, const Vec3& P) {
    validate(c);
    if (c.ambient_dim != 3) fail(ErrorCode::InvalidCurve, "expected a curve in 3-space");
    QuadricClass q = classify_matrix(B0);
    Mat3 B = 0.5 * (B0 + B0.transpose());
    // a negated matrix describes the same family of quadrics with rho -> -rho
    double sign = 1.0;
    if (q.degenerate) {
        const int nonzero_neg = q.index;
        const int zeros = static_cast<int>((q.eigenvalues.array().abs() <= 1e-8 * B.norm()).count());
        if (zeros != 1 || nonzero_neg == 1)
            fail(ErrorCode::UnsupportedSignature, "degenerate quadric is not an isotropic sphere");
        if (nonzero_neg == 2) sign = -1.0;
    } else if (q.index == 3 || q.index == 2) {
        sign = -1.0;
    }
    B *= sign;
    Eigen::SelfAdjointEigenSolver<Mat3> es(B);
    const Vec3 lam = es.eigenvalues();
    const Mat3 Q = es.eigenvectors();

    // rows of A map x - P to coordinates where B becomes a standard form
    Mat3 A;
    QuadricMembership out;
    try {
        if (q.degenerate) {
            // ascending order: the zero eigenvalue comes first
            A.row(0) = std::sqrt(lam(1)) * Q.col(1).transpose();
            A.row(1) = std::sqrt(lam(2)) * Q.col(2).transpose();
            A.row(2) = Q.col(0).transpose();
            out = isotropic_branch(map_curve(c, A, P));
        } else if (lam(0) > 0) {
            for (int k = 0; k < 3; ++k) A.row(k) = std::sqrt(lam(k)) * Q.col(k).transpose();
            out = euclidean_branch(map_curve(c, A, P));
        } else {
            // one negative eigenvalue, which becomes the timelike axis
            A.row(0) = std::sqrt(lam(1)) * Q.col(1).transpose();
            A.row(1) = std::sqrt(lam(2)) * Q.col(2).transpose();
            A.row(2) = std::sqrt(-lam(0)) * Q.col(0).transpose();
            out = lorentz_branch(map_curve(c, A, P));
        }
    } catch (const GeometryError& e) {
        if (is_input_error(e.code())) throw;
        out.on_quadric = false;
        out.reason = e.what();
    }
    out.rho *= sign;
    return out;
}

} // namespace cg
