#include "curvegeom/geodesic_spheres.hpp"
#include "curvegeom/errors.hpp"

#include <cmath>
#include <numbers>

namespace cg {

Vec SpaceForm::signature() const {
    Vec g = Vec::Ones(dim + 1);
    if (kind == FormKind::Hyperbolic) g(0) = -1;
    return g;
}

double SpaceForm::dot(const Vec& a, const Vec& b) const {
    double d = a.dot(b);
    if (kind == FormKind::Hyperbolic) d -= 2 * a(0) * b(0);
    return d;
}

bool SpaceForm::contains(const Vec& q, double tol) const {
    if (q.size() != dim + 1) return false;
    const double target = kind == FormKind::Sphere ? r * r : -r * r;
    if (kind == FormKind::Hyperbolic && q(0) <= 0) return false;
    return std::abs(norm2(q) - target) <= tol * r * r;
}

Vec exp_map(const SpaceForm& form, const Vec& p, const Vec& v, double u) {
    if (!form.contains(p)) fail(ErrorCode::NotTangent, "base point is not on the space form");
    if (v.size() != p.size() || std::abs(form.dot(p, v)) > 1e-8 * form.r || std::abs(form.dot(v, v) - 1) > 1e-8)
        fail(ErrorCode::NotTangent, "direction is not a unit tangent vector at p");
    const double x = u / form.r;
    if (form.kind == FormKind::Sphere) return std::cos(x) * p + form.r * std::sin(x) * v;
    return std::cosh(x) * p + form.r * std::sinh(x) * v;
}

Vec covariant_derivative(const SpaceForm& form, const Vec& q, const Vec& dy) {
    return dy - (form.dot(dy, q) / form.dot(q, q)) * q;
}

Vec radial_tangent(const SpaceForm& form, const Vec& p, const Vec& x) {
    Vec w = (form.dot(p, x) / form.dot(x, x)) * x - p;
    return w / std::sqrt(std::abs(form.dot(w, w)));
}

namespace {

void require_on_form(const SpaceForm& form, const SampledCurve& c) {
    validate(c);
    if (c.ambient_dim != form.dim + 1) fail(ErrorCode::InvalidCurve, "curve dimension does not match the space form");
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!form.contains(c.points[i]))
            fail(ErrorCode::InvalidCurve, "sample " + std::to_string(i) + " is not on the space form");
}

// Unit tangent vector of the form at q orthogonal to t.
Vec seed_normal(const SpaceForm& form, const Vec& q, const Vec& t) {
    const Eigen::Index d = q.size();
    Vec best;
    double bn = -1;
    for (Eigen::Index k = 0; k < d; ++k) {
        Vec e = Vec::Unit(d, k);
        e -= (form.dot(e, q) / form.dot(q, q)) * q;
        e -= (form.dot(e, t) / form.dot(t, t)) * t;
        const double n = std::sqrt(std::abs(form.dot(e, e)));
        if (n > bn) {
            bn = n;
            best = e / n;
        }
    }
    return best;
}

// Completes {q, t, n_1} to an orthonormal basis of the tangent space.
std::vector<Vec> complete_tangent_normals(const SpaceForm& form, const Vec& q, const Vec& t, const Vec& n1) {
    std::vector<Vec> ns{n1};
    const Eigen::Index d = q.size();
    while (static_cast<int>(ns.size()) < form.dim - 1) {
        Vec best;
        double bn = -1;
        for (Eigen::Index k = 0; k < d; ++k) {
            Vec e = Vec::Unit(d, k);
            e -= (form.dot(e, q) / form.dot(q, q)) * q;
            e -= (form.dot(e, t) / form.dot(t, t)) * t;
            for (const auto& n : ns) e -= form.dot(e, n) * n;
            const double nn = std::sqrt(std::abs(form.dot(e, e)));
            if (nn > bn) {
                bn = nn;
                best = e / nn;
            }
        }
        ns.push_back(best);
    }
    return ns;
}

} // namespace

ManifoldRMData manifold_rm_frame(const SpaceForm& form, const SampledCurve& c, const std::optional<Vec>& init_normal) {
    require_on_form(form, c);
    if (form.dim < 2) fail(ErrorCode::InvalidArgument, "space form dimension must be >= 2");
    const std::size_t N = c.size();
    const auto d1 = point_derivative(c, 1);
    std::vector<double> v(N);
    ManifoldRMData rm;
    rm.form = form;
    rm.points = c.points;
    rm.t.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        v[i] = std::sqrt(std::abs(form.dot(d1[i], d1[i])));
        rm.t[i] = d1[i] / v[i];
    }
    rm.s = cumulative_integral(c.params, v);
    const auto tp = derivative(rm.s, rm.t, 1, c.closed);

    Vec n1;
    if (init_normal) {
        n1 = *init_normal;
        if (n1.size() != c.ambient_dim) fail(ErrorCode::InvalidFrame, "initial normal has the wrong dimension");
        const double nn = std::sqrt(std::abs(form.dot(n1, n1)));
        n1 /= nn;
        if (std::abs(form.dot(n1, rm.t[0])) > 1e-6 || std::abs(form.dot(n1, c.points[0])) > 1e-6 * form.r)
            fail(ErrorCode::InvalidFrame, "initial normal is not a tangent normal");
    } else {
        n1 = seed_normal(form, c.points[0], rm.t[0]);
    }
    const auto init = complete_tangent_normals(form, c.points[0], rm.t[0], n1);
    const Vec g = form.signature();
    rm.normals = transport_normals(rm.s, rm.t, tp, g, init, &rm.points);

    const std::size_t m = rm.normals.size();
    rm.kappas.assign(m, std::vector<double>(N));
    rm.kappa.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const Vec k = covariant_derivative(form, c.points[i], tp[i]);
        rm.kappa[i] = std::sqrt(std::max(0.0, form.dot(k, k)));
        for (std::size_t j = 0; j < m; ++j) rm.kappas[j][i] = form.dot(k, rm.normals[j][i]);
    }
    return rm;
}

namespace {

std::vector<Vec> development_samples(const ManifoldRMData& rm) {
    std::vector<Vec> out(rm.size(), Vec(rm.m()));
    for (std::size_t i = 0; i < rm.size(); ++i)
        for (std::size_t k = 0; k < rm.m(); ++k) out[i](k) = rm.kappas[k][i];
    return out;
}

} // namespace

GeodesicSphereResult geodesic_sphere_test(const ManifoldRMData& rm) {
    const SpaceForm& form = rm.form;
    const double r = form.r;
    GeodesicSphereResult out;
    NormalDevelopment nd;
    try {
        nd = classify_development(development_samples(rm));
    } catch (const GeometryError&) {
        out.reason = "geodesic: every kappa_i vanishes";
        return out;
    }
    out.fit_residual = nd.fit_residual;
    if (nd.fit_kind == FitKind::NotALine) fail(ErrorCode::NoFit, "no hyperplane fits the normal development");
    if (nd.fit_kind == FitKind::LineThroughOrigin) {
        out.reason = "development passes through the origin (totally geodesic)";
        return out;
    }
    // <nu, kappa> = c with c >= 0, i.e. a = -nu and C = c
    out.a = -nd.normal;
    out.C = nd.distance;
    const double rc = r * out.C;
    if (form.kind == FormKind::Sphere) {
        out.z0 = r * std::atan(1.0 / rc);
        if (out.z0 >= std::numbers::pi * r / 2) fail(ErrorCode::RadiusOutOfRange, "geodesic radius >= pi r / 2");
    } else {
        if (rc <= 1.0) {
            out.reason = "r C <= 1: horosphere or equidistant hypersurface, not a geodesic sphere";
            return out;
        }
        out.z0 = r * std::atanh(1.0 / rc);
    }
    const double x = out.z0 / r;
    const double cc = form.kind == FormKind::Sphere ? std::cos(x) : std::cosh(x);
    const double ss = form.kind == FormKind::Sphere ? std::sin(x) : std::sinh(x);
    std::vector<Vec> P(rm.size());
    for (std::size_t i = 0; i < rm.size(); ++i) {
        Vec u = Vec::Zero(rm.points[i].size());
        for (std::size_t k = 0; k < rm.m(); ++k) u += out.a(k) * rm.normals[k][i];
        P[i] = cc * rm.points[i] - r * ss * u;
    }
    out.center_drift = drift(P);
    out.center = Vec::Zero(P[0].size());
    for (const auto& p : P) out.center += p;
    out.center /= static_cast<double>(P.size());
    if (out.center_drift > 1e-3) {
        out.reason = "reconstructed center is not constant";
        return out;
    }
    out.on_sphere = true;
    return out;
}

TotallyGeodesicResult totally_geodesic_test(const ManifoldRMData& rm) {
    TotallyGeodesicResult out;
    const auto samples = development_samples(rm);
    const auto fit = fit_linear_hyperplane(samples);
    out.fit_residual = fit.residual;
    if (fit.rms_norm < 1e-8) {
        out.plane = true;
        out.degenerate = true;
        return out;
    }
    if (fit.residual > 1e-3 * fit.rms_norm) return out;
    std::vector<Vec> U(rm.size());
    for (std::size_t i = 0; i < rm.size(); ++i) {
        U[i] = Vec::Zero(rm.points[i].size());
        for (std::size_t k = 0; k < rm.m(); ++k) U[i] += fit.normal(k) * rm.normals[k][i];
    }
    out.u_drift = drift(U);
    out.direction = U[0];
    out.plane = out.u_drift < 1e-3;
    return out;
}

namespace {

// Vector G-orthogonal to the three rows, via 3x3 cofactors.
Vec4d cross4(const Vec4d& a, const Vec4d& b, const Vec4d& c) {
    Eigen::Matrix<double, 3, 4> M;
    M << a.transpose(), b.transpose(), c.transpose();
    Vec4d out;
    for (int j = 0; j < 4; ++j) {
        Eigen::Matrix3d S;
        int col = 0;
        for (int k = 0; k < 4; ++k)
            if (k != j) S.col(col++) = M.col(k);
        out(j) = ((j % 2) ? -1.0 : 1.0) * S.determinant();
    }
    return out;
}

} // namespace

FrenetSphericalResult frenet_spherical_test_3d(const SpaceForm& form, const SampledCurve& c) {
    if (form.dim != 3) fail(ErrorCode::InvalidArgument, "Frenet test needs S^3 or H^3");
    require_on_form(form, c);
    const std::size_t N = c.size();
    const auto d1 = point_derivative(c, 1);
    std::vector<double> v(N);
    std::vector<Vec> t(N);
    for (std::size_t i = 0; i < N; ++i) {
        v[i] = std::sqrt(std::abs(form.dot(d1[i], d1[i])));
        t[i] = d1[i] / v[i];
    }
    FrenetSphericalResult out;
    out.s = cumulative_integral(c.params, v);
    const auto tp = derivative(out.s, t, 1, c.closed);
    const Vec g = form.signature();
    std::vector<Vec> n(N), b(N);
    out.kappa.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const Vec k = covariant_derivative(form, c.points[i], tp[i]);
        out.kappa[i] = std::sqrt(std::max(0.0, form.dot(k, k)));
        if (out.kappa[i] < kKappaTol) fail(ErrorCode::UndefinedFrame, "geodesic curvature vanishes");
        n[i] = k / out.kappa[i];
        const Vec4d G = g;
        Vec4d bb = cross4(G.cwiseProduct(Vec4d(c.points[i])), G.cwiseProduct(Vec4d(t[i])), G.cwiseProduct(Vec4d(n[i])));
        b[i] = bb / std::sqrt(std::abs(form.dot(bb, bb)));
    }
    const auto np = derivative(out.s, n, 1, c.closed);
    out.tau.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        out.tau[i] = form.dot(np[i], b[i]);
        if (std::abs(out.tau[i]) < 1e-8) fail(ErrorCode::ZeroTorsion, "torsion vanishes at sample " + std::to_string(i));
    }
    std::vector<double> rho(N), q(N);
    for (std::size_t i = 0; i < N; ++i) rho[i] = 1.0 / out.kappa[i];
    const auto drho = derivative(out.s, rho, 1, c.closed);
    for (std::size_t i = 0; i < N; ++i) q[i] = drho[i] / out.tau[i];
    const auto dq = derivative(out.s, q, 1, c.closed);
    std::vector<double> res(N);
    for (std::size_t i = 0; i < N; ++i) res[i] = dq[i] + out.tau[i] / out.kappa[i];
    out.residual = rms(res);
    return out;
}

} // namespace cg
