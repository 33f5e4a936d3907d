#include "curvegeom/rm_frames.hpp"
#include "curvegeom/errors.hpp"

#include <cmath>
#include <numbers>

namespace cg {

Vec RMFrameData::development(std::size_t i) const {
    Vec k(m());
    for (std::size_t j = 0; j < m(); ++j) k(j) = kappas[j][i];
    return k;
}

RMFrameData rm_from_frenet(const FrenetData& fd, double theta0) {
    const std::size_t N = fd.s.size();
    for (std::size_t i = 0; i < N; ++i)
        if (!fd.kappa_defined[i])
            fail(ErrorCode::UndefinedFrame, "inflection at s = " + std::to_string(fd.s[i]) + "; use double reflection");
    RMFrameData rm;
    rm.s = fd.s;
    rm.closed = fd.closed;
    rm.theta = cumulative_integral(fd.s, fd.tau);
    rm.normals.assign(2, std::vector<Vec>(N));
    rm.kappas.assign(2, std::vector<double>(N));
    for (std::size_t i = 0; i < N; ++i) {
        const double th = (rm.theta[i] += theta0);
        const double c = std::cos(th), s = std::sin(th);
        rm.points.push_back(fd.points[i]);
        rm.t.push_back(fd.t[i]);
        rm.normals[0][i] = c * fd.n[i] - s * fd.b[i];
        rm.normals[1][i] = s * fd.n[i] + c * fd.b[i];
        rm.kappas[0][i] = fd.kappa[i] * c;
        rm.kappas[1][i] = fd.kappa[i] * s;
    }
    return rm;
}

namespace {

// Orthonormal completion of {t, n1} to a right-handed basis of R^d.
std::vector<Vec> complete_normals(const Vec& t, const Vec& n1) {
    const Eigen::Index d = t.size();
    std::vector<Vec> basis{t, n1};
    if (d == 3) {
        basis.push_back(to3(t).cross(to3(n1)));
    } else {
        while (static_cast<Eigen::Index>(basis.size()) < d) {
            Vec best;
            double bestn = -1;
            for (Eigen::Index k = 0; k < d; ++k) {
                Vec e = Vec::Unit(d, k);
                for (const auto& q : basis) e -= e.dot(q) * q;
                if (e.norm() > bestn) {
                    bestn = e.norm();
                    best = e;
                }
            }
            basis.push_back(best / bestn);
        }
        Eigen::MatrixXd M(d, d);
        for (Eigen::Index k = 0; k < d; ++k) M.col(k) = basis[k];
        if (M.determinant() < 0) basis.back() = -basis.back();
    }
    return {basis.begin() + 1, basis.end()};
}

Vec reflect(const Vec& x, const Vec& v, double vv) { return x - (2.0 * v.dot(x) / vv) * v; }

} // namespace

RMFrameData rm_double_reflection(const SampledCurve& c, const Vec& init_normal) {
    validate(c);
    const std::size_t N = c.size();
    const Eigen::Index d = c.ambient_dim;
    if (init_normal.size() != d) fail(ErrorCode::InvalidFrame, "initial normal has the wrong dimension");
    auto d1 = point_derivative(c, 1);
    auto d2 = point_derivative(c, 2);
    std::vector<double> v(N);
    RMFrameData rm;
    rm.closed = c.closed;
    rm.points = c.points;
    rm.t.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        v[i] = d1[i].norm();
        rm.t[i] = d1[i] / v[i];
    }
    rm.s = cumulative_integral(c.params, v);

    const double nn = init_normal.norm();
    if (!(nn > 0)) fail(ErrorCode::InvalidFrame, "initial normal is zero");
    Vec n1 = init_normal / nn;
    if (std::abs(n1.dot(rm.t[0])) > 1e-6) fail(ErrorCode::InvalidFrame, "initial normal is not orthogonal to t");
    n1 -= n1.dot(rm.t[0]) * rm.t[0];
    n1.normalize();

    const std::size_t m = static_cast<std::size_t>(d - 1);
    rm.normals.assign(m, std::vector<Vec>(N));
    auto first = complete_normals(rm.t[0], n1);
    for (std::size_t k = 0; k < m; ++k) rm.normals[k][0] = first[k];

    for (std::size_t i = 0; i + 1 < N; ++i) {
        const Vec v1 = c.points[i + 1] - c.points[i];
        const double c1 = v1.squaredNorm();
        const Vec tL = reflect(rm.t[i], v1, c1);
        const Vec v2 = rm.t[i + 1] - tL;
        const double c2 = v2.squaredNorm();
        for (std::size_t k = 0; k < m; ++k) {
            Vec r = reflect(rm.normals[k][i], v1, c1);
            if (c2 > 1e-28) r = reflect(r, v2, c2);
            // remove the slow drift away from the normal space
            r -= r.dot(rm.t[i + 1]) * rm.t[i + 1];
            for (std::size_t j = 0; j < k; ++j) r -= r.dot(rm.normals[j][i + 1]) * rm.normals[j][i + 1];
            rm.normals[k][i + 1] = r.normalized();
        }
    }

    rm.kappas.assign(m, std::vector<double>(N));
    for (std::size_t i = 0; i < N; ++i) {
        const Vec kv = (d2[i] - d2[i].dot(rm.t[i]) * rm.t[i]) / (v[i] * v[i]);
        for (std::size_t k = 0; k < m; ++k) rm.kappas[k][i] = kv.dot(rm.normals[k][i]);
    }
    return rm;
}

FrameMotion frame_motion(const std::vector<double>& s, const std::vector<Mat3>& frames) {
    const std::size_t N = frames.size();
    std::vector<Vec3> e0(N), e1(N), e2(N);
    for (std::size_t i = 0; i < N; ++i) {
        e0[i] = frames[i].col(0);
        e1[i] = frames[i].col(1);
        e2[i] = frames[i].col(2);
    }
    auto d0 = derivative(s, e0, 1);
    auto d1 = derivative(s, e1, 1);
    FrameMotion fm;
    fm.omega.resize(N);
    fm.chi1.resize(N);
    fm.chi2.resize(N);
    fm.w.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        fm.chi2[i] = d0[i].dot(e1[i]);
        fm.chi1[i] = -d0[i].dot(e2[i]);
        fm.omega[i] = d1[i].dot(e2[i]);
        fm.w[i] = std::sqrt(fm.omega[i] * fm.omega[i] + fm.chi1[i] * fm.chi1[i] + fm.chi2[i] * fm.chi2[i]);
    }
    return fm;
}

std::vector<Mat3> frames_of(const RMFrameData& rm) {
    if (rm.m() != 2) fail(ErrorCode::InvalidArgument, "3D frame expected");
    std::vector<Mat3> F(rm.size());
    for (std::size_t i = 0; i < rm.size(); ++i) F[i] << to3(rm.t[i]), to3(rm.normals[0][i]), to3(rm.normals[1][i]);
    return F;
}

std::vector<Mat3> frames_of(const FrenetData& fd) {
    std::vector<Mat3> F(fd.s.size());
    for (std::size_t i = 0; i < fd.s.size(); ++i) {
        if (!fd.kappa_defined[i]) fail(ErrorCode::UndefinedFrame, "Frenet frame undefined at inflection");
        F[i] << fd.t[i], fd.n[i], fd.b[i];
    }
    return F;
}

std::vector<Mat3> rotate_normals(const RMFrameData& rm, const std::vector<double>& phi) {
    auto F = frames_of(rm);
    for (std::size_t i = 0; i < F.size(); ++i) {
        const Vec3 n1 = F[i].col(1), n2 = F[i].col(2);
        const double c = std::cos(phi[i]), s = std::sin(phi[i]);
        F[i].col(1) = c * n1 + s * n2;
        F[i].col(2) = -s * n1 + c * n2;
    }
    return F;
}

std::vector<double> angular_velocity(const std::vector<double>& s, const std::vector<Mat3>& frames) {
    return frame_motion(s, frames).w;
}
std::vector<double> angular_velocity(const RMFrameData& rm) { return angular_velocity(rm.s, frames_of(rm)); }
std::vector<double> angular_velocity(const FrenetData& fd) { return angular_velocity(fd.s, frames_of(fd)); }

const char* fit_kind_name(FitKind k) {
    switch (k) {
    case FitKind::LineNotThroughOrigin: return "LineNotThroughOrigin";
    case FitKind::LineThroughOrigin: return "LineThroughOrigin";
    case FitKind::NotALine: return "NotALine";
    case FitKind::Point: return "Point";
    }
    return "?";
}

NormalDevelopment classify_development(const std::vector<Vec>& samples) {
    NormalDevelopment nd;
    nd.samples = samples;
    auto fit = fit_affine_hyperplane(samples);
    nd.tol = 1e-3 * fit.rms_norm;
    if (fit.rms_norm < 1e-12) fail(ErrorCode::DegenerateFit, "normal development is the origin (straight line)");
    if (fit.spread < nd.tol) {
        // a constant development point: a circle, spherical with r = 1/|point|
        nd.fit_kind = FitKind::Point;
        nd.fit_residual = fit.spread;
        nd.distance = fit.centroid.norm();
        nd.normal = fit.centroid / nd.distance;
        nd.coeffs = -fit.centroid / fit.centroid.squaredNorm();
        return nd;
    }
    nd.fit_residual = fit.residual;
    nd.normal = fit.normal;
    if (samples[0].size() == 2) nd.direction = (Vec(2) << -fit.normal(1), fit.normal(0)).finished();
    if (fit.residual > nd.tol) {
        nd.fit_kind = FitKind::NotALine;
        return nd;
    }
    nd.distance = fit.offset;
    if (fit.offset < nd.tol) {
        nd.fit_kind = FitKind::LineThroughOrigin;
        return nd;
    }
    nd.fit_kind = FitKind::LineNotThroughOrigin;
    nd.coeffs = -fit.normal / fit.offset;
    return nd;
}

NormalDevelopment normal_development(const RMFrameData& rm) {
    if (rm.m() < 2) fail(ErrorCode::InvalidArgument, "normal development needs m >= 2");
    std::vector<Vec> samples(rm.size());
    for (std::size_t i = 0; i < rm.size(); ++i) samples[i] = rm.development(i);
    return classify_development(samples);
}

std::vector<Vec> sphere_centers(const RMFrameData& rm, const NormalDevelopment& nd) {
    if (!nd.spherical()) fail(ErrorCode::InvalidArgument, "development does not describe a sphere");
    std::vector<Vec> P(rm.size());
    for (std::size_t i = 0; i < rm.size(); ++i) {
        P[i] = rm.points[i];
        for (std::size_t k = 0; k < rm.m(); ++k) P[i] -= nd.coeffs(k) * rm.normals[k][i];
    }
    return P;
}

double drift(const std::vector<Vec>& v) {
    Vec c = Vec::Zero(v[0].size());
    for (const auto& x : v) c += x;
    c /= static_cast<double>(v.size());
    double d = 0;
    for (const auto& x : v) d = std::max(d, (x - c).norm());
    return d;
}

double total_torsion(const SampledCurve& c) {
    if (!c.closed) fail(ErrorCode::NotClosed, "total torsion needs a closed curve");
    const FrenetData fd = frenet_apparatus(c);
    const auto v = speeds(c);
    std::vector<double> f(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!fd.kappa_defined[i]) fail(ErrorCode::UndefinedFrame, "curvature vanishes at sample " + std::to_string(i));
        f[i] = fd.tau[i] * v[i];
    }
    return periodic_integral(c.params, f);
}

double wrap_angle(double a) {
    const double tp = 2 * std::numbers::pi;
    a = std::fmod(a, tp);
    if (a <= -std::numbers::pi) a += tp;
    if (a > std::numbers::pi) a -= tp;
    return a;
}

double holonomy_angle(const RMFrameData& rm) {
    if (!rm.closed) fail(ErrorCode::NotClosed, "holonomy needs a closed curve");
    if (rm.m() != 2) fail(ErrorCode::InvalidArgument, "holonomy is defined for space curves");
    const Vec& nL = rm.normals[0].back();
    return std::atan2(-nL.dot(rm.normals[1].front()), nL.dot(rm.normals[0].front()));
}

} // namespace cg
