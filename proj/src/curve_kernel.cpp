#include "curvegeom/curve_kernel.hpp"
#include "curvegeom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cg {

Vec3 to3(const Vec& v) {
    if (v.size() == 3) return Vec3(v(0), v(1), v(2));
    if (v.size() == 2) return Vec3(v(0), v(1), 0.0);
    fail(ErrorCode::InvalidArgument, "expected a 2- or 3-vector, got dimension " + std::to_string(v.size()));
}

void validate(const SampledCurve& c) {
    const std::size_t n = c.points.size();
    if (n < 4) fail(ErrorCode::InvalidCurve, "need at least 4 samples, got " + std::to_string(n));
    if (c.params.size() != n) fail(ErrorCode::InvalidCurve, "params/points length mismatch");
    if (c.ambient_dim < 2) fail(ErrorCode::InvalidCurve, "ambient dimension must be >= 2");
    for (std::size_t i = 0; i < n; ++i) {
        if (c.points[i].size() != c.ambient_dim)
            fail(ErrorCode::InvalidCurve, "sample " + std::to_string(i) + " has wrong dimension");
        if (!c.points[i].allFinite() || !std::isfinite(c.params[i]))
            fail(ErrorCode::InvalidCurve, "sample " + std::to_string(i) + " is not finite");
        if (i > 0 && !(c.params[i] > c.params[i - 1]))
            fail(ErrorCode::InvalidCurve, "params not strictly increasing at sample " + std::to_string(i));
    }
    if (c.closed && (c.points.front() - c.points.back()).norm() > 1e-9)
        fail(ErrorCode::InvalidCurve, "closed curve whose endpoints differ");
    auto v = speeds(c);
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (!(v[i] > 1e-12)) fail(ErrorCode::DegenerateCurve, "velocity vanishes at sample " + std::to_string(i));
}

SampledCurve make_curve(std::vector<double> params, std::vector<Vec> points, bool closed) {
    SampledCurve c;
    c.ambient_dim = points.empty() ? 3 : static_cast<int>(points[0].size());
    c.params = std::move(params);
    c.points = std::move(points);
    c.closed = closed;
    validate(c);
    return c;
}

SampledCurve sample_curve(const CurveFn& f, double a, double b, std::size_t n, bool closed) {
    std::vector<double> u = linspace(a, b, n);
    std::vector<Vec> p;
    p.reserve(n);
    for (double x : u) p.push_back(f(x));
    if (closed) p.back() = p.front();
    return make_curve(std::move(u), std::move(p), closed);
}

std::vector<Vec> point_derivative(const SampledCurve& c, int order) {
    // differencing about the centroid keeps roundoff independent of where the curve sits
    Vec mid = Vec::Zero(c.points.front().size());
    for (const auto& p : c.points) mid += p;
    mid /= static_cast<double>(c.points.size());
    std::vector<Vec> q(c.points.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = c.points[i] - mid;
    return derivative(c.params, q, order, c.closed);
}

std::vector<double> speeds(const SampledCurve& c) {
    auto d1 = point_derivative(c, 1);
    std::vector<double> v(d1.size());
    for (std::size_t i = 0; i < d1.size(); ++i) v[i] = d1[i].norm();
    return v;
}

std::vector<double> arc_length(const SampledCurve& c) { return cumulative_integral(c.params, speeds(c)); }

SampledCurve resample_by_arclength(const SampledCurve& c, std::size_t n) {
    validate(c);
    if (n < 4) fail(ErrorCode::InvalidArgument, "resample needs n >= 4");
    auto v = speeds(c);
    for (double x : v)
        if (x < 1e-12) fail(ErrorCode::DegenerateCurve, "velocity vanishes");
    const auto s = cumulative_integral(c.params, v);
    const auto target = linspace(0.0, s.back(), n);
    const int dim = c.ambient_dim;
    std::vector<std::vector<double>> coord(dim, std::vector<double>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (int k = 0; k < dim; ++k) coord[k][i] = c.points[i](k);

    SampledCurve out;
    out.ambient_dim = dim;
    out.closed = c.closed;
    out.params = target;
    out.points.resize(n, Vec(dim));
    for (std::size_t j = 0; j < n; ++j) {
        const double u = interp(s, c.params, target[j]);
        for (int k = 0; k < dim; ++k) out.points[j](k) = interp(c.params, coord[k], u);
    }
    out.points.front() = c.points.front();
    out.points.back() = c.closed ? c.points.front() : c.points.back();
    return out;
}

FrenetData frenet_apparatus(const SampledCurve& c) {
    validate(c);
    if (c.ambient_dim != 2 && c.ambient_dim != 3)
        fail(ErrorCode::InvalidArgument, "Frenet apparatus needs a plane or space curve");
    const std::size_t N = c.size();
    auto d1 = point_derivative(c, 1);
    auto d2 = point_derivative(c, 2);
    auto d3 = point_derivative(c, 3);

    double scale = 1.0;
    for (const auto& p : c.points) scale = std::max(scale, p.cwiseAbs().maxCoeff());

    FrenetData fd;
    fd.closed = c.closed;
    fd.points.resize(N);
    fd.t.resize(N);
    fd.n.assign(N, Vec3::Zero());
    fd.b.assign(N, Vec3::Zero());
    fd.kappa.resize(N);
    fd.tau.assign(N, 0.0);
    fd.kappa_defined.assign(N, false);
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i) {
        fd.points[i] = to3(c.points[i]);
        const Vec3 a1 = to3(d1[i]), a2 = to3(d2[i]), a3 = to3(d3[i]);
        const Vec3 cr = a1.cross(a2);
        const double sp = a1.norm(), crn = cr.norm();
        v[i] = sp;
        fd.t[i] = a1 / sp;
        fd.kappa[i] = crn / (sp * sp * sp);
        // roundoff floor of a 7-point second difference
        const double h = (i + 1 < N) ? c.params[i + 1] - c.params[i] : c.params[i] - c.params[i - 1];
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale / (h * h * sp * sp);
        if (fd.kappa[i] < std::max(kKappaTol, floor)) continue;
        fd.kappa_defined[i] = true;
        fd.b[i] = cr / crn;
        fd.n[i] = fd.b[i].cross(fd.t[i]);
        fd.tau[i] = cr.dot(a3) / (crn * crn);
    }
    fd.s = cumulative_integral(c.params, v);
    return fd;
}

namespace {

using State = Eigen::Matrix<double, 12, 1>;

State frenet_rhs(double k, double tau, const State& y) {
    State d;
    const Vec3 t = y.segment<3>(3), n = y.segment<3>(6), b = y.segment<3>(9);
    d.segment<3>(0) = t;
    d.segment<3>(3) = k * n;
    d.segment<3>(6) = -k * t + tau * b;
    d.segment<3>(9) = -tau * n;
    return d;
}

void reorthonormalize(State& y) {
    Vec3 t = y.segment<3>(3), n = y.segment<3>(6), b = y.segment<3>(9);
    t.normalize();
    n -= n.dot(t) * t;
    n.normalize();
    b -= b.dot(t) * t;
    b -= b.dot(n) * n;
    b.normalize();
    y.segment<3>(3) = t;
    y.segment<3>(6) = n;
    y.segment<3>(9) = b;
}

} // namespace

FrenetIntegration integrate_frenet_frames(const ScalarFn& kappa, const ScalarFn& tau, const Vec3& p0,
                                          const Mat3& frame0, double s0, double s1, double step) {
    if (!(step > 0)) fail(ErrorCode::InvalidArgument, "step must be positive");
    if (!(s1 > s0)) fail(ErrorCode::InvalidRange, "empty integration range");
    if ((frame0.transpose() * frame0 - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        fail(ErrorCode::InvalidFrame, "initial frame is not orthonormal");

    const auto steps = static_cast<std::size_t>(std::ceil((s1 - s0) / step - 1e-9));
    const double h = (s1 - s0) / static_cast<double>(steps);
    State y;
    y << p0, frame0.col(0), frame0.col(1), frame0.col(2);

    FrenetIntegration out;
    out.curve.ambient_dim = 3;
    auto record = [&](double s) {
        out.curve.params.push_back(s);
        out.curve.points.push_back(y.segment<3>(0));
        Mat3 F;
        F << y.segment<3>(3), y.segment<3>(6), y.segment<3>(9);
        out.frames.push_back(F);
    };
    record(s0);
    for (std::size_t i = 0; i < steps; ++i) {
        const double s = s0 + h * static_cast<double>(i);
        const double sm = s + 0.5 * h, se = s + h;
        const State k1 = frenet_rhs(kappa(s), tau(s), y);
        const State k2 = frenet_rhs(kappa(sm), tau(sm), y + 0.5 * h * k1);
        const State k3 = frenet_rhs(kappa(sm), tau(sm), y + 0.5 * h * k2);
        const State k4 = frenet_rhs(kappa(se), tau(se), y + h * k3);
        y += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        reorthonormalize(y);
        record(i + 1 == steps ? s1 : se);
    }
    return out;
}

SampledCurve integrate_frenet(const ScalarFn& kappa, const ScalarFn& tau, const Vec3& p0, const Mat3& frame0,
                              double s0, double s1, double step) {
    return integrate_frenet_frames(kappa, tau, p0, frame0, s0, s1, step).curve;
}

Vec hydrogen_curve_point(double c0, double s) {
    const double w = std::sqrt(s), phi = 2.0 * c0 * w;
    Vec p(2);
    p << w * std::sin(phi) / c0 + std::cos(phi) / (2 * c0 * c0), -w * std::cos(phi) / c0 + std::sin(phi) / (2 * c0 * c0);
    return p;
}

SampledCurve powerlaw_plane_curve(double c0, double p, double s0, double s1, std::size_t n) {
    if (!(s0 > 0) || !(s1 > s0)) fail(ErrorCode::InvalidRange, "power-law range must lie in (0, inf)");
    if (!(c0 > 0)) fail(ErrorCode::InvalidArgument, "c0 must be positive");
    if (n < 4) fail(ErrorCode::InvalidArgument, "need at least 4 samples");
    SampledCurve out;
    out.ambient_dim = 2;
    if (p == 0.5) {
        // rigidly moved so that alpha(s0) = 0 with tangent e1, as in the integrated branch
        const Vec a0 = hydrogen_curve_point(c0, s0);
        const double phi0 = 2.0 * c0 * std::sqrt(s0);
        Eigen::Matrix2d R;
        R << std::cos(phi0), std::sin(phi0), -std::sin(phi0), std::cos(phi0);
        out.params = linspace(s0, s1, n);
        for (double s : out.params) out.points.push_back(R * (hydrogen_curve_point(c0, s) - a0));
        return out;
    }
    auto k = [c0, p](double s) { return c0 * std::pow(s, -p); };
    auto t = [](double) { return 0.0; };
    auto c3 = integrate_frenet(k, t, Vec3::Zero(), Mat3::Identity(), s0, s1, (s1 - s0) / static_cast<double>(n - 1));
    out.params = c3.params;
    for (const auto& q : c3.points) out.points.push_back(q.head<2>());
    return out;
}

std::vector<OsculatingSphere> osculating_spheres(const FrenetData& fd) {
    const std::size_t N = fd.s.size();
    std::vector<double> kd = derivative(fd.s, fd.kappa, 1, fd.closed);
    std::vector<OsculatingSphere> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        if (!fd.kappa_defined[i]) continue;
        const double rho = 1.0 / fd.kappa[i];
        const double drho = -kd[i] / (fd.kappa[i] * fd.kappa[i]);
        auto& o = out[i];
        if (std::abs(fd.tau[i]) <= 1e-7 * std::max(1.0, fd.kappa[i])) {
            o.finite = false;
            o.radius = std::numeric_limits<double>::infinity();
            continue;
        }
        const double sig = drho / fd.tau[i];
        o.finite = true;
        o.center = fd.points[i] + rho * fd.n[i] + sig * fd.b[i];
        o.radius = std::sqrt(rho * rho + sig * sig);
    }
    return out;
}

OsculatingSphere osculating_sphere(const SampledCurve& c, double s0) {
    const FrenetData fd = frenet_apparatus(c);
    auto it = std::lower_bound(fd.s.begin(), fd.s.end(), s0);
    std::size_t i = std::min<std::size_t>(it - fd.s.begin(), fd.s.size() - 1);
    if (i > 0 && std::abs(fd.s[i - 1] - s0) < std::abs(fd.s[i] - s0)) --i;
    if (!fd.kappa_defined[i]) fail(ErrorCode::UndefinedFrame, "inflection at s = " + std::to_string(fd.s[i]));
    return osculating_spheres(fd)[i];
}

std::vector<double> spherical_curvature_J(const SampledCurve& c, const Vec3& center) {
    validate(c);
    const std::size_t N = c.size();
    std::vector<double> r(N);
    for (std::size_t i = 0; i < N; ++i) r[i] = (to3(c.points[i]) - center).norm();
    const double rbar = mean(r);
    for (std::size_t i = 0; i < N; ++i)
        if (std::abs(r[i] - rbar) > 1e-6 * std::max(1.0, rbar))
            fail(ErrorCode::NotSpherical, "distance to center varies at sample " + std::to_string(i));
    auto d1 = point_derivative(c, 1);
    auto d2 = point_derivative(c, 2);
    std::vector<double> J(N);
    for (std::size_t i = 0; i < N; ++i) {
        const Vec3 a1 = to3(d1[i]), a2 = to3(d2[i]);
        const double sp = a1.norm();
        J[i] = (to3(c.points[i]) - center).dot(a1.cross(a2)) / (sp * sp * sp);
    }
    return J;
}

} // namespace cg
