#include "curvegeom/gip_surfaces.hpp"
#include "curvegeom/errors.hpp"
#include "curvegeom/level_surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cg {

namespace {

constexpr double kPi = std::numbers::pi;

void fill_curvatures(const Grid& g11, const Grid& g12, const Grid& g22, const Grid& h11, const Grid& h12,
                     const Grid& h22, Grid& K, Grid& H) {
    const Grid det = g11.cwiseProduct(g22) - g12.cwiseProduct(g12);
    K = (h11.cwiseProduct(h22) - h12.cwiseProduct(h12)).cwiseQuotient(det);
    H = (g11.cwiseProduct(h22) - 2.0 * g12.cwiseProduct(h12) + g22.cwiseProduct(h11)).cwiseQuotient(2.0 * det);
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

} // namespace

TubeGeometry tube_geometry(const SampledCurve& c, double r, FrameKind kind, std::size_t n_phi) {
    validate(c);
    if (c.ambient_dim != 3) fail(ErrorCode::InvalidCurve, "tube centerline must be a space curve");
    if (!(r > 0)) fail(ErrorCode::InvalidArgument, "tube radius must be positive");
    if (n_phi < 8) fail(ErrorCode::InvalidArgument, "need at least 8 angular samples");
    const FrenetData fd = frenet_apparatus(c);
    const std::size_t N = fd.s.size();

    TubeGeometry tube;
    tube.frame_kind = kind;
    tube.r = r;
    tube.s = fd.s;
    tube.kappa = fd.kappa;
    tube.tau = fd.tau;
    for (std::size_t i = 0; i < N; ++i)
        if (!fd.kappa_defined[i]) tube.tau[i] = 0;
    tube.theta = cumulative_integral(tube.s, tube.tau);
    tube.points = fd.points;
    tube.phi.resize(n_phi);
    for (std::size_t j = 0; j < n_phi; ++j) tube.phi[j] = 2 * kPi * static_cast<double>(j) / static_cast<double>(n_phi);

    tube.e1.resize(N);
    tube.e2.resize(N);
    if (kind == FrameKind::Frenet) {
        // straight stretches have no Frenet normal; carry the last one along
        Vec3 last = fd.kappa_defined[0] ? fd.n[0] : to3(generic_normal(Vec(fd.t[0])));
        for (std::size_t i = 0; i < N; ++i) {
            if (fd.kappa_defined[i]) last = fd.n[i];
            Vec3 n = last - last.dot(fd.t[i]) * fd.t[i];
            n.normalize();
            last = n;
            tube.e1[i] = n;
            tube.e2[i] = fd.t[i].cross(n);
        }
    } else {
        const Vec seed = fd.kappa_defined[0] ? Vec(fd.n[0]) : generic_normal(Vec(fd.t[0]));
        const RMFrameData rm = rm_double_reflection(c, seed);
        tube.kappa1 = rm.kappas[0];
        tube.kappa2 = rm.kappas[1];
        for (std::size_t i = 0; i < N; ++i) {
            tube.e1[i] = to3(rm.normals[0][i]);
            tube.e2[i] = to3(rm.normals[1][i]);
        }
    }

    const Eigen::Index ns = static_cast<Eigen::Index>(N), np = static_cast<Eigen::Index>(n_phi);
    tube.f.resize(ns, np);
    tube.g11.resize(ns, np);
    tube.g12.resize(ns, np);
    tube.g22 = Grid::Constant(ns, np, r * r);
    tube.h11.resize(ns, np);
    tube.h12.resize(ns, np);
    tube.h22 = Grid::Constant(ns, np, r);
    for (Eigen::Index i = 0; i < ns; ++i) {
        for (Eigen::Index j = 0; j < np; ++j) {
            const double ph = tube.phi[j];
            if (kind == FrameKind::Frenet) {
                const double k = tube.kappa[i], t = tube.tau[i];
                const double f = 1 - r * k * std::cos(ph);
                tube.f(i, j) = f;
                tube.g11(i, j) = f * f + t * t * r * r;
                tube.g12(i, j) = t * r * r;
                tube.h11(i, j) = -(f * k * std::cos(ph) - t * t * r);
                tube.h12(i, j) = t * r;
            } else {
                const double k = tube.kappa1[i] * std::cos(ph) + tube.kappa2[i] * std::sin(ph);
                const double f = 1 - r * k;
                tube.f(i, j) = f;
                tube.g11(i, j) = f * f;
                tube.g12(i, j) = 0;
                tube.h11(i, j) = -f * k;
                tube.h12(i, j) = 0;
            }
        }
    }
    if (tube.f.minCoeff() <= 0) fail(ErrorCode::TubeTooFat, "r exceeds the radius of curvature somewhere");
    fill_curvatures(tube.g11, tube.g12, tube.g22, tube.h11, tube.h12, tube.h22, tube.K, tube.H);
    tube.Vgip = -(tube.H.cwiseProduct(tube.H) - tube.K);
    return tube;
}

Vec3 tube_point(const TubeGeometry& tube, std::size_t i, double phi) {
    return tube.points[i] + tube.r * (std::cos(phi) * tube.e1[i] + std::sin(phi) * tube.e2[i]);
}

const char* critical_class_name(CriticalClass c) {
    switch (c) {
    case CriticalClass::Min: return "Min";
    case CriticalClass::Max: return "Max";
    case CriticalClass::Saddle: return "Saddle";
    case CriticalClass::Degenerate: return "Degenerate";
    }
    return "?";
}

std::vector<CriticalPoint> vgip_critical_points(const TubeGeometry& tube) {
    const auto& s = tube.s;
    const auto& k = tube.kappa;
    const std::size_t N = s.size();
    const double kmax = *std::max_element(k.begin(), k.end());
    if (*std::min_element(k.begin(), k.end()) <= kKappaTol * std::max(1.0, kmax))
        fail(ErrorCode::SingularCenterline, "curvature vanishes on the centerline");
    const bool closed = (tube.points.front() - tube.points.back()).norm() <= 1e-9 * std::max(1.0, s.back());
    const auto dk = derivative(s, k, 1, closed);
    const auto ddk = derivative(s, k, 2, closed);
    const double d1max = max_abs(dk), d2max = max_abs(ddk);
    const std::size_t last = closed ? N - 1 : N;

    std::vector<CriticalPoint> out;
    if (d1max < 1e-8 * std::max(1.0, kmax)) {
        for (std::size_t i = 0; i < last; ++i) {
            out.push_back({s[i], 0.0, CriticalClass::Degenerate});
            out.push_back({s[i], kPi, CriticalClass::Degenerate});
        }
        return out;
    }

    std::vector<double> roots;
    const double h = (s.back() - s.front()) / static_cast<double>(N - 1);
    auto add_root = [&](double x) {
        for (double r : roots)
            if (std::abs(r - x) < 2 * h) return;
        roots.push_back(x);
    };
    for (std::size_t i = 0; i + 1 < N; ++i) {
        if (dk[i] == 0) {
            add_root(s[i]);
        } else if (dk[i] * dk[i + 1] < 0) {
            add_root(s[i] + (s[i + 1] - s[i]) * dk[i] / (dk[i] - dk[i + 1]));
        }
    }
    // zeros of kappa' that touch without a sign change
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double a = std::abs(dk[i]);
        if (a < 1e-6 * d1max && a <= std::abs(dk[i - 1]) && a <= std::abs(dk[i + 1])) add_root(s[i]);
    }
    std::sort(roots.begin(), roots.end());
    for (double sc : roots) {
        if (closed && sc > s.back() - 0.5 * h) continue;
        const double k2 = interp(s, ddk, sc);
        if (std::abs(k2) <= 1e-4 * std::max(1.0, d2max)) {
            out.push_back({sc, 0.0, CriticalClass::Degenerate});
            out.push_back({sc, kPi, CriticalClass::Degenerate});
        } else if (k2 > 0) {
            // Hess V ~ (-1)^m diag(-kappa'', kappa) at phi = m pi
            out.push_back({sc, 0.0, CriticalClass::Saddle});
            out.push_back({sc, kPi, CriticalClass::Saddle});
        } else {
            out.push_back({sc, 0.0, CriticalClass::Min});
            out.push_back({sc, kPi, CriticalClass::Max});
        }
    }
    return out;
}

SurfaceCurvatures surface_curvatures_grid(const std::vector<double>& u, const std::vector<double>& v,
                                          const std::vector<std::vector<Vec3>>& X, bool periodic_v,
                                          bool flip_normal) {
    const std::size_t nu = u.size(), nv = v.size();
    if (nu < 7 || nv < 7 || X.size() != nu) fail(ErrorCode::InvalidArgument, "surface grid is too small");
    std::vector<std::vector<Vec3>> Xu(nu, std::vector<Vec3>(nv)), Xuu = Xu, Xv = Xu, Xvv = Xu, Xuv = Xu;
    for (std::size_t j = 0; j < nv; ++j) {
        std::vector<Vec3> col(nu);
        for (std::size_t i = 0; i < nu; ++i) col[i] = X[i][j];
        const auto d1 = derivative(u, col, 1);
        const auto d2 = derivative(u, col, 2);
        for (std::size_t i = 0; i < nu; ++i) {
            Xu[i][j] = d1[i];
            Xuu[i][j] = d2[i];
        }
    }
    for (std::size_t i = 0; i < nu; ++i) {
        Xv[i] = derivative(v, X[i], 1, periodic_v);
        Xvv[i] = derivative(v, X[i], 2, periodic_v);
        Xuv[i] = derivative(v, Xu[i], 1, periodic_v);
    }
    SurfaceCurvatures sc;
    const Eigen::Index a = static_cast<Eigen::Index>(nu), b = static_cast<Eigen::Index>(nv);
    for (Grid* g : {&sc.g11, &sc.g12, &sc.g22, &sc.h11, &sc.h12, &sc.h22}) g->resize(a, b);
    for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            Vec3 N = Xu[i][j].cross(Xv[i][j]).normalized();
            if (flip_normal) N = -N;
            const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j);
            sc.g11(I, J) = Xu[i][j].dot(Xu[i][j]);
            sc.g12(I, J) = Xu[i][j].dot(Xv[i][j]);
            sc.g22(I, J) = Xv[i][j].dot(Xv[i][j]);
            sc.h11(I, J) = Xuu[i][j].dot(N);
            sc.h12(I, J) = Xuv[i][j].dot(N);
            sc.h22(I, J) = Xvv[i][j].dot(N);
        }
    }
    fill_curvatures(sc.g11, sc.g12, sc.g22, sc.h11, sc.h12, sc.h22, sc.K, sc.H);
    return sc;
}

const char* surface_kind_name(SurfaceKind k) {
    switch (k) {
    case SurfaceKind::Cylindrical: return "cylindrical";
    case SurfaceKind::Revolution: return "revolution";
    case SurfaceKind::Helicoidal: return "helicoidal";
    }
    return "?";
}

Vec3 InvariantSurface::point(std::size_t i, double v) const {
    switch (kind) {
    case SurfaceKind::Cylindrical: return to3(section.points[i]) + v * direction;
    case SurfaceKind::Revolution: return Vec3(rho[i] * std::cos(v), rho[i] * std::sin(v), lambda[i]);
    case SurfaceKind::Helicoidal: {
        const double ph = v / a + Phi[i];
        return Vec3(rho[i] * std::cos(omega * ph), rho[i] * std::sin(omega * ph), lambda[i] + ph);
    }
    }
    return Vec3::Zero();
}

SurfaceCurvatures invariant_surface_curvatures(const InvariantSurface& s, const std::vector<double>& v,
                                               bool flip_normal) {
    std::vector<double> u(s.u.size());
    // the sample parameter is enough: curvatures are coordinate invariant
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = s.kind == SurfaceKind::Revolution ? s.rho[i] : s.u[i];
    if (s.kind == SurfaceKind::Cylindrical) u = s.section_s;
    std::vector<std::vector<Vec3>> X(u.size(), std::vector<Vec3>(v.size()));
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) X[i][j] = s.point(i, v[j]);
    return surface_curvatures_grid(u, v, X, false, flip_normal);
}

InvariantSurface cylindrical_from_mean_curvature(const ScalarFn& H, const Vec3& a0, double length, std::size_t n) {
    if (a0.norm() == 0) fail(ErrorCode::DegenerateDirection, "zero translation direction");
    const Vec3 a = a0.normalized();
    if (std::abs(a(2)) < 1e-12) fail(ErrorCode::DegenerateDirection, "translation direction lies in the section plane");
    if (!(length > 0) || n < 8) fail(ErrorCode::InvalidArgument, "bad section length or sample count");
    // psi is the tangent angle; H = a3 kappa / (2 sin^3 theta), cos theta = <alpha', a>
    auto rhs = [&](double s, double psi) {
        const double c = a(0) * std::cos(psi) + a(1) * std::sin(psi);
        const double sn = std::sqrt(std::max(0.0, 1 - c * c));
        return 2 * sn * sn * sn * H(s) / a(2);
    };
    const auto s = linspace(0, length, n);
    std::vector<double> psi(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = s[i + 1] - s[i], y = psi[i];
        const double k1 = rhs(s[i], y), k2 = rhs(s[i] + h / 2, y + h / 2 * k1);
        const double k3 = rhs(s[i] + h / 2, y + h / 2 * k2), k4 = rhs(s[i + 1], y + h * k3);
        psi[i + 1] = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    std::vector<double> cx(n), cy(n), sin_theta(n);
    for (std::size_t i = 0; i < n; ++i) {
        cx[i] = std::cos(psi[i]);
        cy[i] = std::sin(psi[i]);
        const double c = a(0) * cx[i] + a(1) * cy[i];
        sin_theta[i] = std::sqrt(std::max(0.0, 1 - c * c));
    }
    const auto x = cumulative_integral(s, cx), y = cumulative_integral(s, cy);
    InvariantSurface out;
    out.kind = SurfaceKind::Cylindrical;
    out.direction = a;
    std::vector<Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = Vec3(x[i], y[i], 0);
    out.section = make_curve(s, pts, false);
    out.section_s = s;
    // natural coordinate: arc length of the section orthogonal to a
    out.u = cumulative_integral(s, sin_theta);
    out.f.assign(n, 1.0);
    out.K.assign(n, 0.0);
    out.H.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.H[i] = H(s[i]);
    return out;
}

InvariantSurface revolution_from_U(const ScalarFn& U, double a1, double a2, double rho0, double rho1, std::size_t n,
                                   int sign) {
    if (!(rho0 > 0) || !(rho1 > rho0)) fail(ErrorCode::InvalidRange, "need 0 < rho0 < rho1");
    if (n < 8) fail(ErrorCode::InvalidArgument, "too few samples");
    const double sg = sign < 0 ? -1.0 : 1.0;
    InvariantSurface out;
    out.kind = SurfaceKind::Revolution;
    out.rho = linspace(rho0, rho1, n);
    const auto& rho = out.rho;
    std::vector<double> w(n), dl(n), ds(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = U(rho[i]) / rho[i];
    const auto I = cumulative_integral(rho, w);
    out.A.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.A[i] = a1 + 2 * I[i];
        const double D = 1 - rho[i] * rho[i] * out.A[i] * out.A[i];
        if (D <= 0) fail(ErrorCode::DomainViolation, "1 - rho^2 A^2 <= 0 at rho = " + num(rho[i]));
        dl[i] = sg * rho[i] * out.A[i] / std::sqrt(D);
        ds[i] = std::sqrt(1 + dl[i] * dl[i]);
    }
    out.lambda = cumulative_integral(rho, dl);
    for (double& l : out.lambda) l += a2;
    out.u = cumulative_integral(rho, ds);
    out.f = rho;
    const auto ddl = derivative(rho, dl, 1);
    out.H.resize(n);
    out.K.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k1 = ddl[i] / (ds[i] * ds[i] * ds[i]);  // profile curvature
        const double k2 = dl[i] / (rho[i] * ds[i]);           // parallel circles
        out.H[i] = 0.5 * (k1 + k2);
        out.K[i] = k1 * k2;
    }
    return out;
}

double kenmotsu_residual(const std::vector<double>& s, const std::vector<double>& x, const std::vector<double>& z,
                         const std::vector<double>& U) {
    const std::size_t n = s.size();
    if (x.size() != n || z.size() != n || U.size() != n || n < 8)
        fail(ErrorCode::InvalidArgument, "profile arrays must have matching sizes");
    const auto dx = derivative(s, x, 1), dz = derivative(s, z, 1);
    std::vector<double> zr(n), zi(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0)) fail(ErrorCode::InvalidArgument, "profile must satisfy x > 0");
        zr[i] = dx[i] / x[i];
        zi[i] = dz[i] / x[i];
    }
    const auto dzr = derivative(s, zr, 1), dzi = derivative(s, zi, 1);
    std::vector<double> res(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Z' - 2 i U Z + |Z|^2
        const double re = dzr[i] + 2 * U[i] * zi[i] + zr[i] * zr[i] + zi[i] * zi[i];
        const double im = dzi[i] - 2 * U[i] * zr[i];
        res[i] = std::hypot(re, im);
    }
    return rms(res);
}

InvariantSurface bour_surface(const ScalarFn& Ufn, double omega, double a, double xi0, double xi1, std::size_t n,
                              int sign) {
    if (!(omega > 0) || !(a > 0)) fail(ErrorCode::InvalidArgument, "omega and a must be positive");
    if (!(xi1 > xi0) || n < 8) fail(ErrorCode::InvalidRange, "bad xi range or sample count");
    const double sg = sign < 0 ? -1.0 : 1.0;
    InvariantSurface out;
    out.kind = SurfaceKind::Helicoidal;
    out.omega = omega;
    out.a = a;
    out.u = linspace(xi0, xi1, n);
    const auto& xi = out.u;
    out.U.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.U[i] = Ufn(xi[i]);
        if (!(out.U[i] > 0)) fail(ErrorCode::BourDomainViolation, "U must be positive, fails at xi = " + num(xi[i]));
    }
    out.Ud = derivative(xi, out.U, 1);
    out.Udd = derivative(xi, out.U, 2);
    out.f = out.U;
    out.rho.resize(n);
    out.dlambda.resize(n);
    out.dPhi.resize(n);
    out.H.resize(n);
    out.K.resize(n);
    const double w2 = omega * omega, a2 = a * a;
    for (std::size_t i = 0; i < n; ++i) {
        const double U = out.U[i], Ud = out.Ud[i], Udd = out.Udd[i];
        const double D = a2 * U * U - 1;
        if (D <= 0) fail(ErrorCode::BourDomainViolation, "a^2 U^2 - 1 <= 0 at xi = " + num(xi[i]));
        double Q = a2 * U * U * (w2 - a2 * Ud * Ud) - w2;
        if (Q < -1e-10 * std::max(1.0, w2 * a2 * U * U))
            fail(ErrorCode::BourDomainViolation, "a^2 U^2 (w^2 - a^2 U'^2) - w^2 < 0 at xi = " + num(xi[i]));
        Q = std::max(Q, 0.0);
        const double sq = std::sqrt(Q);
        out.rho[i] = std::sqrt(D) / omega;
        out.dlambda[i] = sg * a * U * sq / (omega * D);
        out.dPhi[i] = -sg * sq / (omega * a * U * D);
        out.K[i] = -Udd / U;
        const double numr = a2 * U * Udd + a2 * Ud * Ud - w2;
        // Q comes from differenced U; below this it is noise and H is 0/0
        if (Q <= 1e-9 * std::max(1.0, w2 * a2 * U * U)) {
            if (std::abs(numr) > 1e-6 * std::max(1.0, w2))
                fail(ErrorCode::BourDomainViolation, "mean curvature is unbounded at xi = " + num(xi[i]));
            out.H[i] = 0;
        } else {
            out.H[i] = sg * numr / (2 * sq);
        }
    }
    out.lambda = cumulative_integral(xi, out.dlambda);
    out.Phi = cumulative_integral(xi, out.dPhi);
    return out;
}

HelicoidalMetric helicoidal_metric(const InvariantSurface& s) {
    if (s.kind != SurfaceKind::Helicoidal) fail(ErrorCode::InvalidArgument, "not a helicoidal surface");
    const std::size_t n = s.u.size();
    HelicoidalMetric m;
    m.g11.resize(n);
    m.g12.resize(n);
    m.g22.resize(n);
    const double w = s.omega, a = s.a;
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = s.rho[i];
        const double drho = a * a * s.U[i] * s.Ud[i] / (w * w * rho);
        const double lp = s.dlambda[i], pp = s.dPhi[i];
        // X_xi = (rho', w rho Phi', lambda' + Phi') in the rotating frame, X_chi = (0, w rho, 1) / a
        m.g11[i] = drho * drho + w * w * rho * rho * pp * pp + (lp + pp) * (lp + pp);
        m.g12[i] = (w * w * rho * rho * pp + lp + pp) / a;
        m.g22[i] = (w * w * rho * rho + 1) / (a * a);
    }
    return m;
}

MinimalHelicoidalSurface minimal_helicoidal_family(double omega, double omega0, double omega1, double xi0, double xi1,
                                                   std::size_t n) {
    MinimalHelicoidal fam{omega, omega0, omega1};
    if (fam.b() < 1) fail(ErrorCode::InvalidFamily, "b = omega0 - omega1^2 must be >= 1");
    MinimalHelicoidalSurface out;
    out.family = fam;
    out.surface = bour_surface([fam](double xi) { return std::sqrt(fam.U2(xi)); }, omega, 1.0, xi0, xi1, n);
    return out;
}

} // namespace cg
