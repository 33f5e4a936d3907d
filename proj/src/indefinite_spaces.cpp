#include "curvegeom/indefinite_spaces.hpp"
#include "curvegeom/errors.hpp"

#include <cmath>
#include <limits>

namespace cg {

const char* causal_name(Causal c) {
    switch (c) {
    case Causal::Spacelike: return "spacelike";
    case Causal::Timelike: return "timelike";
    case Causal::Lightlike: return "lightlike";
    }
    return "?";
}

Vec3 lorentz_cross(const Vec3& u, const Vec3& v) {
    return Vec3(u(1) * v(2) - u(2) * v(1), u(2) * v(0) - u(0) * v(2), -(u(0) * v(1) - u(1) * v(0)));
}

Causal causal_character(const Vec3& v, double tol) {
    const double q = ldot(v, v);
    if (std::abs(q) <= tol * v.squaredNorm()) return Causal::Lightlike;
    return q > 0 ? Causal::Spacelike : Causal::Timelike;
}

namespace {

std::vector<Vec3> to3v(const std::vector<Vec>& v) {
    std::vector<Vec3> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to3(v[i]);
    return out;
}

std::vector<Vec> toV(const std::vector<Vec3>& v) { return {v.begin(), v.end()}; }

void require_space_curve(const SampledCurve& c) {
    validate(c);
    if (c.ambient_dim != 3) fail(ErrorCode::InvalidCurve, "expected a curve in 3-space");
}

} // namespace

std::pair<SampledCurve, Causal> reparametrize_causal(const SampledCurve& c) {
    require_space_curve(c);
    const auto d1 = to3v(point_derivative(c, 1));
    const std::size_t N = c.size();
    const Causal ch = causal_character(d1[0]);
    for (std::size_t i = 1; i < N; ++i)
        if (causal_character(d1[i]) != ch)
            fail(ErrorCode::MixedCausalCharacter, "causal character changes at sample " + std::to_string(i));

    std::vector<double> rate(N);
    if (ch == Causal::Lightlike) {
        const auto d2 = to3v(point_derivative(c, 2));
        for (std::size_t i = 0; i < N; ++i) {
            const double q = ldot(d2[i], d2[i]);
            const double v2 = d1[i].squaredNorm();
            if (std::abs(q) <= 1e-8 * d2[i].squaredNorm() + 1e-12 * v2 * v2)
                fail(ErrorCode::DegenerateLightlike,
                     "acceleration is lightlike at sample " + std::to_string(i) + " (straight line, kappa1 = 0)");
            rate[i] = std::pow(std::abs(q), 0.25);
        }
    } else {
        for (std::size_t i = 0; i < N; ++i) rate[i] = std::sqrt(std::abs(ldot(d1[i], d1[i])));
    }
    SampledCurve out = c;
    out.params = cumulative_integral(c.params, rate);
    return {out, ch};
}

LorentzRMData lorentz_rm_frame(const SampledCurve& c) {
    auto [rc, ch] = reparametrize_causal(c);
    if (ch == Causal::Lightlike) fail(ErrorCode::LightlikeUnsupported, "lightlike curve; use the null frame");
    const std::size_t N = rc.size();
    LorentzRMData rm;
    rm.character = ch;
    rm.eps = ch == Causal::Spacelike ? 1 : -1;
    rm.eps1 = -rm.eps;
    rm.s = rc.params;
    rm.points = to3v(rc.points);
    const auto d1 = to3v(point_derivative(rc, 1));
    rm.t.resize(N);
    for (std::size_t i = 0; i < N; ++i) rm.t[i] = d1[i] / std::sqrt(std::abs(ldot(d1[i], d1[i])));
    const auto tp = derivative(rm.s, rm.t, 1, rc.closed);

    const Vec3& t0 = rm.t[0];
    Vec3 n1;
    if (rm.eps == 1) {
        n1 = Vec3::UnitZ() - ldot(Vec3::UnitZ(), t0) * t0;
    } else {
        Vec3 a = Vec3::UnitX() + ldot(Vec3::UnitX(), t0) * t0;
        Vec3 b = Vec3::UnitY() + ldot(Vec3::UnitY(), t0) * t0;
        n1 = ldot(a, a) > ldot(b, b) ? a : b;
    }
    n1 /= std::sqrt(std::abs(ldot(n1, n1)));
    const Vec3 n2 = lorentz_cross(t0, n1);
    const Vec g = kLorentzSig;
    auto ns = transport_normals(rm.s, toV(rm.t), toV(tp), g, {Vec(n1), Vec(n2)});

    rm.n1.resize(N);
    rm.n2.resize(N);
    rm.kappa1.resize(N);
    rm.kappa2.resize(N);
    rm.kappa.resize(N);
    rm.eta.resize(N);
    rm.theta.assign(N, std::numeric_limits<double>::quiet_NaN());
    bool seen_pos = false, seen_neg = false;
    for (std::size_t i = 0; i < N; ++i) {
        rm.n1[i] = to3(ns[0][i]);
        rm.n2[i] = to3(ns[1][i]);
        rm.kappa1[i] = ldot(tp[i], rm.n1[i]);
        rm.kappa2[i] = ldot(tp[i], rm.n2[i]);
        const double q = ldot(tp[i], tp[i]);
        rm.kappa[i] = std::sqrt(std::abs(q));
        rm.eta[i] = std::abs(q) <= 1e-8 * tp[i].squaredNorm() ? 0 : (q > 0 ? 1 : -1);
        seen_pos |= rm.eta[i] > 0;
        seen_neg |= rm.eta[i] < 0;
    }
    if (seen_pos && seen_neg)
        fail(ErrorCode::MixedNormalCharacter, "the normal t' changes causal character along the curve");

    // angle from the RM frame to the normalized t'
    for (std::size_t i = 0; i < N; ++i) {
        if (rm.eta[i] == 0 || rm.kappa[i] == 0) continue;
        double th;
        if (rm.eps == -1)
            th = std::atan2(rm.kappa2[i], rm.kappa1[i]);
        else if (rm.eta[i] > 0)
            th = std::asinh(-rm.kappa1[i] / rm.kappa[i]);
        else
            th = std::asinh(rm.kappa2[i] / rm.kappa[i]);
        if (std::abs(th) > 50) fail(ErrorCode::HyperbolicOverflow, "hyperbolic angle exceeds 50");
        rm.theta[i] = th;
    }
    if (rm.eps == -1)
        for (std::size_t i = 1; i < N; ++i)
            if (std::isfinite(rm.theta[i]) && std::isfinite(rm.theta[i - 1]))
                rm.theta[i] = rm.theta[i - 1] + wrap_angle(rm.theta[i] - rm.theta[i - 1]);
    return rm;
}

NullFrameData null_frame(const SampledCurve& c) {
    auto [rc, ch] = reparametrize_causal(c);
    if (ch != Causal::Lightlike) fail(ErrorCode::InvalidArgument, "null frame needs a lightlike curve");
    const std::size_t N = rc.size();
    NullFrameData nf;
    nf.s = rc.params;
    nf.t = to3v(point_derivative(rc, 1));
    nf.z1.resize(N);
    nf.z2.resize(N);
    const Vec3 x = Vec3::UnitZ();
    for (std::size_t i = 0; i < N; ++i) {
        const Vec3& t = nf.t[i];
        const Vec3 z = lorentz_cross(t, x);
        nf.z1[i] = z / std::sqrt(std::abs(ldot(z, z)));
        const double xt = ldot(x, t);
        const double cc = ldot(x, x) / (2 * xt);
        nf.z2[i] = (x - cc * t) / xt;
    }
    const auto tp = derivative(nf.s, nf.t, 1, rc.closed);
    const auto z1p = derivative(nf.s, nf.z1, 1, rc.closed);
    const auto z2p = derivative(nf.s, nf.z2, 1, rc.closed);
    nf.kappa1.resize(N);
    nf.kappa2.resize(N);
    nf.kappa3.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        nf.kappa1[i] = ldot(tp[i], nf.z1[i]);
        nf.kappa2[i] = ldot(z1p[i], nf.z2[i]);
        nf.kappa3[i] = ldot(z2p[i], nf.t[i]);
    }
    return nf;
}

const char* lorentz_sphere_name(LorentzSphereKind k) {
    switch (k) {
    case LorentzSphereKind::PseudoSphere: return "PseudoSphere";
    case LorentzSphereKind::PseudoHyperbolic: return "PseudoHyperbolic";
    case LorentzSphereKind::LightCone: return "LightCone";
    case LorentzSphereKind::None: return "None";
    }
    return "?";
}

LorentzSphere lorentz_sphere_membership(const LorentzRMData& rm) {
    const std::size_t N = rm.s.size();
    std::vector<Vec> samples(N);
    for (std::size_t i = 0; i < N; ++i) samples[i] = Vec2(rm.kappa1[i], rm.kappa2[i]);
    NormalDevelopment nd;
    try {
        nd = classify_development(samples);
    } catch (const GeometryError& e) {
        fail(ErrorCode::NoLineFit, e.what());
    }
    LorentzSphere out;
    out.fit_residual = nd.fit_residual;
    if (nd.fit_kind == FitKind::NotALine) fail(ErrorCode::NoLineFit, "the (kappa1, kappa2) samples are not on a line");
    if (nd.fit_kind == FitKind::LineThroughOrigin) return out;

    out.a1 = rm.eps * nd.coeffs(0);
    out.a2 = rm.eps * nd.coeffs(1);
    std::vector<Vec> P(N);
    for (std::size_t i = 0; i < N; ++i) P[i] = rm.points[i] - out.a1 * rm.n1[i] - out.a2 * rm.n2[i];
    out.center_drift = drift(P);
    Vec3 c = Vec3::Zero();
    for (const auto& p : P) c += to3(p);
    out.center = c / static_cast<double>(N);
    if (out.center_drift > 1e-3) return out;

    const double R2 = rm.eps1 * out.a1 * out.a1 + out.a2 * out.a2;
    const double scale = out.a1 * out.a1 + out.a2 * out.a2;
    if (std::abs(R2) <= 1e-3 * scale) {
        out.kind = LorentzSphereKind::LightCone;
    } else if (R2 > 0) {
        out.kind = LorentzSphereKind::PseudoSphere;
        out.radius = std::sqrt(R2);
    } else {
        out.kind = LorentzSphereKind::PseudoHyperbolic;
        out.radius = std::sqrt(-R2);
    }
    return out;
}

IsoFrameData iso_apparatus(const SampledCurve& c, double theta0) {
    require_space_curve(c);
    const std::size_t N = c.size();
    const auto d1 = to3v(point_derivative(c, 1));
    const auto d2 = to3v(point_derivative(c, 2));
    const auto d3 = to3v(point_derivative(c, 3));
    double scale = 1.0;
    for (const auto& p : c.points) scale = std::max(scale, p.cwiseAbs().maxCoeff());

    IsoFrameData iso;
    iso.points = to3v(c.points);
    iso.t.resize(N);
    iso.n.resize(N);
    iso.b.assign(N, Vec3::UnitZ());
    iso.kappa.resize(N);
    iso.tau.resize(N);
    std::vector<double> sp(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double x1 = d1[i](0), y1 = d1[i](1), x2 = d2[i](0), y2 = d2[i](1);
        sp[i] = std::hypot(x1, y1);
        if (sp[i] < 1e-12) fail(ErrorCode::NotAdmissible, "isotropic velocity at sample " + std::to_string(i));
        const double det2 = x1 * y2 - x2 * y1;
        const double sp3 = sp[i] * sp[i] * sp[i];
        iso.kappa[i] = det2 / sp3;
        const double h = (i + 1 < N) ? c.params[i + 1] - c.params[i] : c.params[i] - c.params[i - 1];
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale / (h * h * sp[i] * sp[i]);
        if (std::abs(iso.kappa[i]) < std::max(kKappaTol, floor))
            fail(ErrorCode::NotAdmissible, "top view has an inflection at sample " + std::to_string(i));
        const double det3 = d1[i].dot(d2[i].cross(d3[i]));
        // parameter-invariant form, consistent with n' = -kappa t + tau b
        iso.tau[i] = det3 / (det2 * det2);
        iso.t[i] = d1[i] / sp[i];
        const double spu = (x1 * x2 + y1 * y2) / sp[i];
        const Vec3 ass = (d2[i] - spu * iso.t[i]) / (sp[i] * sp[i]);
        iso.n[i] = ass / iso.kappa[i];
    }
    iso.s = cumulative_integral(c.params, sp);
    iso.rm_theta = cumulative_integral(iso.s, iso.tau);
    iso.kappa1.resize(N);
    iso.kappa2.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        iso.rm_theta[i] += theta0;
        iso.kappa1[i] = iso.kappa[i];
        iso.kappa2[i] = iso.kappa[i] * iso.rm_theta[i];
    }
    return iso;
}

const char* iso_sphere_name(IsoSphereKind k) {
    switch (k) {
    case IsoSphereKind::Cylindrical: return "Cylindrical";
    case IsoSphereKind::Parabolic: return "Parabolic";
    case IsoSphereKind::Plane: return "Plane";
    case IsoSphereKind::None: return "None";
    }
    return "?";
}

IsoSphere iso_sphere_classify(const IsoFrameData& iso) {
    IsoSphere out;
    const double mu = mean(iso.kappa);
    out.kappa_spread = stddev(iso.kappa) / std::abs(mu);
    if (out.kappa_spread < 1e-3) {
        out.kind = IsoSphereKind::Cylindrical;
        out.radius = 1.0 / std::abs(mu);
        return out;
    }
    std::vector<Vec> samples(iso.s.size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = Vec2(iso.kappa1[i], iso.kappa2[i]);
    const auto nd = classify_development(samples);
    out.fit_residual = nd.fit_residual;
    out.line_normal = nd.normal;
    out.line_distance = nd.distance;
    switch (nd.fit_kind) {
    case FitKind::LineThroughOrigin: out.kind = IsoSphereKind::Plane; break;
    case FitKind::LineNotThroughOrigin: out.kind = IsoSphereKind::Parabolic; break;
    default: out.kind = IsoSphereKind::None; break;
    }
    return out;
}

} // namespace cg
