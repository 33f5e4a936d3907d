#include "curvegeom/errors.hpp"
#include "curvegeom/indefinite_spaces.hpp"
#include "test_support.hpp"

using namespace cg;
using namespace cgtest;

namespace {

// On x^2 + y^2 - z^2 = r^2.
SampledCurve de_sitter_curve(double r, std::size_t n) {
    return sample_curve(
        [=](double u) {
            const double v = 0.03 * std::sin(2 * u);
            return v3(r * std::cosh(v) * std::cos(u), r * std::cosh(v) * std::sin(u), r * std::sinh(v));
        },
        0, 2 * pi, n, true);
}

// Timelike helix-like curve.
SampledCurve timelike_curve() {
    return sample_curve([](double u) { return v3(0.5 * std::cos(u), 0.5 * std::sin(u), 2 * u + 0.1 * u * u); }, 0, 3, 601);
}

// On the upper sheet z = sqrt(x^2 + y^2 + 4).
SampledCurve hyperbolic_sheet_curve() {
    return sample_curve(
        [](double u) {
            const double x = std::cos(u) * (2 + 0.1 * std::cos(3 * u)), y = std::sin(u) * (2 + 0.1 * std::cos(3 * u));
            return v3(x, y, std::sqrt(x * x + y * y + 4));
        },
        0, 2 * pi, 801, true);
}

double conic_error(const LorentzRMData& rm) {
    double e = 0;
    for (std::size_t i = 0; i < rm.s.size(); ++i) {
        const double lhs = rm.eta[i] * rm.kappa[i] * rm.kappa[i];
        const double rhs = rm.eps1 * rm.kappa1[i] * rm.kappa1[i] + rm.kappa2[i] * rm.kappa2[i];
        e = std::max(e, std::abs(lhs - rhs));
    }
    return e;
}

Mat3 boost_x(double w) {
    Mat3 B = Mat3::Identity();
    B(0, 0) = B(2, 2) = std::cosh(w);
    B(0, 2) = B(2, 0) = std::sinh(w);
    return B;
}

} // namespace

TEST_CASE("causal character") {
    CHECK(causal_character(Vec3(1, 0, 0)) == Causal::Spacelike);
    CHECK(causal_character(Vec3(0, 0, 1)) == Causal::Timelike);
    CHECK(causal_character(Vec3(1, 0, 1)) == Causal::Lightlike);
    CHECK(std::string(causal_name(Causal::Lightlike)) == "lightlike");
}

TEST_CASE("lorentz cross product") {
    CHECK((lorentz_cross(Vec3::UnitX(), Vec3::UnitY()) + Vec3::UnitZ()).norm() < 1e-15);
    std::mt19937 rng(seed());
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; ++k) {
        const Vec3 u(g(rng), g(rng), g(rng)), v(g(rng), g(rng), g(rng));
        CHECK(lorentz_cross(u, u).norm() < 1e-14);
        CHECK(std::abs(ldot(lorentz_cross(u, v), u)) < 1e-12);
        for (int j = 0; j < 3; ++j) {
            Mat3 M;
            M << u, v, Vec3::Unit(j);
            CHECK(ldot(lorentz_cross(u, v), Vec3::Unit(j)) == doctest::Approx(M.determinant()));
        }
    }
}

TEST_CASE("causal reparametrization") {
    SUBCASE("spacelike circle") {
        auto c = sample_curve([](double u) { return v3(std::cos(u), std::sin(u), 0); }, 0, 2 * pi, 401, true);
        auto [rc, ch] = reparametrize_causal(c);
        CHECK(ch == Causal::Spacelike);
        CHECK(rc.params.back() == doctest::Approx(2 * pi).epsilon(1e-10));
    }
    SUBCASE("timelike line") {
        auto c = sample_curve([](double u) { return v3(0, 0, u); }, 0, 3, 31);
        auto [rc, ch] = reparametrize_causal(c);
        CHECK(ch == Causal::Timelike);
        for (std::size_t i = 0; i < rc.size(); ++i) CHECK(rc.params[i] == doctest::Approx(c.params[i]).epsilon(1e-12));
    }
    SUBCASE("lightlike curve gets pseudo arc length") {
        // null helix in the parameter t with u = t^2
        auto c = sample_curve([](double t) { const double u = t * t; return v3(std::cos(u), std::sin(u), u); }, 0.5, 2, 1501);
        auto [rc, ch] = reparametrize_causal(c);
        CHECK(ch == Causal::Lightlike);
        const auto d2 = point_derivative(rc, 2);
        for (std::size_t i = 5; i + 5 < rc.size(); ++i) CHECK(std::abs(ldot(to3(d2[i]), to3(d2[i])) - 1) < 1e-6);
    }
    SUBCASE("mixed character") {
        auto c = sample_curve([](double u) { return v3(u, 0, u * u); }, 0, 1, 101);
        CHECK_THROWS_AS(reparametrize_causal(c), GeometryError);
    }
}

TEST_CASE("lorentz rm frames and the conic law") {
    SUBCASE("spacelike curve with timelike normal") {
        const auto rm = lorentz_rm_frame(de_sitter_curve(1.5, 801));
        CHECK(rm.character == Causal::Spacelike);
        CHECK(conic_error(rm) < 1e-6);
        for (std::size_t i = 0; i < rm.s.size(); ++i) {
            CHECK(std::abs(ldot(rm.t[i], rm.n1[i])) < 1e-8);
            CHECK(std::abs(ldot(rm.t[i], rm.n2[i])) < 1e-8);
            CHECK(std::abs(ldot(rm.n1[i], rm.n2[i])) < 1e-8);
            CHECK(std::abs(ldot(rm.n2[i], rm.n2[i]) + rm.eps * rm.eps1) < 1e-8);
        }
    }
    SUBCASE("timelike curve: development on a circle") {
        const auto rm = lorentz_rm_frame(timelike_curve());
        CHECK(rm.character == Causal::Timelike);
        CHECK(conic_error(rm) < 1e-6);
        for (std::size_t i = 0; i < rm.s.size(); ++i)
            CHECK(std::abs(rm.kappa1[i] * rm.kappa1[i] + rm.kappa2[i] * rm.kappa2[i] - rm.kappa[i] * rm.kappa[i]) < 1e-6);
    }
    SUBCASE("spacelike curve with lightlike acceleration") {
        auto c = sample_curve([](double s) { return v3(s, s * s / 2, s * s / 2); }, -1, 1, 201);
        const auto rm = lorentz_rm_frame(c);
        for (std::size_t i = 0; i < rm.s.size(); ++i) CHECK(std::abs(std::abs(rm.kappa1[i]) - std::abs(rm.kappa2[i])) < 1e-6);
    }
    SUBCASE("lightlike input goes to the null frame") {
        auto c = sample_curve([](double u) { return v3(std::cos(u), std::sin(u), u); }, 0, 6, 601);
        CHECK_THROWS_AS(lorentz_rm_frame(c), GeometryError);
    }
}

TEST_CASE("null frames") {
    SUBCASE("pseudo arc length gives kappa1^2 = 1") {
        const auto nf = null_frame(sample_curve([](double u) { return v3(std::cos(u), std::sin(u), u); }, 0, 6, 601));
        for (double k : nf.kappa1) CHECK(std::abs(k * k - 1) < 1e-4);
    }
    SUBCASE("lightlike line") {
        CHECK_THROWS_AS(null_frame(sample_curve([](double u) { return v3(1, u, u); }, 0, 1, 50)), GeometryError);
    }
    SUBCASE("lightlike curves on the pseudo-sphere are lines") {
        // a ruling of x^2 + y^2 - z^2 = 1
        auto c = sample_curve([](double u) { return v3(std::cos(0.3) - u * std::sin(0.3), std::sin(0.3) + u * std::cos(0.3), u); },
                              -1, 1, 101);
        for (const auto& p : c.points) CHECK(std::abs(ldot(to3(p), to3(p)) - 1) < 1e-12);
        try {
            null_frame(c);
            FAIL("expected DegenerateLightlike");
        } catch (const GeometryError& e) {
            CHECK(e.code() == ErrorCode::DegenerateLightlike);
        }
    }
}

TEST_CASE("lorentz sphere membership") {
    SUBCASE("pseudo-sphere") {
        const auto ls = lorentz_sphere_membership(lorentz_rm_frame(de_sitter_curve(1.5, 801)));
        CHECK(ls.kind == LorentzSphereKind::PseudoSphere);
        CHECK(std::abs(ls.radius - 1.5) < 1e-3);
        CHECK(ls.center_drift < 1e-3);
        CHECK(ls.center.norm() < 1e-3);
    }
    SUBCASE("upper hyperbolic sheet") {
        const auto ls = lorentz_sphere_membership(lorentz_rm_frame(hyperbolic_sheet_curve()));
        CHECK(ls.kind == LorentzSphereKind::PseudoHyperbolic);
        CHECK(std::abs(ls.radius - 2) < 1e-3);
        CHECK(ls.center_drift < 1e-3);
    }
    SUBCASE("light cone") {
        auto c = sample_curve(
            [](double u) { const double f = 1 + 0.05 * std::sin(2 * u); return v3(f * std::cos(u), f * std::sin(u), f); }, 0,
            2 * pi, 801, true);
        const auto ls = lorentz_sphere_membership(lorentz_rm_frame(c));
        CHECK(ls.kind == LorentzSphereKind::LightCone);
        CHECK(std::abs(std::abs(ls.a1) - std::abs(ls.a2)) < 1e-6);
        CHECK(ls.center_drift < 1e-3);
    }
    SUBCASE("generic curve") {
        auto c = sample_curve([](double u) { return v3(0.5 * std::cos(u), 0.7 * std::sin(u), 2 * u + 0.1 * u * u); }, 0, 4, 401);
        const auto rm = lorentz_rm_frame(c);
        try {
            lorentz_sphere_membership(rm);
            FAIL("expected NoLineFit");
        } catch (const GeometryError& e) {
            CHECK(e.code() == ErrorCode::NoLineFit);
        }
    }
}

TEST_CASE("lorentz curvature is invariant under O1(3)") {
    const auto c = de_sitter_curve(1.5, 801);
    const auto rm0 = lorentz_rm_frame(c);
    std::mt19937 rng(seed());
    std::uniform_real_distribution<double> U(-0.8, 0.8);
    for (int k = 0; k < 4; ++k) {
        const double a = U(rng) * pi;
        Mat3 R = Mat3::Identity();
        R.topLeftCorner<2, 2>() << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        const Mat3 L = R * boost_x(U(rng));
        SampledCurve m = c;
        for (auto& p : m.points) p = Vec(L * to3(p) + Vec3(U(rng), 0, 0) * 0);
        const auto rm = lorentz_rm_frame(m);
        for (std::size_t i = 0; i < rm.s.size(); ++i) CHECK(std::abs(rm.kappa[i] - rm0.kappa[i]) < 1e-8);
    }
}

TEST_CASE("isotropic apparatus") {
    SUBCASE("curve on a circular cylinder") {
        auto c = sample_curve([](double u) { return v3(2 * std::cos(u), 2 * std::sin(u), 0.7 * u + 0.2 * std::sin(u)); }, 0, 10, 1001);
        const auto iso = iso_apparatus(c);
        for (double k : iso.kappa) CHECK(std::abs(k - 0.5) < 1e-6);
        const auto cl = iso_sphere_classify(iso);
        CHECK(cl.kind == IsoSphereKind::Cylindrical);
        CHECK(std::abs(cl.radius - 2) < 1e-6);
    }
    SUBCASE("non-isotropic plane") {
        auto c = sample_curve(
            [](double u) { const double x = 2 * std::cos(u), y = std::sin(u); return v3(x, y, 0.3 * x - 0.2 * y + 1); }, 0, 2 * pi,
            801, true);
        const auto iso = iso_apparatus(c);
        CHECK(max_abs(iso.tau) < 1e-8);
        CHECK(iso_sphere_classify(iso).kind == IsoSphereKind::Plane);
    }
    SUBCASE("paraboloid") {
        auto c = sample_curve(
            [](double u) { const double x = 2 * std::cos(u), y = std::sin(u); return v3(x, y, (x * x + y * y) / 2); }, 0, 2 * pi,
            801, true);
        const auto cl = iso_sphere_classify(iso_apparatus(c));
        CHECK(cl.kind == IsoSphereKind::Parabolic);
        CHECK(cl.line_distance > 1e-2);
    }
    SUBCASE("top view with an inflection") {
        auto c = sample_curve([](double u) { return v3(u, u * u * u, u * u); }, -1, 1, 201);
        CHECK_THROWS_AS(iso_apparatus(c), GeometryError);
    }
    SUBCASE("rm relation kappa1 kappa2' - kappa1' kappa2 = tau kappa^2") {
        auto c = sample_curve(
            [](double u) { return v3(2 * std::cos(u), std::sin(u), 0.3 * std::sin(2 * u) + 0.1 * u); }, 0, 5, 1001);
        const auto iso = iso_apparatus(c);
        const auto d1 = derivative(iso.s, iso.kappa1, 1), d2 = derivative(iso.s, iso.kappa2, 1);
        for (std::size_t i = 0; i < iso.s.size(); ++i)
            CHECK(std::abs(iso.kappa1[i] * d2[i] - d1[i] * iso.kappa2[i] - iso.tau[i] * iso.kappa[i] * iso.kappa[i]) < 1e-4);
    }
}

TEST_CASE("isotropic invariants under the group B6") {
    auto c = sample_curve([](double u) { return v3(2 * std::cos(u), std::sin(u), 0.3 * std::sin(2 * u) + 0.1 * u); }, 0, 5, 201);
    const auto iso0 = iso_apparatus(c);
    std::mt19937 rng(seed());
    std::uniform_real_distribution<double> U(-1, 1);
    for (int k = 0; k < 4; ++k) {
        const double a = U(rng) * pi, b1 = U(rng), b2 = U(rng), c0 = U(rng), c1 = U(rng), c2 = U(rng);
        SampledCurve m = c;
        for (auto& p : m.points) {
            const double x = p(0), y = p(1), z = p(2);
            p = v3(std::cos(a) * x - std::sin(a) * y + b1, std::sin(a) * x + std::cos(a) * y + b2, c0 + c1 * x + c2 * y + z);
        }
        const auto iso = iso_apparatus(m);
        for (std::size_t i = 0; i < iso.s.size(); ++i) {
            CHECK(std::abs(iso.kappa[i] - iso0.kappa[i]) < 1e-8);
            CHECK(std::abs(iso.tau[i] - iso0.tau[i]) < 1e-8);
        }
    }
}
