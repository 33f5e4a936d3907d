#include "curvegeom/errors.hpp"
#include "curvegeom/level_surfaces.hpp"
#include "curvegeom/schrodinger.hpp"
#include "test_support.hpp"

#include <random>

using namespace cg;
using namespace cgtest;

namespace {

SeparatedProblem free_box(double L, Boundary bc = Boundary::Dirichlet) {
    SeparatedProblem p;
    p.u = {0, L};
    p.bc = bc;
    p.Ueff_fn = [](double) { return 0.0; };
    return p;
}

double grid_integral(const std::vector<double>& a, const std::vector<double>& b, double h) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * h;
}

double veff(const SeparatedProblem& p, double x) { return -p.ueff_at(x) + p.lambda / (p.f_at(x) * p.f_at(x)); }

} // namespace

TEST_CASE("particle in a box") {
    const double L = 3;
    const auto sp = solve_1d(free_box(L), 5, 4000);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(sp.energies[n - 1] / (pi * pi * n * n / (L * L)) - 1) < 1e-4);
    SUBCASE("unit box ground state") { CHECK(std::abs(solve_1d(free_box(1), 1, 4000).energies[0] - pi * pi) < 1e-4 * pi * pi); }
    SUBCASE("ring energies are four times the box energies") {
        const auto ring = solve_1d(free_box(L, Boundary::Periodic), 11, 1600);
        CHECK(std::abs(ring.energies[0]) < 1e-9);
        for (int n = 1; n <= 5; ++n) {
            // each ring level is doubly degenerate
            CHECK(std::abs(ring.energies[2 * n - 1] - ring.energies[2 * n]) < 1e-8 * ring.energies[2 * n]);
            CHECK(std::abs(ring.energies[2 * n - 1] / sp.energies[n - 1] - 4) < 1e-3);
        }
    }
}

TEST_CASE("harmonic oscillator") {
    SeparatedProblem p;
    p.u = {-10, 10};
    p.Ueff_fn = [](double x) { return -x * x; };
    const auto sp = solve_1d(p, 4, 4000);
    for (int n = 0; n < 4; ++n) CHECK(std::abs(sp.energies[n] - (2 * n + 1)) < 1e-3);
}

TEST_CASE("second order convergence") {
    SeparatedProblem p;
    p.u = {-6, 6};
    p.Ueff_fn = [](double x) { return -x * x + 0.3 * std::cos(2 * x); };
    // h, h/2, h/4: N -> 2N + 1 interior nodes
    const auto a = solve_1d(p, 4, 300), b = solve_1d(p, 4, 601), c = solve_1d(p, 4, 1203);
    for (int n = 0; n < 4; ++n) {
        const double d1 = std::abs(b.energies[n] - a.energies[n]), d2 = std::abs(c.energies[n] - b.energies[n]);
        CHECK(d2 < d1);
        CHECK(d1 / d2 > 3.5);
        CHECK(d1 / d2 < 4.5);
    }
}

TEST_CASE("eigenfunctions are orthonormal") {
    SeparatedProblem p;
    p.u = {-8, 8};
    p.Ueff_fn = [](double x) { return 2 / std::cosh(x) / std::cosh(x) - 0.1 * x * x; };
    for (auto bc : {Boundary::Dirichlet, Boundary::Periodic}) {
        p.bc = bc;
        const auto sp = solve_1d(p, 6, bc == Boundary::Dirichlet ? 3000 : 800);
        const double h = sp.grid[1] - sp.grid[0];
        for (int k = 0; k < 6; ++k) {
            CHECK(std::abs(grid_integral(sp.wavefunctions[k], sp.wavefunctions[k], h) - 1) < 1e-6);
            for (int l = k + 1; l < 6; ++l) CHECK(std::abs(grid_integral(sp.wavefunctions[k], sp.wavefunctions[l], h)) < 1e-4);
        }
        for (std::size_t k = 1; k < sp.energies.size(); ++k) CHECK(sp.energies[k] >= sp.energies[k - 1]);
    }
}

TEST_CASE("solver input errors") {
    try {
        solve_1d(free_box(1), 1, 199);
        FAIL("expected GridTooCoarse");
    } catch (const GeometryError& e) {
        CHECK(e.code() == ErrorCode::GridTooCoarse);
    }
    CHECK_THROWS_AS(solve_1d(free_box(1), 0, 400), GeometryError);
    SeparatedProblem bad = free_box(1);
    bad.f_fn = [](double x) { return x - 0.5; };
    CHECK_THROWS_AS(solve_1d(bad, 1, 400), GeometryError);
}

TEST_CASE("separated problems on invariant surfaces") {
    SUBCASE("unit cylinder has Ueff = H^2 = 1/4") {
        const auto cyl = cylindrical_from_mean_curvature([](double) { return 0.5; }, Vec3::UnitZ(), 2 * pi, 801);
        const auto p = separated_problem(cyl, 0);
        for (std::size_t i = 0; i < p.u.size(); i += 40) CHECK(std::abs(p.Ueff[i] - 0.25) < 1e-8);
    }
    SUBCASE("helicoid Ueff(0) = 1/2") {
        const auto p = helicoidal_minimal_veff(MinimalHelicoidal{1, 1, 0}, 0, -5, 5);
        CHECK(std::abs(p.ueff_at(0) - 0.5) < 1e-14);
        CHECK(std::abs(veff(p, 0) + 0.5) < 1e-14);
    }
    SUBCASE("bour reduction agrees with the closed form") {
        const auto mh = minimal_helicoidal_family(1, 2, 0, -3, 3, 2001);
        const auto closed = helicoidal_minimal_veff(mh.family, 1, -3, 3);
        const auto sp0 = separated_problem(mh.surface, 0), sp1 = separated_problem(mh.surface, 1);
        CHECK(std::abs(interp(sp0.u, sp0.Ueff, 0.0) - 0.25) < 1e-8);
        CHECK(sp1.lambda == doctest::Approx(1.0));
        for (double x : {-2.2, -0.7, 0.4, 1.3, 2.5})
            CHECK(std::abs(interp(sp1.u, sp1.Ueff, x) - sp1.lambda / (2 + x * x) - closed.Ueff_fn(x)) < 1e-6);
    }
    SUBCASE("sphere of revolution") {
        // U = 0 sphere radius 2: f = rho, Ueff = f'^2/4f^2 + f''/2f + H^2
        const auto rv = revolution_from_U([](double) { return 0.0; }, 0.5, 0, 0.3, 1.7, 2001);
        const auto p = separated_problem(rv, 2);
        CHECK(p.lambda == doctest::Approx(4.0));
        for (std::size_t i = 10; i + 10 < p.u.size(); i += 100) {
            // arc length u on the sphere: rho = 2 sin(t), u = 2 t + const
            const double t = std::asin(rv.rho[i] / 2);
            const double expect = std::cos(t) * std::cos(t) / (4 * 4 * std::sin(t) * std::sin(t)) - 1.0 / 8 + 0.25;
            CHECK(std::abs(p.Ueff[i] - expect) < 1e-6);
        }
    }
}

TEST_CASE("helicoidal minimal effective potential") {
    std::mt19937 rng(seed());
    std::uniform_real_distribution<double> W(0.3, 3), X(-50, 50);
    SUBCASE("m = 0 is attractive everywhere") {
        for (int k = 0; k < 5; ++k) {
            const double w = W(rng);
            const auto p = helicoidal_minimal_veff(MinimalHelicoidal{w, 2.0 + 0.09, 0.3}, 0, -10, 10);
            for (int j = 0; j < 50; ++j) CHECK(veff(p, X(rng)) < 0);
        }
    }
    SUBCASE("m = 1, b = 1 is repulsive everywhere") {
        for (int k = 0; k < 5; ++k) {
            const double w = W(rng);
            const auto p = helicoidal_minimal_veff(MinimalHelicoidal{w, 1, 0}, 1, -10, 10);
            for (int j = 0; j < 50; ++j) CHECK(veff(p, X(rng)) > 0);
        }
    }
    SUBCASE("closed form") {
        const MinimalHelicoidal fam{1.5, 3, 0.5};
        const auto p = helicoidal_minimal_veff(fam, 2, -5, 5);
        for (double x : {-3.0, 0.0, 1.7}) {
            const double P = (1.5 * x + 0.5) * (1.5 * x + 0.5) + fam.b();
            const double expect = -(1.5 * 1.5 / 4) * (fam.b() / (P * P) + (1 - 16.0) / P);
            CHECK(std::abs(veff(p, x) - expect) < 1e-14);
        }
    }
    SUBCASE("invalid family") { CHECK_THROWS_AS(helicoidal_minimal_veff(MinimalHelicoidal{1, 0.5, 0}, 0, -1, 1), GeometryError); }
}

TEST_CASE("bound states") {
    const MinimalHelicoidal hel{1, 1, 0};
    SUBCASE("helicoid, m = 0") {
        const auto bs = bound_state_search(helicoidal_minimal_veff(hel, 0, -40, 40), 40, 4000);
        CHECK(bs.bound);
        CHECK(bs.E0 < 0);
        CHECK(std::abs(bs.E0 - bs.E0_doubled) <= 0.1 * std::abs(bs.E0_doubled));
    }
    SUBCASE("helicoid, m = 1") {
        const auto bs = bound_state_search(helicoidal_minimal_veff(hel, 1, -40, 40), 40, 4000);
        CHECK(!bs.bound);
        CHECK(bs.E0 >= 0);
        CHECK(bs.E0_doubled < bs.E0);  // creeps down to the continuum edge
        CHECK(bs.E0_doubled >= 0);
    }
    SUBCASE("scaling map to the helicoid") {
        const MinimalHelicoidal fam{1, 3, 0.5};
        const double b = fam.b();
        const auto bf = bound_state_search(helicoidal_minimal_veff(fam, 0, -40.5, 39.5), 40, 4000);
        // xi = sqrt(b) xi~ - w1 / w
        const auto sh = solve_1d(helicoidal_minimal_veff(hel, 0, (-40.5 + 0.5) / std::sqrt(b), (39.5 + 0.5) / std::sqrt(b)), 1, 4000);
        CHECK(bf.bound);
        CHECK(std::abs(bf.E0 - sh.energies[0] / b) < 1e-3 * std::abs(bf.E0));
        // on its own window the helicoid differs only by truncation
        const auto bh = bound_state_search(helicoidal_minimal_veff(hel, 0, -40, 40), 40, 4000);
        CHECK(std::abs(bf.E0 - bh.E0 / b) < 1e-3 * std::abs(bf.E0));
    }
    SUBCASE("negative integral of V_eff implies a bound state") {
        std::mt19937 rng(seed());
        std::uniform_real_distribution<double> W(0.5, 2), W1(-1, 1), B(1, 4);
        int checked = 0;
        for (int k = 0; k < 8; ++k) {
            const double w = W(rng), w1 = W1(rng), w0 = B(rng) + w1 * w1;
            const MinimalHelicoidal fam{w, w0, w1};
            const double L = 40 / w, c = -w1 / w;
            const auto p = helicoidal_minimal_veff(fam, 0, c - L, c + L, 4001);
            std::vector<double> v(p.u.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = veff(p, p.u[i]);
            if (integral(p.u, v) < 0) {
                ++checked;
                CHECK(bound_state_search(p, L, 4000).bound);
            }
        }
        CHECK(checked >= 5);
    }
}

TEST_CASE("m_chi localization") {
    const MinimalHelicoidal fam{1, 2, 0};
    auto mean_abs = [](const Spectrum& sp) {
        const double h = sp.grid[1] - sp.grid[0];
        double m = 0;
        for (std::size_t i = 0; i < sp.grid.size(); ++i) m += std::abs(sp.grid[i]) * sp.wavefunctions[0][i] * sp.wavefunctions[0][i];
        return m * h;
    };
    const auto s0 = solve_1d(helicoidal_minimal_veff(fam, 0, -20, 20), 1, 3000);
    const auto s1 = solve_1d(helicoidal_minimal_veff(fam, 1, -20, 20), 1, 3000);
    // ground state density peaks at the V_eff minimum, xi = 0
    std::size_t imax = 0;
    for (std::size_t i = 0; i < s0.grid.size(); ++i)
        if (std::abs(s0.wavefunctions[0][i]) > std::abs(s0.wavefunctions[0][imax])) imax = i;
    CHECK(std::abs(s0.grid[imax]) < 0.05);
    CHECK(mean_abs(s1) > mean_abs(s0));
}

TEST_CASE("probability is conserved by the rescaling psi -> psi / sqrt(f)") {
    const auto c = helix(1, 0.3, 5, 401);
    const auto T = tube_geometry(c, 0.2, FrameKind::RM, 64);
    const Eigen::Index ns = T.f.rows(), np = T.f.cols();
    const double dphi = 2 * pi / static_cast<double>(np);
    // dS = sqrt(det g) ds dphi = r f ds dphi on the RM tube
    const Grid detg = T.g11.cwiseProduct(T.g22) - T.g12.cwiseProduct(T.g12);
    CHECK((detg.cwiseSqrt() - T.r * T.f).cwiseAbs().maxCoeff() < 1e-12);
    std::mt19937 rng(seed());
    std::uniform_real_distribution<double> U(-1, 1);
    const double a = U(rng), b = U(rng);
    std::vector<double> row_flat(static_cast<std::size_t>(ns)), row_curved(static_cast<std::size_t>(ns));
    for (Eigen::Index i = 0; i < ns; ++i) {
        double flat = 0, curved = 0;
        for (Eigen::Index j = 0; j < np; ++j) {
            const double ph = T.phi[static_cast<std::size_t>(j)];
            const double Psi = std::sin(pi * T.s[static_cast<std::size_t>(i)] / T.s.back()) * (1 + a * std::cos(ph) + b * std::sin(2 * ph));
            const double psi = Psi / std::sqrt(T.r * T.f(i, j));
            flat += Psi * Psi * dphi;
            curved += psi * psi * std::sqrt(detg(i, j)) * dphi;
        }
        row_flat[static_cast<std::size_t>(i)] = flat;
        row_curved[static_cast<std::size_t>(i)] = curved;
    }
    const double nf = integral(T.s, row_flat), nc = integral(T.s, row_curved);
    CHECK(std::abs(nc / nf - 1) < 1e-6);
}

TEST_CASE("geometric phase") {
    SUBCASE("plane curve") {
        const auto c = sample_curve([](double u) { return v3(2 * std::cos(u), std::sin(u), 0); }, 0, 2 * pi, 801, true);
        CHECK(std::abs(geometric_phase(c)) < 1e-10);
    }
    SUBCASE("helix over one turn") {
        const double a = 2, b = 0.5;
        const auto c = helix(a, b, 2 * pi, 801);
        const double tau0 = b / (a * a + b * b), len = 2 * pi * std::sqrt(a * a + b * b);
        CHECK(std::abs(geometric_phase(c) - tau0 * len) < 1e-8);
    }
    SUBCASE("closed curve: equals the RM holonomy") {
        const auto c = sample_curve(
            [](double u) { return v3(std::cos(u) + 0.3 * std::cos(2 * u), std::sin(u) - 0.3 * std::sin(2 * u), 0.4 * std::sin(3 * u)); }, 0,
            2 * pi, 2001, true);
        const auto d1 = point_derivative(c, 1);
        const auto rm = rm_double_reflection(c, generic_normal(d1[0] / d1[0].norm()));
        CHECK(std::abs(wrap_angle(geometric_phase(c)) - holonomy_angle(rm)) < 1e-3);
    }
    SUBCASE("inflection") {
        const auto c = sample_curve([](double u) { return v3(u, u * u * u, 0.1 * u); }, -1, 1, 201);
        try {
            geometric_phase(c);
            FAIL("expected UndefinedFrame");
        } catch (const GeometryError& e) {
            CHECK(e.code() == ErrorCode::UndefinedFrame);
        }
    }
}

TEST_CASE("thin tube spectrum") {
    SUBCASE("planar centerline has no phase") {
        const auto c = sample_curve([](double u) { return v3(2 * std::cos(u), std::sin(u), 0); }, 0, 2 * pi, 801, true);
        const auto st = thin_tube_spectrum(c, 0.01, 2, 1, 1000);
        for (const auto& z : st.phase) CHECK(std::abs(z - std::complex<double>(1, 0)) < 1e-9);
        CHECK(std::abs(st.accumulated_phase) < 1e-9);
    }
    SUBCASE("closed centerline accumulates r ell times the total torsion") {
        const auto c = sample_curve(
            [](double u) { return v3(std::cos(u) + 0.3 * std::cos(2 * u), std::sin(u) - 0.3 * std::sin(2 * u), 0.4 * std::sin(3 * u)); }, 0,
            2 * pi, 2001, true);
        for (int ell : {1, 3}) {
            const auto st = thin_tube_spectrum(c, 0.005, ell, 1, 1000);
            CHECK(std::abs(st.accumulated_phase - 0.005 * ell * geometric_phase(c)) < 1e-9);
            CHECK(std::abs(std::arg(st.phase.back() / st.phase.front()) - wrap_angle(st.accumulated_phase)) < 1e-9);
        }
    }
    SUBCASE("zero order energies ignore torsion") {
        auto k = [](double s) { return 1 + 0.3 * std::sin(s); };
        const auto c1 = integrate_frenet(k, [](double) { return 0.0; }, Vec3::Zero(), Mat3::Identity(), 0, 6, 1e-2);
        const auto c2 = integrate_frenet(k, [](double s) { return 0.5 + 0.2 * std::cos(s); }, Vec3::Zero(), Mat3::Identity(), 0, 6, 1e-2);
        for (int n = 1; n <= 3; ++n) {
            const auto a = thin_tube_spectrum(c1, 0.01, 1, n, 2000), b = thin_tube_spectrum(c2, 0.01, 1, n, 2000);
            CHECK(std::abs(a.energy - b.energy) < 1e-8 * std::abs(a.energy));
            const double L = a.s.back() - a.s.front();
            CHECK(std::abs(a.En - pi * pi * n * n / (L * L)) < 1e-4 * a.En);
            CHECK(std::abs(a.energy - (a.En + 1 - 1 / (4 * 0.01 * 0.01))) < 1e-9 * std::abs(a.energy));
        }
    }
    SUBCASE("not thin") {
        try {
            thin_tube_spectrum(helix(1, 0.3, 5, 401), 0.1, 1, 1);
            FAIL("expected NotThin");
        } catch (const GeometryError& e) {
            CHECK(e.code() == ErrorCode::NotThin);
        }
    }
}
