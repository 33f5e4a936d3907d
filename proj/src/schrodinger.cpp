#include "curvegeom/schrodinger.hpp"
#include "curvegeom/errors.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace cg {

const char* boundary_name(Boundary b) { return b == Boundary::Dirichlet ? "Dirichlet" : "Periodic"; }

double SeparatedProblem::ueff_at(double x) const {
    if (Ueff_fn) return Ueff_fn(x);
    return interp(u, Ueff, x);
}

double SeparatedProblem::f_at(double x) const {
    if (f_fn) return f_fn(x);
    if (f.empty()) return 1.0;
    return interp(u, f, x);
}

SeparatedProblem separated_problem(const InvariantSurface& s, int m) {
    const std::size_t n = s.u.size();
    SeparatedProblem p;
    p.u = s.u;
    p.f = s.f;
    p.Ueff.resize(n);
    std::vector<double> df, ddf;
    if (s.kind == SurfaceKind::Helicoidal) {
        df = s.Ud;
        ddf = s.Udd;
    } else {
        df = derivative(s.u, s.f, 1);
        ddf = derivative(s.u, s.f, 2);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double f = s.f[i];
        p.Ueff[i] = df[i] * df[i] / (4 * f * f) + ddf[i] / (2 * f) + s.H[i] * s.H[i];
    }
    const double k = s.kind == SurfaceKind::Helicoidal ? m * s.omega : static_cast<double>(m);
    p.lambda = k * k;
    return p;
}

namespace {

void normalize_columns(Spectrum& sp, const std::vector<double>& z, int N, int m, double h) {
    sp.wavefunctions.assign(m, std::vector<double>(N));
    for (int k = 0; k < m; ++k) {
        double big = 0;
        for (int i = 0; i < N; ++i) {
            const double v = z[static_cast<std::size_t>(k) * N + i] / std::sqrt(h);
            sp.wavefunctions[k][i] = v;
            if (std::abs(v) > std::abs(big)) big = v;
        }
        if (big < 0)
            for (double& v : sp.wavefunctions[k]) v = -v;
    }
}

// Eigenvectors of the cyclic tridiagonal (diag, off) by shifted inverse iteration.
// w holds approximate eigenvalues on entry and Rayleigh quotients on exit.
// Vectors of a cluster are orthogonalized against each other every sweep.
void cyclic_vectors(const std::vector<double>& diag, double off, std::vector<double>& w, int m,
                    std::vector<double>& z) {
    const int N = static_cast<int>(diag.size());
    using Vec = Eigen::VectorXd;
    double scale = 0;
    for (double d : diag) scale = std::max(scale, std::abs(d));
    scale += 2 * std::abs(off);
    const double cluster = 1e-8 * scale;
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    std::vector<Vec> vs;
    for (int k = 0; k < m; ++k) {
        const double shift = w[k] - 1e-10 * scale;
        std::vector<Eigen::Triplet<double>> trip;
        for (int i = 0; i < N; ++i) {
            trip.emplace_back(i, i, diag[i] - shift);
            trip.emplace_back(i, (i + 1) % N, off);
            trip.emplace_back((i + 1) % N, i, off);
        }
        Eigen::SparseMatrix<double> A(N, N);
        A.setFromTriplets(trip.begin(), trip.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
        Vec x(N);
        for (int i = 0; i < N; ++i) x[i] = g(rng);
        for (int it = 0; it < 4; ++it) {
            x = lu.solve(x);
            for (int j = 0; j < k; ++j)
                if (std::abs(w[j] - w[k]) < cluster) x -= vs[j].dot(x) * vs[j];
            x.normalize();
        }
        Vec Ax(N);
        for (int i = 0; i < N; ++i) Ax[i] = diag[i] * x[i] + off * (x[(i + 1) % N] + x[(i + N - 1) % N]);
        w[k] = x.dot(Ax);
        vs.push_back(x);
        std::copy(x.data(), x.data() + N, z.begin() + static_cast<std::ptrdiff_t>(k) * N);
    }
}

} // namespace

Spectrum solve_1d(const SeparatedProblem& p, int n_states, int n_grid) {
    if (n_grid < 200) fail(ErrorCode::GridTooCoarse, "n_grid must be at least 200");
    if (n_states < 1 || n_states > n_grid) fail(ErrorCode::InvalidArgument, "n_states out of range");
    if (p.u.size() < 2 || !(p.upper() > p.lower())) fail(ErrorCode::InvalidRange, "empty domain");
    const int N = n_grid;
    const double L = p.upper() - p.lower();
    Spectrum sp;
    sp.bc = p.bc;
    sp.n_states = n_states;
    sp.grid.resize(N);
    std::vector<double> diag(N);
    const bool dir = p.bc == Boundary::Dirichlet;
    const double h = dir ? L / (N + 1) : L / N;
    for (int i = 0; i < N; ++i) {
        const double x = p.lower() + (dir ? (i + 1) * h : i * h);
        sp.grid[i] = x;
        const double f = p.f_at(x);
        if (!(f > 0)) fail(ErrorCode::InvalidArgument, "metric coefficient f must be positive");
        diag[i] = 2 / (h * h) - p.ueff_at(x) + p.lambda / (f * f);
    }
    const double off = -1 / (h * h);
    std::vector<double> w(N), z(static_cast<std::size_t>(N) * n_states);
    lapack_int found = 0;
    lapack_int info;
    if (dir) {
        std::vector<double> e(N, off);
        std::vector<lapack_int> supp(2 * static_cast<std::size_t>(N));
        info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', N, diag.data(), e.data(), 0, 0, 1, n_states, 0.0, &found,
                              w.data(), z.data(), N, supp.data());
    } else {
        std::vector<double> A(static_cast<std::size_t>(N) * N, 0.0);
        auto at = [&](int i, int j) -> double& { return A[static_cast<std::size_t>(j) * N + i]; };
        for (int i = 0; i < N; ++i) {
            at(i, i) = diag[i];
            at(i, (i + 1) % N) = off;
            at((i + 1) % N, i) = off;
        }
        // eigenvalues only: some OpenBLAS kernels corrupt the dense back-transformation
        info = LAPACKE_dsyevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', N, A.data(), N, 0, 0, 1, n_states,
                              2 * LAPACKE_dlamch('S'), &found, w.data(), nullptr, N, nullptr);
        if (info == 0 && found == n_states) cyclic_vectors(diag, off, w, n_states, z);
    }
    if (info != 0 || found != n_states) fail(ErrorCode::InvalidArgument, "eigensolver failed");
    sp.energies.assign(w.begin(), w.begin() + n_states);
    normalize_columns(sp, z, N, n_states, h);
    return sp;
}

SeparatedProblem helicoidal_minimal_veff(const MinimalHelicoidal& fam, int m_chi, double xi0, double xi1,
                                         std::size_t n) {
    if (fam.b() < 1) fail(ErrorCode::InvalidFamily, "b = omega0 - omega1^2 must be >= 1");
    if (!(xi1 > xi0) || n < 2) fail(ErrorCode::InvalidRange, "bad xi range");
    SeparatedProblem p;
    const double w2 = fam.omega * fam.omega, b = fam.b(), c = 1.0 - 4.0 * m_chi * m_chi;
    p.Ueff_fn = [fam, w2, b, c](double xi) {
        const double P = fam.U2(xi);
        return 0.25 * w2 * (b / (P * P) + c / P);
    };
    p.f_fn = [fam](double xi) { return std::sqrt(fam.U2(xi)); };
    p.u = linspace(xi0, xi1, n);
    p.f.resize(n);
    p.Ueff.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.f[i] = p.f_fn(p.u[i]);
        p.Ueff[i] = p.Ueff_fn(p.u[i]);
    }
    // the angular term already sits in Ueff
    p.lambda = 0;
    return p;
}

BoundStateResult bound_state_search(const SeparatedProblem& p0, double L, int n_grid) {
    if (!p0.Ueff_fn) fail(ErrorCode::InvalidArgument, "bound-state search needs a potential function");
    if (!(L > 0)) fail(ErrorCode::InvalidRange, "half width must be positive");
    const double c = 0.5 * (p0.lower() + p0.upper());
    auto window = [&](double half) {
        SeparatedProblem p = p0;
        p.bc = Boundary::Dirichlet;
        p.u = {c - half, c + half};
        p.f.clear();
        p.Ueff.clear();
        return p;
    };
    const Spectrum a = solve_1d(window(L), 1, n_grid);
    const Spectrum b = solve_1d(window(2 * L), 1, 2 * n_grid + 1);
    BoundStateResult out;
    out.E0 = a.energies[0];
    out.E0_doubled = b.energies[0];
    out.grid = a.grid;
    out.wavefunction = a.wavefunctions[0];
    out.bound = out.E0_doubled < -1e-6 && std::abs(out.E0 - out.E0_doubled) <= 0.1 * std::abs(out.E0_doubled);
    return out;
}

double geometric_phase(const SampledCurve& c) {
    const FrenetData fd = frenet_apparatus(c);
    for (std::size_t i = 0; i < fd.s.size(); ++i)
        if (!fd.kappa_defined[i]) fail(ErrorCode::UndefinedFrame, "curvature vanishes at sample " + std::to_string(i));
    if (c.closed) return total_torsion(c);
    return integral(fd.s, fd.tau);
}

ThinTubeState thin_tube_spectrum(const SampledCurve& c, double r, int ell, int n, int n_grid) {
    if (!(r > 0) || n < 1) fail(ErrorCode::InvalidArgument, "need r > 0 and n >= 1");
    const FrenetData fd = frenet_apparatus(c);
    const double kmax = max_abs(fd.kappa);
    if (r * kmax >= 0.05) fail(ErrorCode::NotThin, "r kappa_max must stay below 0.05");
    ThinTubeState st;
    st.s = fd.s;
    std::vector<double> tau = fd.tau;
    for (std::size_t i = 0; i < tau.size(); ++i)
        if (!fd.kappa_defined[i]) tau[i] = 0;
    st.theta = cumulative_integral(st.s, tau);
    SeparatedProblem p;
    p.u = {st.s.front(), st.s.back()};
    p.bc = c.closed ? Boundary::Periodic : Boundary::Dirichlet;
    p.Ueff_fn = [](double) { return 0.0; };
    const Spectrum sp = solve_1d(p, n, n_grid);
    st.En = sp.energies[n - 1];
    st.energy = st.En + static_cast<double>(ell) * ell - 1 / (4 * r * r);
    st.psi_grid = sp.grid;
    st.psi = sp.wavefunctions[n - 1];
    const double k = r * ell;
    st.phase.resize(st.s.size());
    for (std::size_t i = 0; i < st.s.size(); ++i) st.phase[i] = std::polar(1.0, k * st.theta[i]);
    st.accumulated_phase = k * (st.theta.back() - st.theta.front());
    return st;
}

} // namespace cg
