#pragma once

#include "curvegeom/gip_surfaces.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace cg {

// Units hbar^2 / 2m = 1 throughout.
enum class Boundary { Dirichlet, Periodic };
const char* boundary_name(Boundary b);

// A'' + (Ueff + k^2 - lambda / f^2) A = 0 on [u.front(), u.back()].
// When the callables are set they are used instead of the samples.
struct SeparatedProblem {
    std::vector<double> u, f, Ueff;
    double lambda = 0;
    Boundary bc = Boundary::Dirichlet;
    std::function<double(double)> Ueff_fn, f_fn;

    double ueff_at(double x) const;
    double f_at(double x) const;
    double lower() const { return u.front(); }
    double upper() const { return u.back(); }
};

struct Spectrum {
    std::vector<double> energies;                   // ascending, k^2
    std::vector<std::vector<double>> wavefunctions; // on grid, int |A|^2 du = 1
    std::vector<double> grid;
    Boundary bc = Boundary::Dirichlet;
    int n_states = 0;
};

// Cylindrical: lambda = m^2 (transverse wave number); revolution: lambda = m^2;
// helicoidal: lambda = (m omega)^2.
SeparatedProblem separated_problem(const InvariantSurface& s, int m);

// Second-order finite differences on n_grid nodes: interior nodes of a
// uniform grid for Dirichlet, one period without the duplicate for Periodic.
Spectrum solve_1d(const SeparatedProblem& p, int n_states, int n_grid);

// Potential term of the minimal helicoidal family on [xi0, xi1]:
// Ueff = (w^2/4) [b / P^2 + (1 - 4 m^2) / P], P = b + (w xi + w1)^2, so
// V_eff = -Ueff.
SeparatedProblem helicoidal_minimal_veff(const MinimalHelicoidal& fam, int m_chi, double xi0, double xi1,
                                         std::size_t n = 2001);

struct BoundStateResult {
    bool bound = false;
    double E0 = 0;          // on [c - L, c + L]
    double E0_doubled = 0;  // on [c - 2L, c + 2L], same step
    std::vector<double> grid, wavefunction;
};

// Needs p.Ueff_fn. The window is centred at the midpoint of p's range.
BoundStateResult bound_state_search(const SeparatedProblem& p, double L, int n_grid);

struct ThinTubeState {
    double energy = 0;
    double En = 0;              // longitudinal eigenvalue
    std::vector<double> s, theta;             // centerline samples
    std::vector<double> psi_grid, psi;        // longitudinal eigenfunction
    std::vector<std::complex<double>> phase;  // exp(i r ell theta(s))
    double accumulated_phase = 0;             // r ell (theta(L) - theta(0))
};

// Zero-order thin-tube state n >= 1 with angular number ell.
ThinTubeState thin_tube_spectrum(const SampledCurve& centerline, double r, int ell, int n, int n_grid = 2000);

// int tau ds along the curve (one period when closed).
double geometric_phase(const SampledCurve& c);

} // namespace cg
