// curvegeom command-line front end.
//
// Exit codes: 0 ok, 2 bad input (flags, files, preconditions), 3 the
// geometry or numerics ran out of domain.

#include "curvegeom/csv_io.hpp"
#include "curvegeom/errors.hpp"
#include "curvegeom/geodesic_spheres.hpp"
#include "curvegeom/gip_surfaces.hpp"
#include "curvegeom/indefinite_spaces.hpp"
#include "curvegeom/level_surfaces.hpp"
#include "curvegeom/schrodinger.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>

using json = nlohmann::json;
using namespace cg;

namespace {

constexpr double kPi = std::numbers::pi;

// "-" means stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) fail(ErrorCode::InvalidArgument, "cannot write " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void emit_json(const std::string& path, const json& j) {
    Output out(path);
    out.os() << j.dump(2) << '\n';
}

void emit_table(const std::string& path, const Table& t) {
    Output out(path);
    write_table(out.os(), t);
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
    return a;
}

void push3(std::vector<double>& row, const Vec3& v) { row.insert(row.end(), {v(0), v(1), v(2)}); }

void add3(std::vector<std::string>& cols, const std::string& p) {
    for (const char* c : {"x", "y", "z"}) cols.push_back(p + c);
}

// ---- sample ----

struct SampleArgs {
    std::string curve = "helix", out = "-";
    double radius = 2, pitch = 0.5, t1 = 10, amp = 0.5, z0 = 0.7;
    std::size_t n = 801;
    std::string form = "sphere";
};

void run_sample(const SampleArgs& a) {
    SampledCurve c;
    if (a.curve == "helix") {
        c = sample_curve([&](double u) { return Vec(Vec3(a.radius * std::cos(u), a.radius * std::sin(u), a.pitch * u)); },
                         0, a.t1, a.n);
    } else if (a.curve == "circle") {
        c = sample_curve([&](double u) { return Vec(Vec3(a.radius * std::cos(u), a.radius * std::sin(u), 0)); }, 0,
                         2 * kPi, a.n, true);
    } else if (a.curve == "spherical") {
        // latitude wave on the sphere of the given radius
        c = sample_curve(
            [&](double u) {
                const double g = a.amp * std::sin(3 * u);
                return Vec(a.radius * Vec3(std::cos(u) * std::cos(g), std::sin(u) * std::cos(g), std::sin(g)));
            },
            0, 2 * kPi, a.n, true);
    } else if (a.curve == "knot") {
        c = sample_curve(
            [](double u) {
                return Vec(Vec3(std::cos(u) + 0.3 * std::cos(2 * u), std::sin(u) - 0.3 * std::sin(2 * u),
                                0.4 * std::sin(3 * u)));
            },
            0, 2 * kPi, a.n, true);
    } else if (a.curve == "geodesic-circle") {
        const bool sph = a.form == "sphere";
        if (!sph && a.form != "hyperbolic") fail(ErrorCode::InvalidArgument, "--form must be sphere or hyperbolic");
        const double r = a.radius, z = a.z0 / r;
        c = sample_curve(
            [&](double u) {
                Vec q(3);
                if (sph)
                    q << r * std::sin(z) * std::cos(u), r * std::sin(z) * std::sin(u), r * std::cos(z);
                else
                    q << r * std::cosh(z), r * std::sinh(z) * std::cos(u), r * std::sinh(z) * std::sin(u);
                return q;
            },
            0, 2 * kPi, a.n, true);
    } else {
        fail(ErrorCode::InvalidArgument, "unknown curve '" + a.curve + "'");
    }
    Output out(a.out);
    write_curve(out.os(), c, "u");
}

// ---- frames ----

struct FramesArgs {
    std::string input, out = "-", summary;
    bool rm = false;
};

void run_frames(const FramesArgs& a) {
    const SampledCurve c = read_curve_file(a.input);
    Table t;
    json sum;
    sum["closed"] = c.closed;
    sum["samples"] = c.size();
    if (!a.rm) {
        const FrenetData fd = frenet_apparatus(c);
        t.columns = {"s"};
        for (const char* p : {"", "t", "n", "b"}) add3(t.columns, p);
        t.columns.insert(t.columns.end(), {"kappa", "tau"});
        for (std::size_t i = 0; i < fd.s.size(); ++i) {
            std::vector<double> r{fd.s[i]};
            push3(r, fd.points[i]);
            push3(r, fd.t[i]);
            push3(r, fd.n[i]);
            push3(r, fd.b[i]);
            r.push_back(fd.kappa[i]);
            r.push_back(fd.tau[i]);
            t.rows.push_back(std::move(r));
        }
        sum["frame"] = "frenet";
        sum["length"] = fd.s.back() - fd.s.front();
        if (c.closed) sum["total_torsion"] = periodic_integral(fd.s, fd.tau);
    } else {
        const auto d1 = point_derivative(c, 1);
        Vec seed = generic_normal(d1[0] / d1[0].norm());
        if (c.ambient_dim == 3) {
            const FrenetData fd = frenet_apparatus(c);
            if (fd.kappa_defined[0]) seed = fd.n[0];
        }
        const RMFrameData rm = rm_double_reflection(c, seed);
        static const char* ax[] = {"x", "y", "z", "w"};
        const int d = c.ambient_dim;
        auto addv = [&](const std::string& p) {
            for (int k = 0; k < d; ++k) t.columns.push_back(p + (k < 4 ? ax[k] : std::to_string(k + 1)));
        };
        t.columns = {"s"};
        addv("");
        addv("t");
        for (std::size_t k = 0; k < rm.m(); ++k) addv("n" + std::to_string(k + 1));
        for (std::size_t k = 0; k < rm.m(); ++k) t.columns.push_back("kappa" + std::to_string(k + 1));
        for (std::size_t i = 0; i < rm.size(); ++i) {
            std::vector<double> r{rm.s[i]};
            auto pushv = [&](const Vec& v) { r.insert(r.end(), v.data(), v.data() + v.size()); };
            pushv(rm.points[i]);
            pushv(rm.t[i]);
            for (std::size_t k = 0; k < rm.m(); ++k) pushv(rm.normals[k][i]);
            for (std::size_t k = 0; k < rm.m(); ++k) r.push_back(rm.kappas[k][i]);
            t.rows.push_back(std::move(r));
        }
        sum["frame"] = "rm";
        sum["length"] = rm.s.back() - rm.s.front();
        if (c.closed && d == 3) {
            sum["holonomy"] = holonomy_angle(rm);
            sum["total_torsion"] = total_torsion(c);
        }
    }
    emit_table(a.out, t);
    if (!a.summary.empty()) emit_json(a.summary, sum);
}

// ---- classify ----

struct ClassifyArgs {
    std::string input, space = "euclid", out = "-";
};

json classify_euclid(const SampledCurve& c) {
    const auto d1 = point_derivative(c, 1);
    const RMFrameData rm = rm_double_reflection(c, generic_normal(d1[0] / d1[0].norm()));
    json j;
    j["space"] = "euclid";
    NormalDevelopment nd;
    try {
        nd = normal_development(rm);
    } catch (const GeometryError& e) {
        if (e.code() != ErrorCode::DegenerateFit) throw;
        j["kind"] = "line";
        return j;
    }
    j["fit_kind"] = fit_kind_name(nd.fit_kind);
    j["fit_residual"] = nd.fit_residual;
    if (nd.spherical()) {
        const auto P = sphere_centers(rm, nd);
        Vec mean = Vec::Zero(P[0].size());
        for (const auto& p : P) mean += p;
        mean /= static_cast<double>(P.size());
        j["kind"] = "sphere";
        j["radius"] = nd.radius();
        j["center"] = vec_json(mean);
        j["center_drift"] = drift(P);
    } else if (nd.fit_kind == FitKind::LineThroughOrigin) {
        j["kind"] = "plane";
    } else {
        j["kind"] = "none";
    }
    return j;
}

json classify_lorentz(const SampledCurve& c) {
    const LorentzRMData rm = lorentz_rm_frame(c);
    const LorentzSphere ls = lorentz_sphere_membership(rm);
    json j;
    j["space"] = "lorentz";
    j["causal_character"] = causal_name(rm.character);
    j["kind"] = lorentz_sphere_name(ls.kind);
    j["radius"] = ls.radius;
    j["center"] = vec_json(ls.center);
    j["a1"] = ls.a1;
    j["a2"] = ls.a2;
    j["fit_residual"] = ls.fit_residual;
    j["center_drift"] = ls.center_drift;
    return j;
}

json classify_isotropic(const SampledCurve& c) {
    const IsoFrameData iso = iso_apparatus(c);
    const IsoSphere is = iso_sphere_classify(iso);
    json j;
    j["space"] = "isotropic";
    j["kind"] = iso_sphere_name(is.kind);
    j["radius"] = is.radius;
    if (is.line_normal.size()) j["line_normal"] = vec_json(is.line_normal);
    j["line_distance"] = is.line_distance;
    j["kappa_spread"] = is.kappa_spread;
    j["fit_residual"] = is.fit_residual;
    return j;
}

json classify_form(const SampledCurve& c, FormKind kind, double r) {
    const SpaceForm form{kind, r, c.ambient_dim - 1};
    const ManifoldRMData rm = manifold_rm_frame(form, c);
    json j;
    j["space"] = kind == FormKind::Sphere ? "sphere" : "hyperbolic";
    j["r"] = r;
    try {
        const GeodesicSphereResult g = geodesic_sphere_test(rm);
        j["on_geodesic_sphere"] = g.on_sphere;
        j["fit_residual"] = g.fit_residual;
        if (g.on_sphere) {
            j["kind"] = "geodesic_sphere";
            j["z0"] = g.z0;
            j["center"] = vec_json(g.center);
            j["C"] = g.C;
            j["center_drift"] = g.center_drift;
        }
        if (!g.reason.empty()) j["reason"] = g.reason;
    } catch (const GeometryError& e) {
        if (e.code() != ErrorCode::NoFit) throw;
        j["on_geodesic_sphere"] = false;
        j["reason"] = e.what();
    }
    const TotallyGeodesicResult tg = totally_geodesic_test(rm);
    j["totally_geodesic"] = tg.plane;
    j["plane_fit_residual"] = tg.fit_residual;
    if (tg.plane) {
        j["kind"] = "totally_geodesic";
        j["degenerate"] = tg.degenerate;
        if (!tg.degenerate) j["direction"] = vec_json(tg.direction);
    }
    if (!j.contains("kind")) j["kind"] = "none";
    return j;
}

void run_classify(const ClassifyArgs& a) {
    const SampledCurve c = read_curve_file(a.input);
    json j;
    if (a.space == "euclid") {
        j = classify_euclid(c);
    } else if (a.space == "lorentz") {
        j = classify_lorentz(c);
    } else if (a.space == "isotropic") {
        j = classify_isotropic(c);
    } else {
        const auto colon = a.space.find(':');
        const std::string tag = a.space.substr(0, colon);
        if (colon == std::string::npos || (tag != "sphere" && tag != "hyperbolic"))
            fail(ErrorCode::InvalidArgument, "unknown space '" + a.space + "'");
        double r = 0;
        try {
            r = std::stod(a.space.substr(colon + 1));
        } catch (const std::exception&) {
            fail(ErrorCode::InvalidArgument, "bad radius in '" + a.space + "'");
        }
        if (!(r > 0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
        j = classify_form(c, tag == "sphere" ? FormKind::Sphere : FormKind::Hyperbolic, r);
    }
    emit_json(a.out, j);
}

// ---- tube ----

struct TubeArgs {
    std::string input, frame = "frenet", out = "-", critical;
    double r = 0.1;
    std::size_t n_phi = 64, stride = 1;
};

void run_tube(const TubeArgs& a) {
    const SampledCurve c = read_curve_file(a.input);
    if (a.frame != "frenet" && a.frame != "rm") fail(ErrorCode::InvalidArgument, "--frame must be frenet or rm");
    const TubeGeometry T = tube_geometry(c, a.r, a.frame == "rm" ? FrameKind::RM : FrameKind::Frenet, a.n_phi);
    Table t;
    t.columns = {"s", "phi", "x", "y", "z", "K", "H", "vgip"};
    const auto ns = static_cast<Eigen::Index>(T.s.size());
    for (Eigen::Index i = 0; i < ns; i += static_cast<Eigen::Index>(a.stride))
        for (std::size_t j = 0; j < T.phi.size(); ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            std::vector<double> r{T.s[i], T.phi[j]};
            push3(r, tube_point(T, static_cast<std::size_t>(i), T.phi[j]));
            r.insert(r.end(), {T.K(i, jj), T.H(i, jj), T.Vgip(i, jj)});
            t.rows.push_back(std::move(r));
        }
    emit_table(a.out, t);
    if (!a.critical.empty()) {
        const TubeGeometry F = a.frame == "rm" ? tube_geometry(c, a.r, FrameKind::Frenet, a.n_phi) : T;
        json pts = json::array();
        for (const auto& p : vgip_critical_points(F))
            pts.push_back({{"s", p.s}, {"phi", p.phi}, {"class", critical_class_name(p.cls)},
                           {"kappa", interp(F.s, F.kappa, p.s)}});
        json j;
        j["r"] = a.r;
        j["vgip_min"] = T.Vgip.minCoeff();
        j["vgip_max"] = T.Vgip.maxCoeff();
        j["critical_points"] = pts;
        emit_json(a.critical, j);
    }
}

// ---- prescribe ----

struct PrescribeArgs {
    std::string surface, out = "-", mesh;
    std::size_t n = 2001, nv = 41;
    double v0 = 0, v1 = 2 * kPi;
    // cylindrical: H(s) = h0 + h1 sin(freq s)
    double h0 = 0.5, h1 = 0, freq = 1, length = 6;
    std::vector<double> dir{0, 0, 1};
    // revolution: U(rho) = u0 + u1 rho
    double u0 = 0, u1 = 0, a1 = 0.5, a2 = 0, rho0 = 0.2, rho1 = 1.8;
    // bour: U^2 = c0 + c1 xi + c2 xi^2
    double c0 = 1, c1 = 0, c2 = 1, omega = 1, a = 1, xi0 = 0.2, xi1 = 2;
    double omega0 = 3, omega1 = 0.5;
    int sign = 1;
};

void run_prescribe(const PrescribeArgs& a) {
    InvariantSurface s;
    if (a.surface == "cylindrical") {
        s = cylindrical_from_mean_curvature([&](double x) { return a.h0 + a.h1 * std::sin(a.freq * x); },
                                            Vec3(a.dir[0], a.dir[1], a.dir[2]), a.length, a.n);
    } else if (a.surface == "revolution") {
        s = revolution_from_U([&](double rho) { return a.u0 + a.u1 * rho; }, a.a1, a.a2, a.rho0, a.rho1, a.n, a.sign);
    } else if (a.surface == "bour") {
        auto U2 = [&](double xi) { return a.c0 + a.c1 * xi + a.c2 * xi * xi; };
        for (double xi : linspace(a.xi0, a.xi1, a.n))
            if (!(U2(xi) > 0)) fail(ErrorCode::InvalidRange, "U^2 must stay positive on [xi0, xi1]");
        s = bour_surface([&](double xi) { return std::sqrt(U2(xi)); }, a.omega, a.a, a.xi0, a.xi1, a.n, a.sign);
    } else if (a.surface == "minimal-helicoidal") {
        s = minimal_helicoidal_family(a.omega, a.omega0, a.omega1, a.xi0, a.xi1, a.n).surface;
    } else {
        fail(ErrorCode::InvalidArgument, "unknown surface '" + a.surface + "'");
    }
    Table t;
    t.columns = {"u", "f", "H", "K"};
    const bool has_profile = !s.rho.empty();
    const bool helicoidal = s.kind == SurfaceKind::Helicoidal;
    if (s.kind == SurfaceKind::Cylindrical) t.columns.insert(t.columns.end(), {"x", "y"});
    if (has_profile) t.columns.insert(t.columns.end(), {"rho", "lambda"});
    if (helicoidal) t.columns.insert(t.columns.end(), {"U", "Phi"});
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        std::vector<double> r{s.u[i], s.f[i], s.H[i], s.K[i]};
        if (s.kind == SurfaceKind::Cylindrical) r.insert(r.end(), {s.section.points[i](0), s.section.points[i](1)});
        if (has_profile) r.insert(r.end(), {s.rho[i], s.lambda[i]});
        if (helicoidal) r.insert(r.end(), {s.U[i], s.Phi[i]});
        t.rows.push_back(std::move(r));
    }
    emit_table(a.out, t);
    if (!a.mesh.empty()) {
        Table m;
        m.columns = {"u", "v", "x", "y", "z"};
        const auto vs = linspace(a.v0, a.v1, a.nv);
        for (std::size_t i = 0; i < s.u.size(); ++i)
            for (double v : vs) {
                std::vector<double> r{s.u[i], v};
                push3(r, s.point(i, v));
                m.rows.push_back(std::move(r));
            }
        emit_table(a.mesh, m);
    }
}

// ---- spectrum ----

struct SpectrumArgs {
    std::string surface, bc = "dirichlet", prefix = "spectrum";
    double L = 1, omega = 1, omega0 = 1, omega1 = 0, half_width = 0, energy_scale = 1;
    int m_chi = 0, n_states = 3, n_grid = 2000;
};

void run_spectrum(const SpectrumArgs& a) {
    if (a.bc != "dirichlet" && a.bc != "periodic") fail(ErrorCode::InvalidArgument, "--bc must be dirichlet or periodic");
    SeparatedProblem p;
    json sum;
    sum["surface"] = a.surface;
    if (a.surface == "pib") {
        p.u = {0, a.L};
        p.Ueff_fn = [](double) { return 0.0; };
        sum["L"] = a.L;
    } else if (a.surface == "helicoid" || a.surface == "minimal-helicoidal") {
        const MinimalHelicoidal fam = a.surface == "helicoid" ? MinimalHelicoidal{a.omega, 1, 0}
                                                              : MinimalHelicoidal{a.omega, a.omega0, a.omega1};
        const double L = a.half_width > 0 ? a.half_width : 40 / a.omega;
        const double c = -fam.omega1 / fam.omega;
        p = helicoidal_minimal_veff(fam, a.m_chi, c - L, c + L);
        sum["omega"] = fam.omega;
        sum["omega0"] = fam.omega0;
        sum["omega1"] = fam.omega1;
        sum["b"] = fam.b();
        sum["m_chi"] = a.m_chi;
        sum["half_width"] = L;
        if (a.bc == "dirichlet") {
            const BoundStateResult bs = bound_state_search(p, L, a.n_grid);
            sum["bound"] = bs.bound;
            sum["ground_energy_doubled_window"] = a.energy_scale * bs.E0_doubled;
        }
    } else {
        fail(ErrorCode::InvalidArgument, "unknown surface '" + a.surface + "'");
    }
    p.bc = a.bc == "periodic" ? Boundary::Periodic : Boundary::Dirichlet;
    const Spectrum sp = solve_1d(p, a.n_states, a.n_grid);

    Table e;
    e.columns = {"n", "energy"};
    for (int k = 0; k < a.n_states; ++k) e.rows.push_back({double(k + 1), a.energy_scale * sp.energies[k]});
    emit_table(a.prefix + "_energies.csv", e);

    Table w;
    w.columns = {"x"};
    for (int k = 0; k < a.n_states; ++k) w.columns.push_back("psi" + std::to_string(k + 1));
    Table v;
    v.columns = {"x", "veff"};
    for (std::size_t i = 0; i < sp.grid.size(); ++i) {
        const double x = sp.grid[i];
        std::vector<double> r{x};
        for (int k = 0; k < a.n_states; ++k) r.push_back(sp.wavefunctions[k][i]);
        w.rows.push_back(std::move(r));
        const double f = p.f_at(x);
        v.rows.push_back({x, a.energy_scale * (-p.ueff_at(x) + p.lambda / (f * f))});
    }
    emit_table(a.prefix + "_wavefunctions.csv", w);
    emit_table(a.prefix + "_veff.csv", v);

    sum["boundary"] = boundary_name(p.bc);
    sum["n_grid"] = a.n_grid;
    sum["energy_scale"] = a.energy_scale;
    json es = json::array();
    for (double x : sp.energies) es.push_back(a.energy_scale * x);
    sum["energies"] = es;
    sum["ground_energy"] = es[0];
    emit_json(a.prefix + "_summary.json", sum);
}

// ---- phase ----

struct PhaseArgs {
    std::string input, out = "-", csv;
    double r = 0;
    int ell = 1, n = 1, n_grid = 2000;
};

void run_phase(const PhaseArgs& a) {
    const SampledCurve c = read_curve_file(a.input);
    json j;
    const double gp = geometric_phase(c);
    j["closed"] = c.closed;
    j["geometric_phase"] = gp;
    if (c.closed && c.ambient_dim == 3) {
        const auto d1 = point_derivative(c, 1);
        const RMFrameData rm = rm_double_reflection(c, generic_normal(d1[0] / d1[0].norm()));
        j["holonomy"] = holonomy_angle(rm);
        j["wrapped_phase"] = wrap_angle(gp);
    }
    if (a.r > 0) {
        const ThinTubeState st = thin_tube_spectrum(c, a.r, a.ell, a.n, a.n_grid);
        j["thin_tube"] = {{"r", a.r},
                          {"ell", a.ell},
                          {"n", a.n},
                          {"energy", st.energy},
                          {"longitudinal_energy", st.En},
                          {"accumulated_phase", st.accumulated_phase}};
        if (!a.csv.empty()) {
            Table t;
            t.columns = {"s", "theta", "phase_re", "phase_im"};
            for (std::size_t i = 0; i < st.s.size(); ++i)
                t.rows.push_back({st.s[i], st.theta[i], st.phase[i].real(), st.phase[i].imag()});
            emit_table(a.csv, t);
        }
    }
    emit_json(a.out, j);
}

// ---- config ----

std::string json_scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt17(v.get<double>());
    return v.dump();
}

// Config keys become flags placed right after the subcommand name, so
// anything given on the command line comes later and wins.
std::vector<std::string> expand_config(std::vector<std::string> args, const std::vector<std::string>& commands) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open config " + path);
    const json cfg = json::parse(in);
    if (!cfg.is_object()) fail(ErrorCode::InvalidArgument, "config must be a JSON object");
    std::vector<std::string> extra;
    for (const auto& [k0, v] : cfg.items()) {
        std::string k = k0;
        std::replace(k.begin(), k.end(), '_', '-');
        if (v.is_boolean()) {
            if (v.get<bool>()) extra.push_back("--" + k);
        } else if (v.is_array()) {
            extra.push_back("--" + k);
            for (const auto& x : v) extra.push_back(json_scalar(x));
        } else if (!v.is_null()) {
            extra.push_back("--" + k);
            extra.push_back(json_scalar(v));
        }
    }
    std::size_t at = 0;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (std::find(commands.begin(), commands.end(), args[i]) != commands.end()) {
            at = i + 1;
            break;
        }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curves, frames and geometry-induced quantum potentials"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", "curvegeom 1.0");
    std::string config_path;
    app.add_option("--config", config_path, "JSON file whose keys act as flags (flags given here win)");

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "Write a test curve as CSV");
    sample->add_option("curve", sa.curve, "helix | circle | spherical | knot | geodesic-circle")->required();
    sample->add_option("-o,--out", sa.out, "Output CSV");
    sample->add_option("--radius", sa.radius)->check(CLI::PositiveNumber);
    sample->add_option("--pitch", sa.pitch);
    sample->add_option("--t1", sa.t1, "Helix parameter range [0, t1]")->check(CLI::PositiveNumber);
    sample->add_option("--amp", sa.amp, "Latitude wave amplitude");
    sample->add_option("--z0", sa.z0, "Geodesic radius")->check(CLI::PositiveNumber);
    sample->add_option("--form", sa.form, "sphere | hyperbolic");
    sample->add_option("-n,--samples", sa.n)->check(CLI::Range(8, 10000000));

    FramesArgs fa;
    auto* frames = app.add_subcommand("frames", "Frenet or rotation-minimizing frame along a curve");
    frames->add_option("input", fa.input, "Curve CSV (s|u,x,y[,z...])")->required();
    frames->add_option("-o,--out", fa.out, "Frame CSV");
    frames->add_flag("--rm", fa.rm, "Rotation-minimizing frame by double reflection");
    frames->add_option("--summary", fa.summary, "Summary JSON (holonomy, total torsion)");

    ClassifyArgs ca;
    auto* classify = app.add_subcommand("classify", "Spherical / planar verdict for a curve");
    classify->add_option("input", ca.input, "Curve CSV")->required();
    classify->add_option("--space", ca.space, "euclid | lorentz | isotropic | sphere:r | hyperbolic:r");
    classify->add_option("-o,--out", ca.out, "Verdict JSON");

    TubeArgs ta;
    auto* tube = app.add_subcommand("tube", "Tube curvatures and geometry-induced potential");
    tube->add_option("input", ta.input, "Centerline CSV")->required();
    tube->add_option("-r,--radius", ta.r)->check(CLI::PositiveNumber);
    tube->add_option("--frame", ta.frame, "frenet | rm");
    tube->add_option("--n-phi", ta.n_phi)->check(CLI::Range(8, 100000));
    tube->add_option("--stride", ta.stride, "Write every k-th centerline sample")->check(CLI::PositiveNumber);
    tube->add_option("-o,--out", ta.out, "Grid CSV");
    tube->add_option("--critical", ta.critical, "Critical points JSON");

    PrescribeArgs pa;
    auto* prescribe = app.add_subcommand("prescribe", "Invariant surface from a prescribed curvature datum");
    prescribe->add_option("surface", pa.surface, "cylindrical | revolution | bour | minimal-helicoidal")->required();
    prescribe->add_option("-o,--out", pa.out, "Profile CSV");
    prescribe->add_option("--mesh", pa.mesh, "Embedded mesh CSV");
    prescribe->add_option("-n,--samples", pa.n)->check(CLI::Range(8, 10000000));
    prescribe->add_option("--nv", pa.nv, "Mesh samples across")->check(CLI::Range(2, 100000));
    prescribe->add_option("--v0", pa.v0);
    prescribe->add_option("--v1", pa.v1);
    prescribe->add_option("--h0", pa.h0, "cylindrical: H(s) = h0 + h1 sin(freq s)");
    prescribe->add_option("--h1", pa.h1);
    prescribe->add_option("--freq", pa.freq);
    prescribe->add_option("--length", pa.length)->check(CLI::PositiveNumber);
    prescribe->add_option("--dir", pa.dir, "cylindrical: translation direction")->expected(3);
    prescribe->add_option("--u0", pa.u0, "revolution: U(rho) = u0 + u1 rho");
    prescribe->add_option("--u1", pa.u1);
    prescribe->add_option("--a1", pa.a1);
    prescribe->add_option("--a2", pa.a2);
    prescribe->add_option("--rho0", pa.rho0)->check(CLI::PositiveNumber);
    prescribe->add_option("--rho1", pa.rho1)->check(CLI::PositiveNumber);
    prescribe->add_option("--c0", pa.c0, "bour: U^2 = c0 + c1 xi + c2 xi^2");
    prescribe->add_option("--c1", pa.c1);
    prescribe->add_option("--c2", pa.c2);
    prescribe->add_option("--omega", pa.omega);
    prescribe->add_option("--a", pa.a, "bour: helicoidal pitch");
    prescribe->add_option("--omega0", pa.omega0);
    prescribe->add_option("--omega1", pa.omega1);
    prescribe->add_option("--xi0", pa.xi0);
    prescribe->add_option("--xi1", pa.xi1);
    prescribe->add_option("--sign", pa.sign, "Branch of the profile integral")->check(CLI::IsMember({-1, 1}));

    SpectrumArgs pr;
    auto* spectrum = app.add_subcommand("spectrum", "Separated 1D Schrodinger spectrum");
    spectrum->add_option("surface", pr.surface, "pib | helicoid | minimal-helicoidal")->required();
    spectrum->add_option("--L", pr.L, "pib: box length")->check(CLI::PositiveNumber);
    spectrum->add_option("--bc", pr.bc, "dirichlet | periodic");
    spectrum->add_option("--omega", pr.omega)->check(CLI::PositiveNumber);
    spectrum->add_option("--omega0", pr.omega0);
    spectrum->add_option("--omega1", pr.omega1);
    spectrum->add_option("--m-chi", pr.m_chi);
    spectrum->add_option("--half-width", pr.half_width, "Truncated domain half width (default 40/omega)");
    spectrum->add_option("--n-states", pr.n_states)->check(CLI::PositiveNumber);
    spectrum->add_option("--n-grid", pr.n_grid)->check(CLI::Range(200, 100000));
    spectrum->add_option("--energy-scale", pr.energy_scale, "Multiplies energies and V_eff (physical units)");
    spectrum->add_option("--prefix", pr.prefix, "Output path prefix");

    PhaseArgs ph;
    auto* phase = app.add_subcommand("phase", "Geometric phase and thin-tube states");
    phase->add_option("input", ph.input, "Curve CSV")->required();
    phase->add_option("-o,--out", ph.out, "Summary JSON");
    phase->add_option("-r,--radius", ph.r, "Tube radius; enables the thin-tube state")->check(CLI::NonNegativeNumber);
    phase->add_option("--ell", ph.ell);
    phase->add_option("--n", ph.n)->check(CLI::PositiveNumber);
    phase->add_option("--n-grid", ph.n_grid)->check(CLI::Range(200, 100000));
    phase->add_option("--csv", ph.csv, "theta(s) and phase factor CSV");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        std::vector<std::string> names;
        for (const auto* s : app.get_subcommands({})) names.push_back(s->get_name());
        args = expand_config(std::move(args), names);
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (*sample) run_sample(sa);
        else if (*frames) run_frames(fa);
        else if (*classify) run_classify(ca);
        else if (*tube) run_tube(ta);
        else if (*prescribe) run_prescribe(pa);
        else if (*spectrum) run_spectrum(pr);
        else if (*phase) run_phase(ph);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return 2;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_input_error(e.code()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
