#include "curvegeom/numerics.hpp"
#include "curvegeom/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cg {

std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

Stencil make_stencil(const std::vector<double>& x, std::size_t i, int order, bool periodic, int width) {
    const std::size_t n = x.size();
    Stencil st;
    std::vector<double> nodes;
    if (periodic) {
        const long m = static_cast<long>(n) - 1;
        const double period = x[n - 1] - x[0];
        const long half = width / 2;
        for (long k = -half; k <= half; ++k) {
            long j = static_cast<long>(i) + k;
            long wraps = (j >= 0) ? j / m : -((-j + m - 1) / m);
            long jj = j - wraps * m;
            st.idx.push_back(static_cast<std::size_t>(jj));
            nodes.push_back(x[jj] + wraps * period);
        }
    } else {
        const std::size_t w = std::min<std::size_t>(width, n);
        long start = static_cast<long>(i) - static_cast<long>(w / 2);
        start = std::clamp<long>(start, 0, static_cast<long>(n - w));
        for (std::size_t k = 0; k < w; ++k) {
            st.idx.push_back(start + k);
            nodes.push_back(x[start + k]);
        }
    }
    auto c = fd_weights(x[i], nodes, order);
    st.w = c[order];
    return st;
}

namespace {

double lagrange(const double* xs, const double* fs, int m, double z) {
    double acc = 0;
    for (int j = 0; j < m; ++j) {
        double l = 1;
        for (int k = 0; k < m; ++k)
            if (k != j) l *= (z - xs[k]) / (xs[j] - xs[k]);
        acc += l * fs[j];
    }
    return acc;
}

} // namespace

std::vector<double> cumulative_integral(const std::vector<double>& x, const std::vector<double>& f) {
    const std::size_t n = x.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n < 4) {
        for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
        return out;
    }
    // three-point Gauss-Legendre is exact for the local cubic
    static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        long s = std::clamp<long>(static_cast<long>(i) - 1, 0, static_cast<long>(n) - 4);
        const double a = x[i], b = x[i + 1];
        double acc = 0;
        for (int q = 0; q < 3; ++q) {
            double z = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
            acc += gw[q] * lagrange(&x[s], &f[s], 4, z);
        }
        out[i + 1] = out[i] + 0.5 * (b - a) * acc;
    }
    return out;
}

double integral(const std::vector<double>& x, const std::vector<double>& f) {
    if (x.size() < 2) return 0.0;
    return cumulative_integral(x, f).back();
}

double periodic_integral(const std::vector<double>& x, const std::vector<double>& f) {
    double acc = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) acc += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return acc;
}

double simpson(const std::vector<double>& x, const std::vector<double>& f) {
    const std::size_t n = x.size();
    if (n < 3) return periodic_integral(x, f);
    const double h = (x[n - 1] - x[0]) / static_cast<double>(n - 1);
    std::size_t m = (n % 2 == 1) ? n : n - 3;
    double acc = 0;
    if (m >= 3) {
        acc = f[0] + f[m - 1];
        for (std::size_t i = 1; i + 1 < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * f[i];
        acc *= h / 3.0;
    }
    if (m != n) {
        std::size_t k = n - 4;
        acc += 3.0 * h / 8.0 * (f[k] + 3 * f[k + 1] + 3 * f[k + 2] + f[k + 3]);
    }
    return acc;
}

double interp(const std::vector<double>& x, const std::vector<double>& f, double xq) {
    const std::size_t n = x.size();
    if (n == 1) return f[0];
    if (n < 4) {
        std::size_t i = std::upper_bound(x.begin(), x.end(), xq) - x.begin();
        i = std::clamp<std::size_t>(i, 1, n - 1);
        double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
        return (1 - t) * f[i - 1] + t * f[i];
    }
    long i = static_cast<long>(std::upper_bound(x.begin(), x.end(), xq) - x.begin()) - 1;
    long s = std::clamp<long>(i - 1, 0, static_cast<long>(n) - 4);
    return lagrange(&x[s], &f[s], 4, xq);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (n == 1) ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

namespace {

HyperplaneFit fit_common(const std::vector<Vec>& y, bool centered) {
    if (y.empty()) fail(ErrorCode::InvalidArgument, "no samples to fit");
    const Eigen::Index m = y[0].size();
    const double N = static_cast<double>(y.size());
    HyperplaneFit fit;
    fit.centroid = Vec::Zero(m);
    double norm2 = 0;
    for (const auto& v : y) {
        fit.centroid += v;
        norm2 += v.squaredNorm();
    }
    fit.centroid /= N;
    fit.rms_norm = std::sqrt(norm2 / N);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m), S = Eigen::MatrixXd::Zero(m, m);
    for (const auto& v : y) {
        Vec d = v - fit.centroid;
        S += d * d.transpose();
        if (centered)
            C += d * d.transpose();
        else
            C += v * v.transpose();
    }
    C /= N;
    S /= N;
    fit.spread = std::sqrt(std::max(0.0, S.trace()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    fit.normal = es.eigenvectors().col(0);
    fit.residual = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
    fit.offset = centered ? fit.normal.dot(fit.centroid) : 0.0;
    if (fit.offset < 0) {
        fit.normal = -fit.normal;
        fit.offset = -fit.offset;
    }
    return fit;
}

} // namespace

HyperplaneFit fit_affine_hyperplane(const std::vector<Vec>& samples) { return fit_common(samples, true); }
HyperplaneFit fit_linear_hyperplane(const std::vector<Vec>& samples) { return fit_common(samples, false); }

namespace {

Vec mid_value(const std::vector<double>& s, const std::vector<Vec>& f, std::size_t i) {
    const std::size_t n = s.size();
    if (n < 4) return 0.5 * (f[i] + f[i + 1]);
    const long st = std::clamp<long>(static_cast<long>(i) - 1, 0, static_cast<long>(n) - 4);
    const double z = 0.5 * (s[i] + s[i + 1]);
    Vec acc = Vec::Zero(f[i].size());
    for (int j = 0; j < 4; ++j) {
        double l = 1;
        for (int k = 0; k < 4; ++k)
            if (k != j) l *= (z - s[st + k]) / (s[st + j] - s[st + k]);
        acc += l * f[st + j];
    }
    return acc;
}

void clean_normals(std::vector<Vec>& ns, const Vec& t, const Vec* q, const Vec& g) {
    auto project = [&](Vec& n, const Vec& u) { n -= (mdot(n, u, g) / mdot(u, u, g)) * u; };
    for (std::size_t k = 0; k < ns.size(); ++k) {
        project(ns[k], t);
        if (q) project(ns[k], *q);
        for (std::size_t j = 0; j < k; ++j) project(ns[k], ns[j]);
        ns[k] /= std::sqrt(std::abs(mdot(ns[k], ns[k], g)));
    }
}

} // namespace

std::vector<std::vector<Vec>> transport_normals(const std::vector<double>& s, const std::vector<Vec>& t,
                                                const std::vector<Vec>& tp, const Vec& g,
                                                const std::vector<Vec>& init, const std::vector<Vec>* q) {
    const std::size_t N = s.size(), m = init.size();
    std::vector<std::vector<Vec>> out(m, std::vector<Vec>(N));
    std::vector<Vec> cur = init;
    clean_normals(cur, t[0], q ? &(*q)[0] : nullptr, g);
    for (std::size_t k = 0; k < m; ++k) out[k][0] = cur[k];
    for (std::size_t i = 0; i + 1 < N; ++i) {
        const double h = s[i + 1] - s[i];
        const Vec tm = mid_value(s, t, i), tpm = mid_value(s, tp, i);
        auto rhs = [&](const Vec& n, const Vec& tt, const Vec& ttp) {
            return Vec(-(mdot(n, ttp, g) / mdot(tt, tt, g)) * tt);
        };
        for (std::size_t k = 0; k < m; ++k) {
            const Vec& n = cur[k];
            const Vec k1 = rhs(n, t[i], tp[i]);
            const Vec k2 = rhs(n + 0.5 * h * k1, tm, tpm);
            const Vec k3 = rhs(n + 0.5 * h * k2, tm, tpm);
            const Vec k4 = rhs(n + h * k3, t[i + 1], tp[i + 1]);
            cur[k] = n + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        }
        clean_normals(cur, t[i + 1], q ? &(*q)[i + 1] : nullptr, g);
        for (std::size_t k = 0; k < m; ++k) out[k][i + 1] = cur[k];
    }
    return out;
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double rms(const std::vector<double>& v) {
    if (v.empty()) return 0;
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    const double mu = mean(v);
    double s = 0;
    for (double x : v) s += (x - mu) * (x - mu);
    return v.empty() ? 0 : std::sqrt(s / static_cast<double>(v.size()));
}

const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::NotSpherical: return "NotSpherical";
    case ErrorCode::UndefinedFrame: return "UndefinedFrame";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::MixedCausalCharacter: return "MixedCausalCharacter";
    case ErrorCode::MixedNormalCharacter: return "MixedNormalCharacter";
    case ErrorCode::DegenerateLightlike: return "DegenerateLightlike";
    case ErrorCode::LightlikeUnsupported: return "LightlikeUnsupported";
    case ErrorCode::HyperbolicOverflow: return "HyperbolicOverflow";
    case ErrorCode::NoLineFit: return "NoLineFit";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::UnsupportedSignature: return "UnsupportedSignature";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::NoFit: return "NoFit";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::ZeroTorsion: return "ZeroTorsion";
    case ErrorCode::TubeTooFat: return "TubeTooFat";
    case ErrorCode::SingularCenterline: return "SingularCenterline";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::BourDomainViolation: return "BourDomainViolation";
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NotThin: return "NotThin";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidCurve:
    case ErrorCode::InvalidFrame:
    case ErrorCode::InvalidRange:
    case ErrorCode::NotClosed:
    case ErrorCode::DegenerateDirection:
    case ErrorCode::InvalidFamily:
    case ErrorCode::GridTooCoarse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotTangent:
    case ErrorCode::NotThin:
        return true;
    default:
        return false;
    }
}

} // namespace cg
