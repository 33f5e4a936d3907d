#include "curvegeom/csv_io.hpp"
#include "curvegeom/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace cg {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split_csv_record(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

} // namespace

Table parse_table(std::istream& in, const std::string& source) {
    Table t;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || line[0] == '#') continue;
        auto fields = split_csv_record(line);
        if (!have_header) {
            for (auto& f : fields) t.columns.push_back(trim(f));
            have_header = true;
            continue;
        }
        if (fields.size() != t.columns.size())
            throw ParseError(source, lineno,
                             "expected " + std::to_string(t.columns.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        std::vector<double> row;
        for (const auto& f0 : fields) {
            const std::string f = trim(f0);
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(f.c_str(), &end);
            if (f.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
                throw ParseError(source, lineno, "not a finite number: '" + f + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
        t.lines.push_back(lineno);
    }
    if (!have_header) throw ParseError(source, lineno, "missing header row");
    return t;
}

void write_table(std::ostream& out, const Table& t) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << csv_field(t.columns[j]);
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << fmt17(r[j]);
        out << '\n';
    }
}

SampledCurve parse_curve(std::istream& in, const std::string& source) {
    const Table t = parse_table(in, source);
    if (t.columns.size() < 3 || (t.columns[0] != "s" && t.columns[0] != "u"))
        throw ParseError(source, 1, "header must be s,x,y[,z...] or u,x,y[,z...]");
    if (t.rows.size() < 8) throw ParseError(source, 1, "need at least 8 samples");
    std::vector<double> params;
    std::vector<Vec> pts;
    const auto dim = static_cast<Eigen::Index>(t.columns.size() - 1);
    for (const auto& r : t.rows) {
        params.push_back(r[0]);
        Vec p(dim);
        for (Eigen::Index k = 0; k < dim; ++k) p(k) = r[static_cast<std::size_t>(k) + 1];
        pts.push_back(p);
    }
    for (std::size_t i = 1; i < params.size(); ++i)
        if (!(params[i] > params[i - 1])) throw ParseError(source, t.lines[i], "parameter must increase strictly");
    double scale = 1;
    for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    const bool closed = (pts.front() - pts.back()).norm() <= 1e-9 * scale;
    return make_curve(std::move(params), std::move(pts), closed);
}

SampledCurve read_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
    return parse_curve(in, path);
}

void write_curve(std::ostream& out, const SampledCurve& c, const std::string& param) {
    static const char* names[] = {"x", "y", "z", "w"};
    Table t;
    t.columns.push_back(param);
    for (int k = 0; k < c.ambient_dim; ++k) t.columns.push_back(k < 4 ? names[k] : "x" + std::to_string(k + 1));
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::vector<double> r{c.params[i]};
        for (int k = 0; k < c.ambient_dim; ++k) r.push_back(c.points[i](k));
        t.rows.push_back(std::move(r));
    }
    write_table(out, t);
}

} // namespace cg
