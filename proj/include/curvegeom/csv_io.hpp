#pragma once

#include "curvegeom/curve_kernel.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace cg {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ": row " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// 17 significant digits, enough to round-trip a double.
std::string fmt17(double x);

// One CSV record, RFC 4180 quoting.
std::vector<std::string> split_csv_record(const std::string& line);
std::string csv_field(const std::string& s);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> lines;  // source line of each row
};

// Header row plus numeric rows. Errors name the 1-based line number.
Table parse_table(std::istream& in, const std::string& source);
void write_table(std::ostream& out, const Table& t);

// Columns s (or u) then coordinates. The curve is closed when the first and
// last points agree within 1e-9.
SampledCurve parse_curve(std::istream& in, const std::string& source);
SampledCurve read_curve_file(const std::string& path);
void write_curve(std::ostream& out, const SampledCurve& c, const std::string& param = "s");

} // namespace cg
