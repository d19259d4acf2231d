// io.cpp — CSV and JSON serialization of series, sweep rows and grids

#include "tfd/cli.hpp"

#include "tfd/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace tfd::cli {

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string quote_csv(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += (ch == '\n' || ch == '\r') ? ' ' : ch;
    }
    return q + '"';
}

double parse_double(const std::string& text, int line_no)
{
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError("line " + std::to_string(line_no) + ": invalid number '" + text + "'");
    }
    return v;
}

void expect_header(std::istream& in, std::string_view header)
{
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw ParameterError("expected CSV header '" + std::string(header) + "'");
    }
}

nlohmann::json number_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

} // namespace

std::string format_double(double value)
{
    if (std::isnan(value)) return "nan";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

void write_series_csv(std::ostream& out, const std::vector<ComplexitySample>& samples)
{
    out << kSeriesHeader << '\n';
    for (const ComplexitySample& s : samples) {
        out << format_double(s.t) << ',' << format_double(s.c) << ',' << format_double(s.cdot) << '\n';
    }
}

std::vector<ComplexitySample> read_series_csv(std::istream& in)
{
    expect_header(in, kSeriesHeader);
    std::vector<ComplexitySample> samples;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3) throw ParameterError("line " + std::to_string(line_no) + ": expected 3 fields");
        samples.push_back({parse_double(f[0], line_no), parse_double(f[1], line_no), parse_double(f[2], line_no)});
    }
    return samples;
}

void write_series_json(std::ostream& out, const std::vector<ComplexitySample>& samples)
{
    nlohmann::json t = nlohmann::json::array();
    nlohmann::json c = nlohmann::json::array();
    nlohmann::json cdot = nlohmann::json::array();
    for (const ComplexitySample& s : samples) {
        t.push_back(s.t);
        c.push_back(s.c);
        cdot.push_back(s.cdot);
    }
    nlohmann::json doc;
    doc["t"] = std::move(t);
    doc["C"] = std::move(c);
    doc["Cdot"] = std::move(cdot);
    out << doc.dump() << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& rows)
{
    out << kSweepHeader << '\n';
    for (const SweepPoint& r : rows) {
        out << format_double(r.beta) << ',' << format_double(r.omega0) << ',' << format_double(r.omegaC) << ','
            << format_double(r.omegaR1) << ',' << format_double(r.omegaR2) << ',' << format_double(r.cMax) << ','
            << format_double(r.rateMax) << ',' << format_double(r.internalEnergy) << ','
            << format_double(r.lloydRhs) << ',' << (r.lloydSatisfied ? "true" : "false") << ','
            << quote_csv(r.error) << '\n';
    }
}

std::vector<SweepPoint> read_sweep_csv(std::istream& in)
{
    expect_header(in, kSweepHeader);
    std::vector<SweepPoint> rows;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 11) throw ParameterError("line " + std::to_string(line_no) + ": expected 11 fields");
        SweepPoint r;
        double* numeric[] = {&r.beta, &r.omega0, &r.omegaC, &r.omegaR1, &r.omegaR2,
                             &r.cMax, &r.rateMax, &r.internalEnergy, &r.lloydRhs};
        for (std::size_t k = 0; k < 9; ++k) *numeric[k] = parse_double(f[k], line_no);
        if (f[9] != "true" && f[9] != "false") {
            throw ParameterError("line " + std::to_string(line_no) + ": lloydSatisfied must be true or false");
        }
        r.lloydSatisfied = f[9] == "true";
        r.error = f[10];
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_sweep_json(std::ostream& out, const std::vector<SweepPoint>& rows)
{
    nlohmann::json doc = nlohmann::json::array();
    for (const SweepPoint& r : rows) {
        doc.push_back({{"beta", r.beta},
                       {"omega0", r.omega0},
                       {"omegaC", r.omegaC},
                       {"omegaR1", r.omegaR1},
                       {"omegaR2", r.omegaR2},
                       {"cMax", number_or_null(r.cMax)},
                       {"rateMax", number_or_null(r.rateMax)},
                       {"internalEnergy", number_or_null(r.internalEnergy)},
                       {"lloydRhs", number_or_null(r.lloydRhs)},
                       {"lloydSatisfied", r.lloydSatisfied},
                       {"error", r.error}});
    }
    out << doc.dump(1) << '\n';
}

std::vector<GridPoint> read_grid_csv(std::istream& in)
{
    expect_header(in, "beta,omega0,omegaC");
    std::vector<GridPoint> grid;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3) throw ParameterError("line " + std::to_string(line_no) + ": expected beta,omega0,omegaC");
        grid.push_back({parse_double(f[0], line_no), parse_double(f[1], line_no), parse_double(f[2], line_no)});
    }
    return grid;
}

} // namespace tfd::cli
