#include "waveframe/series.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace waveframe {

SampledSeries sample_series(const WaveformScenario& sc, double t0, double duration, double dt,
                            bool with_analytic) {
    if (!(duration > 0.0)) throw std::invalid_argument("sample_series: duration must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("sample_series: dt must be > 0");
    validate(sc);

    const std::size_t count = static_cast<std::size_t>(std::llround(duration / dt)) + 1;
    SampledSeries s;
    s.dt = dt;
    s.t0 = t0;
    s.dim = sc.n_phases;
    s.samples.reserve(count);
    for (std::size_t k = 0; k < count; ++k) s.samples.push_back(evaluate(sc, s.t(k), 0));
    if (with_analytic) {
        for (int order = 1; order <= 3; ++order) {
            auto& ch = s.deriv[static_cast<std::size_t>(order - 1)];
            ch.reserve(count);
            for (std::size_t k = 0; k < count; ++k) ch.push_back(evaluate(sc, s.t(k), order));
        }
    }
    return s;
}

SampledSeries differentiate(const SampledSeries& series, int order) {
    if (order < 1 || order > 3) throw std::invalid_argument("differentiate: order must be in 1..3");
    if (series.size() < 2 * static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("differentiate: series too short for order " + std::to_string(order) +
                                    " (need at least " + std::to_string(2 * order + 1) + " samples)");

    SampledSeries out;
    out.dt = series.dt;
    out.t0 = series.t0;
    out.dim = series.dim;
    out.margin = series.margin;
    out.samples = series.samples;
    const double inv2dt = 1.0 / (2.0 * series.dt);
    for (int pass = 0; pass < order; ++pass) {
        std::vector<Vec> next(out.samples.size(), Vec(out.dim));
        for (std::size_t k = 1; k + 1 < out.samples.size(); ++k)
            next[k] = inv2dt * (out.samples[k + 1] - out.samples[k - 1]);
        out.samples = std::move(next);
        ++out.margin;
    }
    return out;
}

SampledSeries with_fd_derivatives(const SampledSeries& series, int max_order) {
    if (max_order < 1 || max_order > 3)
        throw std::invalid_argument("with_fd_derivatives: max_order must be in 1..3");
    SampledSeries out = series;
    out.deriv = {};
    for (int order = 1; order <= max_order; ++order) {
        SampledSeries d = differentiate(series, order);
        out.margin = std::max(out.margin, d.margin);
        out.deriv[static_cast<std::size_t>(order - 1)] = std::move(d.samples);
    }
    return out;
}

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

double parse_field(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw std::runtime_error("csv: line " + std::to_string(line_no) + ": malformed number '" + field + "'");
    if (!std::isfinite(value))
        throw std::runtime_error("csv: line " + std::to_string(line_no) + ": non-finite value '" + field + "'");
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

SampledSeries read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "' for reading");

    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    bool header_seen = false;
    std::vector<double> times;
    std::vector<std::size_t> row_lines;
    std::vector<Vec> samples;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (!header_seen) {
            if (fields.size() < 3 || fields[0] != "t")
                throw std::runtime_error("csv: line " + std::to_string(line_no) +
                                         ": expected header t,v1,...,vn");
            for (std::size_t i = 1; i < fields.size(); ++i) {
                if (fields[i] != "v" + std::to_string(i))
                    throw std::runtime_error("csv: line " + std::to_string(line_no) +
                                             ": expected header t,v1,...,vn, got column '" + fields[i] + "'");
            }
            dim = fields.size() - 1;
            header_seen = true;
            continue;
        }
        if (fields.size() != dim + 1)
            throw std::runtime_error("csv: line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(dim + 1) + " fields, got " + std::to_string(fields.size()));
        times.push_back(parse_field(fields[0], line_no));
        row_lines.push_back(line_no);
        Vec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = parse_field(fields[i + 1], line_no);
        samples.push_back(std::move(v));
        if (times.size() >= 2 && !(times[times.size() - 1] > times[times.size() - 2]))
            throw std::runtime_error("csv: line " + std::to_string(line_no) + ": time not strictly increasing");
    }
    if (!header_seen) throw std::runtime_error("csv: '" + path + "' has no header line");
    if (samples.size() < 2) throw std::runtime_error("csv: '" + path + "' has fewer than 2 samples");

    const double dt = times[1] - times[0];
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double step = times[k] - times[k - 1];
        if (std::abs(step - dt) > 1e-9 * dt)
            throw std::runtime_error("csv: line " + std::to_string(row_lines[k]) +
                                     ": non-uniform time spacing (step " + format_double(step) +
                                     " vs dt " + format_double(dt) + ")");
    }

    SampledSeries s;
    s.dt = dt;
    s.t0 = times[0];
    s.dim = dim;
    s.samples = std::move(samples);
    return s;
}

void write_csv(const SampledSeries& series, const std::string& path, bool with_derivs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");

    const int max_order = with_derivs ? (series.has_deriv(3) ? 3 : series.has_deriv(2) ? 2 : series.has_deriv(1) ? 1 : 0) : 0;

    out << "t";
    for (std::size_t i = 1; i <= series.dim; ++i) out << ",v" << i;
    for (int order = 1; order <= max_order; ++order)
        for (std::size_t i = 1; i <= series.dim; ++i) out << ",d" << order << "_v" << i;
    out << "\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        out << format_double(series.t(k));
        for (std::size_t i = 0; i < series.dim; ++i) out << "," << format_double(series.samples[k][i]);
        for (int order = 1; order <= max_order; ++order) {
            const auto& ch = series.deriv[static_cast<std::size_t>(order - 1)];
            for (std::size_t i = 0; i < series.dim; ++i) out << "," << format_double(ch[k][i]);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("csv: write to '" + path + "' failed");
}

}  // namespace waveframe
