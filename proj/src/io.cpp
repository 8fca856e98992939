#include "portopt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

constexpr const char* kFrontierHeader = "risk,return,lambda,assets,weights";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double_field(std::string_view field, const char* column, int line) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw SchemaMismatch("column '" + std::string(column) + "' on line " +
                             std::to_string(line) + " is not a number: '" +
                             std::string(field) + "'");
    }
    return v;
}

int parse_int_field(std::string_view field, const char* column, int line) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw SchemaMismatch("column '" + std::string(column) + "' on line " +
                             std::to_string(line) + " is not an integer: '" +
                             std::string(field) + "'");
    }
    return v;
}

}  // namespace

void write_frontier_csv(const Frontier& frontier, const std::string& path) {
    std::string out(kFrontierHeader);
    out += '\n';
    for (const FrontierPoint& p : frontier.points) {
        out += fmt(p.risk);
        out += ',';
        out += fmt(p.ret);
        out += ',';
        if (p.lambda) out += fmt(*p.lambda);
        out += ',';
        if (p.portfolio) {
            const Portfolio& pf = *p.portfolio;
            for (int i = 0; i < pf.size(); ++i) {
                if (i > 0) out += ';';
                out += std::to_string(pf.asset(i));
            }
            out += ',';
            for (int i = 0; i < pf.size(); ++i) {
                if (i > 0) out += ';';
                out += fmt(pf.weight(i));
            }
        } else {
            out += ',';
        }
        out += '\n';
    }
    atomic_write(path, out);
}

Frontier read_frontier_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaMismatch("missing header in " + path + ": expected '" +
                             kFrontierHeader + "'");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kFrontierHeader) {
        throw SchemaMismatch("bad header in " + path + ": got '" + line +
                             "', expected '" + kFrontierHeader + "'");
    }

    Frontier f;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string_view> fields = split(line, ',');
        if (fields.size() != 5) {
            throw SchemaMismatch("line " + std::to_string(line_no) + " in " + path +
                                 " has " + std::to_string(fields.size()) +
                                 " fields, expected 5 (" + kFrontierHeader + ")");
        }
        FrontierPoint p;
        p.risk = parse_double_field(fields[0], "risk", line_no);
        p.ret = parse_double_field(fields[1], "return", line_no);
        if (!fields[2].empty()) {
            p.lambda = parse_double_field(fields[2], "lambda", line_no);
        }
        if (!fields[3].empty() || !fields[4].empty()) {
            std::vector<int> assets;
            for (const std::string_view t : split(fields[3], ';')) {
                assets.push_back(parse_int_field(t, "assets", line_no));
            }
            std::vector<double> weights;
            for (const std::string_view t : split(fields[4], ';')) {
                weights.push_back(parse_double_field(t, "weights", line_no));
            }
            if (assets.size() != weights.size()) {
                throw SchemaMismatch(
                    "columns 'assets' and 'weights' on line " +
                    std::to_string(line_no) + " have different lengths (" +
                    std::to_string(assets.size()) + " vs " +
                    std::to_string(weights.size()) + ")");
            }
            p.portfolio = Portfolio(std::move(assets), std::move(weights));
        }
        f.points.push_back(std::move(p));
    }
    return f;
}

void write_report_csv(const DeviationReport& report, const std::string& path) {
    std::string out("metric,value\n");
    out += "median_error," + fmt(report.median_error) + '\n';
    out += "mean_error," + fmt(report.mean_error) + '\n';
    out += "risk_error," + fmt(report.risk_error) + '\n';
    out += "return_error," + fmt(report.return_error) + '\n';
    out += "time_seconds," + fmt(report.time_seconds) + '\n';
    atomic_write(path, out);
}

void write_frontier_svg(const Frontier& line, const Frontier* scatter,
                        const std::string& title, const std::string& path) {
    const int width = 900;
    const int height = 600;
    const int margin_left = 90;
    const int margin_right = 30;
    const int margin_top = 50;
    const int margin_bottom = 70;

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool seeded = false;
    auto grow = [&](const Frontier& f) {
        for (const FrontierPoint& p : f.points) {
            if (!seeded) {
                x_lo = x_hi = p.risk;
                y_lo = y_hi = p.ret;
                seeded = true;
            } else {
                x_lo = std::min(x_lo, p.risk);
                x_hi = std::max(x_hi, p.risk);
                y_lo = std::min(y_lo, p.ret);
                y_hi = std::max(y_hi, p.ret);
            }
        }
    };
    grow(line);
    if (scatter) grow(*scatter);
    if (x_hi <= x_lo) x_hi = x_lo + 1;
    if (y_hi <= y_lo) y_hi = y_lo + 1;
    // small padding so extreme points do not sit on the border
    const double x_pad = 0.03 * (x_hi - x_lo);
    const double y_pad = 0.03 * (y_hi - y_lo);
    x_lo -= x_pad;
    x_hi += x_pad;
    y_lo -= y_pad;
    y_hi += y_pad;

    auto sx = [&](double v) {
        return margin_left + (v - x_lo) / (x_hi - x_lo) *
                                 (width - margin_left - margin_right);
    };
    auto sy = [&](double r) {
        return height - margin_bottom -
               (r - y_lo) / (y_hi - y_lo) * (height - margin_top - margin_bottom);
    };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"18\">"
        << title << "</text>\n";

    // axes, ticks, grid
    const int n_ticks = 6;
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
    for (int t = 0; t <= n_ticks; ++t) {
        const double fx = x_lo + (x_hi - x_lo) * t / n_ticks;
        const double fy = y_lo + (y_hi - y_lo) * t / n_ticks;
        const double px = sx(fx);
        const double py = sy(fy);
        svg << "<line x1=\"" << px << "\" y1=\"" << margin_top << "\" x2=\"" << px
            << "\" y2=\"" << height - margin_bottom
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
            << "<line x1=\"" << margin_left << "\" y1=\"" << py << "\" x2=\""
            << width - margin_right << "\" y2=\"" << py
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << height - margin_bottom + 20
            << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n"
            << "<text x=\"" << margin_left - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
    }
    svg << "</g>\n"
        << "<line x1=\"" << margin_left << "\" y1=\"" << height - margin_bottom
        << "\" x2=\"" << width - margin_right << "\" y2=\"" << height - margin_bottom
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\""
        << margin_left << "\" y2=\"" << height - margin_bottom
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << (margin_left + width - margin_right) / 2 << "\" y=\""
        << height - 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
           "risk (variance)</text>\n"
        << "<text x=\"22\" y=\"" << (margin_top + height - margin_bottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 22 "
        << (margin_top + height - margin_bottom) / 2 << ")\">expected return</text>\n";

    if (!line.points.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"";
        for (const FrontierPoint& p : line.points) {
            svg << sx(p.risk) << ',' << sy(p.ret) << ' ';
        }
        svg << "\"/>\n";
    }
    if (scatter) {
        for (const FrontierPoint& p : scatter->points) {
            svg << "<circle cx=\"" << sx(p.risk) << "\" cy=\"" << sy(p.ret)
                << "\" r=\"3.5\" fill=\"#d1495b\" fill-opacity=\"0.8\"/>\n";
        }
    }
    svg << "</svg>\n";
    atomic_write(path, svg.str());
}

}  // namespace portopt
