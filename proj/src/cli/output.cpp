// output.cpp: CSV and SVG writers

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "corrwitness/cli.hpp"

namespace corrwitness::cli {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw NumericalFailure(std::string("non-finite value in ") + what);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

std::string fixed2(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", std::abs(x) < 1e-300 ? 0.0 : x);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string format_number(double x) {
    if (!std::isfinite(x))
        throw NumericalFailure("attempt to format a non-finite number");
    std::array<char, 64> buf{};
    const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), r.ptr);
}

void write_dipole_csv(const std::filesystem::path& path, const PointResult& p) {
    const auto dc = dipole_signal(p.corr, p.model.omega_p);
    const auto dm = dipole_signal(p.marg, p.model.omega_p);
    for (const auto* v : {&dc.amplitude, &dc.phase, &dc.signal, &dc.intensity, &dm.amplitude, &dm.phase,
                          &dm.signal, &dm.intensity})
        require_finite(*v, "dipole series");

    std::ostringstream os;
    os << "t_scaled,re_A_corr,im_A_corr,re_A_marg,im_A_marg,amp_corr,amp_marg,phase_corr,phase_marg,"
          "signal_corr,signal_marg,intensity_corr,intensity_marg\n";
    for (std::size_t i = 0; i < p.corr.size(); ++i) {
        const double row[] = {p.corr.t[i],         p.corr.values[i].real(), p.corr.values[i].imag(),
                              p.marg.values[i].real(), p.marg.values[i].imag(), dc.amplitude[i],
                              dm.amplitude[i],     dc.phase[i],             dm.phase[i],
                              dc.signal[i],        dm.signal[i],            dc.intensity[i],
                              dm.intensity[i]};
        for (std::size_t k = 0; k < std::size(row); ++k)
            os << (k ? "," : "") << format_number(row[k]);
        os << '\n';
    }
    write_text(path, os.str());
}

void write_distance_csv(const std::filesystem::path& path, const std::vector<PointResult>& points) {
    if (points.empty())
        throw std::invalid_argument("write_distance_csv: no points");
    for (const auto& p : points) {
        require_finite(p.distance.trace_distance, "trace distance");
        require_finite(p.distance.hs_distance, "Hilbert-Schmidt distance");
        if (p.distance.t != points.front().distance.t)
            throw GridMismatch("write_distance_csv: points use different grids");
    }
    std::ostringstream os;
    os << "t_scaled";
    if (points.size() == 1) {
        os << ",trace_distance,hs_distance";
    } else {
        for (const auto& p : points) {
            const auto s = format_number(p.s);
            os << ",trace_distance_s=" << s << ",hs_distance_s=" << s;
        }
    }
    os << '\n';
    const auto& t = points.front().distance.t;
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << format_number(t[i]);
        for (const auto& p : points)
            os << ',' << format_number(p.distance.trace_distance[i]) << ','
               << format_number(p.distance.hs_distance[i]);
        os << '\n';
    }
    write_text(path, os.str());
}

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<PlotSeries>& series) {
    constexpr double width = 640, height = 420;
    constexpr double left = 80, right = 150, top = 40, bottom = 60;
    constexpr double pw = width - left - right, ph = height - top - bottom;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                throw NumericalFailure("non-finite value in plot series " + s.label);
            if (first) {
                x0 = x1 = s.x[i];
                y0 = y1 = s.y[i];
                first = false;
            }
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    const auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << left + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"15\">" << escape_xml(title) << "</text>\n"
       << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double fx = x0 + (x1 - x0) * k / 5.0;
        const double fy = y0 + (y1 - y0) * k / 5.0;
        os << "<line x1=\"" << fixed2(px(fx)) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed2(px(fx))
           << "\" y2=\"" << top + ph + 5 << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << fixed2(px(fx)) << "\" y=\"" << top + ph + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(fx)
           << "</text>\n"
           << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed2(py(fy)) << "\" x2=\"" << left << "\" y2=\""
           << fixed2(py(fy)) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << left - 8 << "\" y=\"" << fixed2(py(fy) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(fy)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape_xml(x_label)
       << "</text>\n"
       << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"13\" transform=\"rotate(-90 18 " << top + ph / 2 << ")\">" << escape_xml(y_label)
       << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = colors[k % std::size(colors)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const auto& s = series[k];
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << (i ? " " : "") << fixed2(px(s.x[i])) << ',' << fixed2(py(s.y[i]));
        os << "\"/>\n";
        const double ly = top + 10 + 20.0 * static_cast<double>(k);
        os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 36 << "\" y2=\""
           << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << left + pw + 42 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace corrwitness::cli
