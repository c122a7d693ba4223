#include "blasius/svg.hpp"

#include "blasius/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace blasius {

namespace {

std::string escape(const std::string& s) {
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

// Roughly five ticks at 1, 2 or 5 times a power of ten.
std::vector<double> ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (span / step <= 6.0) break;
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
        out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    }
    return out;
}

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

} // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opts) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    std::size_t points = 0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw std::invalid_argument("series '" + s.label + "' has mismatched x/y");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
            ++points;
        }
    }
    if (points < 2 || !(xmax > xmin)) throw std::invalid_argument("nothing to plot");
    if (opts.y_min) ymin = *opts.y_min;
    if (opts.y_max) ymax = *opts.y_max;
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    if (!opts.y_min) ymin -= pad;
    if (!opts.y_max) ymax += pad;

    const double left = 70, right = 20, top = 40, bottom = 50;
    const double pw = opts.width - left - right;
    const double ph = opts.height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - std::clamp(y, ymin, ymax)) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
       << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opts.title.empty()) {
        os << "<text x=\"" << opts.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
           << escape(opts.title) << "</text>\n";
    }
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(xmin, xmax)) {
        os << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << top + ph << "\" x2=\"" << num(sx(t)) << "\" y2=\""
           << top + ph + 5 << "\" stroke=\"black\"/>"
           << "<text x=\"" << num(sx(t)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << num(t)
           << "</text>\n";
    }
    for (double t : ticks(ymin, ymax)) {
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << left << "\" y2=\""
           << num(sy(t)) << "\" stroke=\"black\"/>"
           << "<text x=\"" << left - 8 << "\" y=\"" << num(sy(t) + 4) << "\" text-anchor=\"end\">" << num(t)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << opts.height - 12 << "\" text-anchor=\"middle\">"
       << escape(opts.x_label) << "</text>\n";
    if (!opts.y_label.empty()) {
        os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
           << top + ph / 2 << ")\">" << escape(opts.y_label) << "</text>\n";
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        os << "<polyline fill=\"none\" stroke=\"" << escape(s.color.empty() ? "black" : s.color)
           << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            os << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
        }
        os << "\"/>\n";
        const double ly = top + 16 + 16 * static_cast<double>(k);
        os << "<line x1=\"" << left + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + 36 << "\" y2=\"" << ly - 4
           << "\" stroke=\"" << escape(s.color.empty() ? "black" : s.color) << "\" stroke-width=\"1.5\""
           << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>"
           << "<text x=\"" << left + 42 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

namespace {

std::vector<PlotSeries> profile_series(const SolutionTable& t, const std::string& suffix, bool dashed) {
    PlotSeries f{"f" + suffix, "#1f77b4", {}, {}, dashed};
    PlotSeries fp{"f'" + suffix, "#d62728", {}, {}, dashed};
    PlotSeries fpp{"f''" + suffix, "#2ca02c", {}, {}, dashed};
    for (const auto& r : t.rows) {
        for (auto* s : {&f, &fp, &fpp}) s->x.push_back(r.eta);
        f.y.push_back(r.f);
        fp.y.push_back(r.fp);
        fpp.y.push_back(r.fpp);
    }
    return {f, fp, fpp};
}

} // namespace

void emit_plot(const SolutionTable& table, const std::filesystem::path& path, PlotOptions opts) {
    if (table.size() < 2) throw std::invalid_argument("cannot plot an empty range");
    write_atomic(path, render_svg(profile_series(table, "", false), opts));
}

void emit_comparison_plot(const SolutionTable& model, const SolutionTable& oracle, const std::filesystem::path& path,
                          PlotOptions opts) {
    if (model.size() < 2 || oracle.size() < 2) throw std::invalid_argument("cannot plot an empty range");
    auto series = profile_series(model, " (network)", false);
    auto ref = profile_series(oracle, " (shooting)", true);
    series.insert(series.end(), ref.begin(), ref.end());
    write_atomic(path, render_svg(series, opts));
}

} // namespace blasius
