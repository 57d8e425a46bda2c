#include "nlse/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <tuple>

#include "nlse/errors.hpp"

namespace nlse {

namespace {

// geometry of the drawing area; bytes depend only on the records
constexpr double kWidth = 720.0, kHeight = 520.0;
constexpr double kLeft = 72.0, kRight = 24.0, kTop = 40.0, kBottom = 56.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

std::string fmt_tick(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

}  // namespace

void emit_plot(const std::vector<ConvergenceRecord>& records, const std::string& title,
               std::ostream& out) {
    if (records.empty()) throw InvalidInputError("emit_plot: no records");

    double tmin = records.front().tau, tmax = tmin;
    double emin = records.front().error, emax = emin;
    bool has_strang = false;
    for (const auto& r : records) {
        if (!(r.tau > 0.0) || !(r.error > 0.0))
            throw InvalidInputError("emit_plot: taus and errors must be positive");
        tmin = std::min(tmin, r.tau);
        tmax = std::max(tmax, r.tau);
        emin = std::min(emin, r.error);
        emax = std::max(emax, r.error);
        if (r.scheme == "stfs") has_strang = true;
    }
    // pad degenerate ranges so single-point series still render
    double lt0 = std::log10(tmin), lt1 = std::log10(tmax);
    double le0 = std::log10(emin), le1 = std::log10(emax);
    if (lt1 - lt0 < 1e-12) { lt0 -= 0.5; lt1 += 0.5; }
    if (le1 - le0 < 1e-12) { le0 -= 0.5; le1 += 0.5; }
    le0 -= 0.05 * (le1 - le0);
    le1 += 0.05 * (le1 - le0);

    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = kHeight - kBottom, py1 = kTop;
    auto X = [&](double tau) {
        return px0 + (std::log10(tau) - lt0) / (lt1 - lt0) * (px1 - px0);
    };
    auto Y = [&](double err) {
        return py0 + (std::log10(err) - le0) / (le1 - le0) * (py1 - py0);
    };

    // series keyed for stable ordering: (scheme, sigma, h, norm)
    using Key = std::tuple<std::string, double, double, std::string>;
    std::map<Key, std::vector<std::pair<double, double>>> series;
    for (const auto& r : records)
        series[{r.scheme, r.sigma, r.h, r.norm}].emplace_back(r.tau, r.error);
    for (auto& [k, pts] : series) std::sort(pts.begin(), pts.end());

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
        << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << " " << fmt(kHeight) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" font-family=\"sans-serif\" "
        << "font-size=\"15\" text-anchor=\"middle\">" << title << "</text>\n";

    // frame and decade ticks
    out << "<rect x=\"" << fmt(px0) << "\" y=\"" << fmt(py1) << "\" width=\"" << fmt(px1 - px0)
        << "\" height=\"" << fmt(py0 - py1)
        << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    for (int d = static_cast<int>(std::ceil(lt0)); d <= static_cast<int>(std::floor(lt1)); ++d) {
        const double x = X(std::pow(10.0, d));
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(py0) << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << fmt(py0 + 5) << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(py0 + 20)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << fmt_tick(std::pow(10.0, d)) << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(le0)); d <= static_cast<int>(std::floor(le1)); ++d) {
        const double y = Y(std::pow(10.0, d));
        out << "<line x1=\"" << fmt(px0 - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(px0)
            << "\" y2=\"" << fmt(y) << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(px0 - 8) << "\" y=\"" << fmt(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << fmt_tick(std::pow(10.0, d)) << "</text>\n";
    }
    out << "<text x=\"" << fmt((px0 + px1) / 2) << "\" y=\"" << fmt(kHeight - 16)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">tau</text>\n";
    out << "<text x=\"18\" y=\"" << fmt((py0 + py1) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 18 " << fmt((py0 + py1) / 2) << ")\">error</text>\n";

    // slope guides anchored at the data's lower-right corner
    auto guide = [&](double slope, const char* dash) {
        const double eref = std::pow(10.0, le0 + 0.08 * (le1 - le0));
        const double e_at_tmin = eref * std::pow(tmin / tmax, slope);
        out << "<line x1=\"" << fmt(X(tmin)) << "\" y1=\"" << fmt(Y(e_at_tmin)) << "\" x2=\""
            << fmt(X(tmax)) << "\" y2=\"" << fmt(Y(eref))
            << "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"" << dash << "\"/>\n";
        out << "<text x=\"" << fmt(X(tmax) - 4) << "\" y=\"" << fmt(Y(eref) - 6)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" "
            << "fill=\"#777777\">slope " << static_cast<int>(slope) << "</text>\n";
    };
    guide(1.0, "6 3");
    if (has_strang) guide(2.0, "2 3");

    int ci = 0;
    double ly = kTop + 8.0;
    for (const auto& [key, pts] : series) {
        const auto& [scheme, sigma, h, norm] = key;
        const char* color = kColors[ci % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out << " ";
            out << fmt(X(pts[i].first)) << "," << fmt(Y(pts[i].second));
        }
        out << "\"/>\n";
        for (const auto& [tau, err] : pts)
            out << "<circle cx=\"" << fmt(X(tau)) << "\" cy=\"" << fmt(Y(err))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        char label[160];
        std::snprintf(label, sizeof(label), "%s sigma=%.12g h=%.12g %s", scheme.c_str(), sigma, h,
                      norm.c_str());
        out << "<text x=\"" << fmt(px1 - 8) << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" fill=\""
            << color << "\">" << label << "</text>\n";
        ly += 14.0;
        ++ci;
    }
    out << "</svg>\n";
}

}  // namespace nlse
