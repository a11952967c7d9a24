#include "plc/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "plc/mathutil.hpp"
#include "plc/reference.hpp"

namespace plc {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 25.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 55.0;

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 3);
    return std::string(buf, ptr);
}

}  // namespace

std::string render_experiment_svg(const ExperimentResult& result, double p) {
    if (result.aggregates.empty()) {
        throw InvalidArgument("nothing to plot: experiment has no aggregate rows");
    }
    double r_min = result.aggregates.front().rate;
    double r_max = r_min;
    double d_max = 0.0;
    for (const RateAggregate& agg : result.aggregates) {
        r_min = std::min(r_min, agg.rate);
        r_max = std::max(r_max, agg.rate);
        d_max = std::max({d_max, agg.mean_d, agg.rdf_d});
    }
    if (r_max == r_min) {
        r_min -= 0.05;
        r_max += 0.05;
    }
    d_max = std::max(d_max * 1.15, 1e-3);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto sx = [&](double r) {
        return kMarginLeft + (r - r_min) / (r_max - r_min) * plot_w;
    };
    const auto sy = [&](double d) { return kMarginTop + (1.0 - d / d_max) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";

    // axes
    svg += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(kMarginTop) + "\" x2=\"" +
           fmt(kMarginLeft) + "\" y2=\"" + fmt(kHeight - kMarginBottom) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(kHeight - kMarginBottom) +
           "\" x2=\"" + fmt(kWidth - kMarginRight) + "\" y2=\"" + fmt(kHeight - kMarginBottom) +
           "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double r = r_min + (r_max - r_min) * i / 5.0;
        const double d = d_max * i / 5.0;
        svg += "<text x=\"" + fmt(sx(r)) + "\" y=\"" + fmt(kHeight - kMarginBottom + 18.0) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + fmt(r) + "</text>\n";
        svg += "<text x=\"" + fmt(kMarginLeft - 8.0) + "\" y=\"" + fmt(sy(d) + 4.0) +
               "\" font-size=\"11\" text-anchor=\"end\">" + fmt(d) + "</text>\n";
    }
    svg += "<text x=\"" + fmt(kMarginLeft + plot_w / 2.0) + "\" y=\"" + fmt(kHeight - 12.0) +
           "\" font-size=\"13\" text-anchor=\"middle\">rate R</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt(kMarginTop + plot_h / 2.0) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt(kMarginTop + plot_h / 2.0) + ")\">distortion per bit</text>\n";

    // rate-distortion reference curve
    const double entropy = binary_entropy(p);
    std::string rdf_points;
    for (int i = 0; i <= 128; ++i) {
        const double r = r_min + (r_max - r_min) * i / 128.0;
        const double d = r >= entropy ? 0.0 : rdf_inverse(p, std::max(r, 0.0));
        rdf_points += fmt(sx(r)) + ',' + fmt(sy(d)) + ' ';
    }
    svg += "<polyline points=\"" + rdf_points +
           "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";

    // measured means
    std::string data_points;
    for (const RateAggregate& agg : result.aggregates) {
        data_points += fmt(sx(agg.rate)) + ',' + fmt(sy(agg.mean_d)) + ' ';
    }
    svg += "<polyline points=\"" + data_points + "\" fill=\"none\" stroke=\"#c0392b\"/>\n";
    for (const RateAggregate& agg : result.aggregates) {
        svg += "<circle cx=\"" + fmt(sx(agg.rate)) + "\" cy=\"" + fmt(sy(agg.mean_d)) +
               "\" r=\"3.5\" fill=\"#c0392b\"/>\n";
    }

    svg += "<text x=\"" + fmt(kWidth - kMarginRight) + "\" y=\"" + fmt(kMarginTop - 10.0) +
           "\" font-size=\"12\" text-anchor=\"end\">mean distortion (p=" + fmt(p) +
           ") vs rate-distortion reference</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace plc
