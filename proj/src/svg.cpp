#include "vform/svg.hpp"

#include <algorithm>
#include <string>

#include "vform/csvio.hpp"
#include "vform/metrics.hpp"

namespace vform {

namespace {

constexpr double kBodyRadius = 3.0;

void line(std::string& s, double x1, double y1, double x2, double y2,
          const char* extra) {
    s += "  <line x1=\"" + formatDouble(x1) + "\" y1=\"" + formatDouble(y1) +
         "\" x2=\"" + formatDouble(x2) + "\" y2=\"" + formatDouble(y2) + "\" " +
         extra + "/>\n";
}

}  // namespace

std::string renderSvg(const std::vector<BirdPose>& birds, const Params& p,
                      bool overlay) {
    const double half = p.wingspan / 2.0;

    // the caller's ids may be arbitrary; metrics wants ids matching indices
    std::vector<BirdPose> norm = birds;
    for (std::size_t k = 0; k < norm.size(); ++k) norm[k].id = int(k);

    // screen space flips y so the flight direction points up the page
    double minX = 0, maxX = 0, minY = 0, maxY = 0;
    bool first = true;
    for (const BirdPose& b : norm) {
        const double sy = -b.y;
        if (first) {
            minX = b.x - half;
            maxX = b.x + half;
            minY = sy - kBodyRadius;
            maxY = sy + kBodyRadius;
            first = false;
        } else {
            minX = std::min(minX, b.x - half);
            maxX = std::max(maxX, b.x + half);
            minY = std::min(minY, sy - kBodyRadius);
            maxY = std::max(maxY, sy + kBodyRadius);
        }
    }
    const double pad = 0.05 * std::max({maxX - minX, maxY - minY, 1.0});
    const double vbX = minX - pad;
    const double vbY = minY - pad;
    const double vbW = (maxX - minX) + 2 * pad;
    const double vbH = (maxY - minY) + 2 * pad;
    const int pxW = 800;
    const int pxH = std::max(1, int(pxW * vbH / vbW + 0.5));

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(pxW) + "\" height=\"" + std::to_string(pxH) +
         "\" viewBox=\"" + formatDouble(vbX) + " " + formatDouble(vbY) + " " +
         formatDouble(vbW) + " " + formatDouble(vbH) + "\">\n";
    s += "  <rect x=\"" + formatDouble(vbX) + "\" y=\"" + formatDouble(vbY) +
         "\" width=\"" + formatDouble(vbW) + "\" height=\"" + formatDouble(vbH) +
         "\" fill=\"white\"/>\n";

    if (overlay) {
        const WashGraph g = washGraph(norm, p);
        for (const SegmentRec& seg : segments(norm, g)) {
            const BirdPose& a = norm[seg.trailingId];
            const BirdPose& b = norm[seg.endpointId];
            line(s, a.x, -a.y, b.x, -b.y,
                 "stroke=\"#888\" stroke-width=\"1\" stroke-dasharray=\"6 4\"");
        }
    }

    for (const BirdPose& b : norm) {
        line(s, b.x - half, -b.y, b.x + half, -b.y,
             "stroke=\"black\" stroke-width=\"1\"");
        s += "  <circle cx=\"" + formatDouble(b.x) + "\" cy=\"" +
             formatDouble(-b.y) + "\" r=\"" + formatDouble(kBodyRadius) +
             "\" fill=\"black\"/>\n";
    }

    s += "</svg>\n";
    return s;
}

}  // namespace vform
