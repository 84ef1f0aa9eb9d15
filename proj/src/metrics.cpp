#include "vform/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace vform {

WashGraph washGraph(const std::vector<BirdPose>& flock, const Params& p) {
    const int n = int(flock.size());
    WashGraph g;
    g.n = n;
    g.out.resize(n);
    g.in.resize(n);
    const WashFootprint f = washFootprint(p);
    const double half = p.wingspan / 2.0;
    for (int i = 0; i < n; ++i) {
        assert(flock[i].id == i);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double ry = flock[i].y - flock[j].y;
            if (!(ry > -p.washDepth && ry < 0)) continue;
            const double rx = flock[i].x - flock[j].x;
            const double wingLo = rx - half;
            const double wingHi = rx + half;
            const bool left = wingHi >= -(f.halfWidthD + p.upwashWidth) &&
                              wingLo <= -f.halfWidthD;
            const bool right = wingHi >= f.halfWidthD &&
                               wingLo <= f.halfWidthD + p.upwashWidth;
            if (left || right) {
                g.out[i].push_back(j);
                g.in[j].push_back(i);
            }
        }
    }
    return g;
}

std::vector<BirdClass> classify(const WashGraph& g) {
    std::vector<BirdClass> labels(g.n);
    for (int i = 0; i < g.n; ++i) {
        labels[i].lead = g.out[i].empty();
        labels[i].trailing = g.in[i].empty();
        // an interior junction: two or more followers, but not itself a lead
        labels[i].bifurcation = g.in[i].size() >= 2 && !g.out[i].empty();
    }
    return labels;
}

std::vector<int> components(const WashGraph& g) {
    std::vector<int> comp(g.n, -1);
    int count = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : g.out[v])
                if (comp[w] == -1) { comp[w] = count; stack.push_back(w); }
            for (int w : g.in[v])
                if (comp[w] == -1) { comp[w] = count; stack.push_back(w); }
        }
        ++count;
    }
    return comp;
}

int groupCount(const WashGraph& g) {
    const std::vector<int> comp = components(g);
    return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

std::vector<SegmentRec> segments(const std::vector<BirdPose>& flock,
                                 const WashGraph& g) {
    const auto labels = classify(g);
    std::vector<SegmentRec> out;
    for (int t = 0; t < g.n; ++t) {
        if (!labels[t].trailing || g.out[t].empty()) continue;
        // follow the chain of nearest leaders until it ends or forks; edges
        // strictly increase y, so the walk cannot revisit a bird
        int c = t;
        for (;;) {
            int next = -1;
            double bestD2 = std::numeric_limits<double>::infinity();
            for (int w : g.out[c]) {
                const double rx = flock[w].x - flock[c].x;
                const double ry = flock[w].y - flock[c].y;
                const double d2 = rx * rx + ry * ry;
                if (d2 < bestD2 || (d2 == bestD2 && w < next)) {
                    bestD2 = d2;
                    next = w;
                }
            }
            c = next;
            if (labels[c].lead || labels[c].bifurcation) break;
        }
        out.push_back({t, c});
    }
    return out;
}

std::optional<double> meanSegmentDistance(const std::vector<BirdPose>& flock,
                                          const WashGraph& g,
                                          const std::vector<SegmentRec>& segs,
                                          const std::vector<BirdClass>& labels) {
    if (segs.empty()) return std::nullopt;
    const std::vector<int> comp = components(g);
    double sum = 0.0;
    int contributors = 0;
    for (std::size_t b = 0; b < flock.size(); ++b) {
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = std::numeric_limits<double>::infinity();
        int local = 0;
        const Vec2 pt{flock[b].x, flock[b].y};
        for (const SegmentRec& s : segs) {
            if (comp[s.trailingId] != comp[b]) continue;
            ++local;
            const Vec2 a{flock[s.trailingId].x, flock[s.trailingId].y};
            const Vec2 e{flock[s.endpointId].x, flock[s.endpointId].y};
            const double d = distanceToSegment(pt, a, e);
            if (d < d1) { d2 = d1; d1 = d; }
            else if (d < d2) { d2 = d; }
        }
        if (local == 0) continue;
        if ((labels[b].lead || labels[b].bifurcation) && local >= 2)
            sum += (d1 + d2) / 2.0;
        else
            sum += d1;
        ++contributors;
    }
    // segs nonempty guarantees at least one group contributes
    return sum / double(contributors);
}

IndicatorRecord structuralIndicators(const std::vector<BirdPose>& flock,
                                     int tStab, const Params& p) {
    const WashGraph g = washGraph(flock, p);
    const auto labels = classify(g);
    const auto segs = segments(flock, g);
    IndicatorRecord rec;
    rec.tStab = tStab;
    for (const BirdClass& c : labels) rec.leads += c.lead ? 1 : 0;
    rec.groups = groupCount(g);
    rec.segments = int(segs.size());
    rec.meanSegDist = meanSegmentDistance(flock, g, segs, labels);
    return rec;
}

IndicatorRecord indicators(const SimResult& result, const Params& p) {
    return structuralIndicators(result.finalState.birds, result.tStab, p);
}

}  // namespace vform
