#include "vform/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vform {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double orient(Vec2 a, Vec2 b, Vec2 c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// r is known collinear with [p,q]
bool onSegment(Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
}

// closed segments, collinear overlap included
bool segmentsIntersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = orient(c, d, a);
    const double d2 = orient(c, d, b);
    const double d3 = orient(a, b, c);
    const double d4 = orient(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && onSegment(c, d, a)) return true;
    if (d2 == 0 && onSegment(c, d, b)) return true;
    if (d3 == 0 && onSegment(a, b, c)) return true;
    if (d4 == 0 && onSegment(a, b, d)) return true;
    return false;
}

// closed triangle; a degenerate triangle is just its edges, which the caller
// tests separately, so report false here
bool pointInTriangle(Vec2 pt, Vec2 a, Vec2 b, Vec2 c) {
    if (orient(a, b, c) == 0) return false;
    const double d1 = orient(a, b, pt);
    const double d2 = orient(b, c, pt);
    const double d3 = orient(c, a, pt);
    const bool hasNeg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool hasPos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(hasNeg && hasPos);
}

bool triangleIntersectsSegment(Vec2 a, Vec2 b, Vec2 c, Vec2 s1, Vec2 s2) {
    if (segmentsIntersect(a, b, s1, s2) || segmentsIntersect(b, c, s1, s2) ||
        segmentsIntersect(c, a, s1, s2))
        return true;
    // segment fully inside, or touching a nondegenerate interior
    return pointInTriangle(s1, a, b, c) || pointInTriangle(s2, a, b, c);
}

bool inTrailingBand(const BirdPose& i, const BirdPose& j, const Params& p) {
    const double ry = i.y - j.y;
    return ry > -p.washDepth && ry < 0;
}

}  // namespace

WashFootprint washFootprint(const Params& p) {
    WashFootprint f;
    f.optimalSep = (std::numbers::pi / 4.0 - 1.0) * p.wingspan / 2.0;
    f.halfWidthD = p.wingspan / 2.0 + f.optimalSep;
    f.gapThreshold = p.wingspan + 2.0 * f.optimalSep;
    return f;
}

WashRegions washRegions(const BirdPose& j, const Params& p) {
    const WashFootprint f = washFootprint(p);
    WashRegions r;
    r.downwash = {j.x - f.halfWidthD, j.x + f.halfWidthD};
    r.upwashLeft = {j.x - f.halfWidthD - p.upwashWidth, j.x - f.halfWidthD};
    r.upwashRight = {j.x + f.halfWidthD, j.x + f.halfWidthD + p.upwashWidth};
    r.bandLo = j.y - p.washDepth;
    r.bandHi = j.y;
    return r;
}

bool proximityAttained(const BirdPose& i, const BirdPose& j, const Params& p) {
    if (!inTrailingBand(i, j, p)) return false;
    const WashFootprint f = washFootprint(p);
    return std::abs(i.x - j.x) <= f.halfWidthD + p.upwashWidth;
}

UpwashStatus upwashStatus(const BirdPose& i, const BirdPose& j, const Params& p) {
    if (!inTrailingBand(i, j, p)) return {};
    const WashFootprint f = washFootprint(p);
    const double half = p.wingspan / 2.0;
    const double rx = i.x - j.x;
    const double wingLo = rx - half;
    const double wingHi = rx + half;
    const bool left = wingHi >= -(f.halfWidthD + p.upwashWidth) && wingLo <= -f.halfWidthD;
    const bool right = wingHi >= f.halfWidthD && wingLo <= f.halfWidthD + p.upwashWidth;
    const double sep = std::abs(rx) - p.wingspan;
    // positions move on the dx lattice, so stationing accepts half a step of
    // slack around the ideal separation; on the inner half of that window the
    // wingtip grazes the downwash by under dx/2, which is lattice rounding
    // rather than obstruction and must not unsettle a bird already in its slot
    if ((left || right) && std::abs(sep - f.optimalSep) <= p.lateralStep / 2.0)
        return {UpwashStatus::Optimal, sep};
    // open downwash: wingtips exactly on the boundary do not block
    if (wingHi > -f.halfWidthD && wingLo < f.halfWidthD)
        return {UpwashStatus::Blocked, 0.0};
    if (!left && !right) return {};
    return {UpwashStatus::Found, sep};
}

bool inPerceptionCone(const BirdPose& i, const BirdPose& other, double alphaDeg) {
    const double rx = other.x - i.x;
    const double ry = other.y - i.y;
    if (rx == 0 && ry == 0) return true;
    // the 180 degree cone is the closed half plane; going through cos() there
    // would lose the boundary to rounding
    if (alphaDeg >= 180.0) return ry >= 0;
    return std::atan2(std::abs(rx), ry) <= alphaDeg * (std::numbers::pi / 360.0);
}

std::vector<Gap> maximalGaps(const std::vector<BirdPose>& flock, int excludeId,
                             const Params& p) {
    const double half = p.wingspan / 2.0;
    std::vector<LateralInterval> wings;
    wings.reserve(flock.size());
    for (const BirdPose& b : flock) {
        if (b.id == excludeId) continue;
        wings.push_back({b.x - half, b.x + half});
    }
    if (wings.empty()) return {{-kInf, kInf}};

    std::sort(wings.begin(), wings.end(), [](const LateralInterval& a, const LateralInterval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });

    // merge clusters; wings that merely touch close the gap between them
    std::vector<LateralInterval> merged;
    merged.push_back(wings.front());
    for (std::size_t k = 1; k < wings.size(); ++k) {
        if (wings[k].lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, wings[k].hi);
        else
            merged.push_back(wings[k]);
    }

    std::vector<Gap> gaps;
    gaps.reserve(merged.size() + 1);
    gaps.push_back({-kInf, merged.front().lo});
    for (std::size_t k = 0; k + 1 < merged.size(); ++k)
        gaps.push_back({merged[k].hi, merged[k + 1].lo});
    gaps.push_back({merged.back().hi, kInf});
    return gaps;
}

std::vector<VisibleTip> visibleTipTargets(const BirdPose& i,
                                          const std::vector<BirdPose>& flock,
                                          const Params& p) {
    const WashFootprint f = washFootprint(p);
    const double half = p.wingspan / 2.0;
    const auto gaps = maximalGaps(flock, i.id, p);

    struct Candidate {
        VisibleTip tip;
        double dist2;
    };
    std::vector<Candidate> found;

    auto consider = [&](double tipX, int dir) {
        // the gap edge values are exact copies of wingtip coordinates, so the
        // owning birds are recovered by equality; several birds may share a tip
        for (const BirdPose& k : flock) {
            if (k.id == i.id) continue;
            const double ownTip = dir > 0 ? k.x + half : k.x - half;
            if (ownTip != tipX) continue;
            const BirdPose tipPoint{k.id, tipX, k.y};
            if (!inPerceptionCone(i, tipPoint, p.perceptionDeg)) continue;

            // sight triangle from i's body to the entry interval of the gap
            const Vec2 apex{i.x, i.y};
            const Vec2 e1{tipX, k.y};
            const Vec2 e2{tipX + dir * f.gapThreshold, k.y};
            bool cut = false;
            for (const BirdPose& m : flock) {
                if (m.id == i.id || m.id == k.id) continue;
                const Vec2 w1{m.x - half, m.y};
                const Vec2 w2{m.x + half, m.y};
                if (triangleIntersectsSegment(apex, e1, e2, w1, w2)) {
                    cut = true;
                    break;
                }
            }
            if (cut) continue;

            VisibleTip t;
            t.tipX = tipX;
            t.tipY = k.y;
            t.ownerId = k.id;
            t.dir = dir;
            t.targetLateral = tipX + dir * (f.optimalSep + half);
            const double rx = tipX - i.x;
            const double ry = k.y - i.y;
            found.push_back({t, rx * rx + ry * ry});
        }
    };

    for (const Gap& g : gaps) {
        if (!(g.hi - g.lo >= f.gapThreshold)) continue;
        if (g.lo != -kInf) consider(g.lo, +1);
        if (g.hi != kInf) consider(g.hi, -1);
    }

    std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
        if (a.tip.ownerId != b.tip.ownerId) return a.tip.ownerId < b.tip.ownerId;
        if (a.tip.tipX != b.tip.tipX) return a.tip.tipX < b.tip.tipX;
        return a.tip.dir < b.tip.dir;
    });

    std::vector<VisibleTip> out;
    out.reserve(found.size());
    for (const Candidate& c : found) out.push_back(c.tip);
    return out;
}

double distanceToSegment(Vec2 pt, Vec2 a, Vec2 b) {
    const double abx = b.x - a.x;
    const double aby = b.y - a.y;
    const double apx = pt.x - a.x;
    const double apy = pt.y - a.y;
    const double len2 = abx * abx + aby * aby;
    if (len2 == 0) return std::hypot(apx, apy);
    const double t = std::clamp((apx * abx + apy * aby) / len2, 0.0, 1.0);
    return std::hypot(apx - t * abx, apy - t * aby);
}

}  // namespace vform
