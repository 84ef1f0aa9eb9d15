#include "vform/rules.hpp"

#include <cmath>
#include <limits>

namespace vform {

namespace {

const BirdPose* findById(const std::vector<BirdPose>& flock, int id) {
    for (const BirdPose& b : flock)
        if (b.id == id) return &b;
    return nullptr;
}

}  // namespace

Action decideAction(const BirdPose& i, const std::vector<BirdPose>& flock,
                    const Params& p) {
    const WashFootprint f = washFootprint(p);

    bool company = false;
    for (const BirdPose& j : flock) {
        if (j.id != i.id && proximityAttained(i, j, p)) {
            company = true;
            break;
        }
    }

    if (!company) {
        // head for the nearest visible bird; ties broken by lateral offset,
        // then id, so the choice never depends on container order
        const BirdPose* best = nullptr;
        double bestD2 = std::numeric_limits<double>::infinity();
        double bestLat = std::numeric_limits<double>::infinity();
        for (const BirdPose& j : flock) {
            if (j.id == i.id || !inPerceptionCone(i, j, p.perceptionDeg)) continue;
            const double rx = j.x - i.x;
            const double ry = j.y - i.y;
            const double d2 = rx * rx + ry * ry;
            const double lat = std::abs(rx);
            if (d2 < bestD2 || (d2 == bestD2 && (lat < bestLat ||
                                (lat == bestLat && j.id < best->id)))) {
                best = &j;
                bestD2 = d2;
                bestLat = lat;
            }
        }
        if (!best) return {Move::Hold, Origin::NoTarget};
        const double off = best->x - i.x;
        // close laterally until one sideways step could land inside the
        // target's wash reach, then catch up longitudinally
        if (std::abs(off) > f.halfWidthD + p.upwashWidth - p.lateralStep)
            return {off > 0 ? Move::LateralPlus : Move::LateralMinus, Origin::Coalesce};
        return {Move::ForwardPlus, Origin::Coalesce};
    }

    // stationed in someone's optimal upwash: stay put
    for (const BirdPose& j : flock) {
        if (j.id != i.id && upwashStatus(i, j, p).kind == UpwashStatus::Optimal)
            return {Move::Hold, Origin::Coalesce};
    }

    const auto tips = visibleTipTargets(i, flock, p);
    if (tips.empty()) return {Move::Hold, Origin::NoTarget};
    const VisibleTip& t = tips.front();
    // offset to the stationing point, computed from coordinate differences so
    // the decision is invariant under translation of the whole flock
    const double rel = (t.tipX - i.x) + t.dir * (f.optimalSep + p.wingspan / 2.0);
    if (std::abs(rel) > p.lateralStep / 2.0)
        return {rel > 0 ? Move::LateralPlus : Move::LateralMinus, Origin::GapSeek};
    const BirdPose* owner = findById(flock, t.ownerId);
    if (owner && inPerceptionCone(i, *owner, p.perceptionDeg))
        return {Move::ForwardPlus, Origin::GapSeek};
    return {Move::Hold, Origin::GapSeek};
}

bool wouldCollide(const BirdPose& candidate, const std::vector<BirdPose>& flock,
                  const Params& p) {
    for (const BirdPose& k : flock) {
        if (k.id == candidate.id) continue;
        if (std::abs(candidate.x - k.x) < p.wingspan &&
            std::abs(candidate.y - k.y) < p.collisionMargin)
            return true;
    }
    return false;
}

namespace {

BirdPose displaced(const BirdPose& b, Move m, const Params& p) {
    BirdPose out = b;
    switch (m) {
        case Move::LateralPlus: out.x += p.lateralStep; break;
        case Move::LateralMinus: out.x -= p.lateralStep; break;
        case Move::ForwardPlus: out.y += p.forwardStep; break;
        case Move::ForwardMinus: out.y -= p.forwardStep; break;
        case Move::Hold: break;
    }
    return out;
}

}  // namespace

ApplyResult applyWithFallback(const BirdPose& i, Action a,
                              const std::vector<BirdPose>& flock,
                              const Params& p, SplitMix64& rng) {
    if (a.move == Move::Hold) return {i, a, false};
    const BirdPose cand = displaced(i, a.move, p);
    if (!wouldCollide(cand, flock, p)) return {cand, a, true};
    // blocked: one fair coin picks the longitudinal dodge direction
    const Move dodge = rng.nextBit() ? Move::ForwardPlus : Move::ForwardMinus;
    const BirdPose alt = displaced(i, dodge, p);
    if (!wouldCollide(alt, flock, p))
        return {alt, {dodge, Origin::Fallback}, true};
    return {i, {Move::Hold, Origin::Fallback}, false};
}

}  // namespace vform
