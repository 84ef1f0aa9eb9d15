#pragma once

#include <vector>

namespace vform {

// side of the square the flock is scattered over at startup
inline constexpr double kPlacementSide = 768.0;

// All lengths share one grid unit (the canonical wingspan is 50 units).
// x grows to the right of the flight direction, y grows along it.
struct Params {
    double upwashWidth = 30.0;     // lateral extent of one upwash region
    double washDepth = 50.0;       // how far behind a bird its wash reaches
    double wingspan = 50.0;
    double lateralStep = 3.0;      // sideways displacement per time step
    double forwardStep = 3.0;      // longitudinal displacement per time step
    double collisionMargin = 9.0;  // min |dy| allowed while wings overlap laterally
    double perceptionDeg = 180.0;  // full opening angle of the forward view cone
    int birdCount = 15;
    int stepLimit = 2000;

    bool valid() const {
        return upwashWidth > 0 && washDepth > 0 && wingspan > 0 &&
               lateralStep > 0 && forwardStep > 0 && collisionMargin > 0 &&
               perceptionDeg > 0 && perceptionDeg <= 180 && birdCount >= 1 &&
               stepLimit >= 1;
    }
};

struct BirdPose {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

// Lateral layout of the wash trailing a wingspan-w bird. optimalSep is the
// signed wingtip gap that maximizes induced lift; it is negative, so a
// perfectly stationed trailer overlaps wings with the bird ahead.
struct WashFootprint {
    double optimalSep;    // (pi/4 - 1) * wingspan / 2
    double halfWidthD;    // downwash half width, wingspan/2 + optimalSep
    double gapThreshold;  // wingspan + 2 * optimalSep, the lateral room a
                          // trailer needs to slot in behind a wingtip
};

WashFootprint washFootprint(const Params& p);

struct LateralInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wash regions behind one bird. Laterally the downwash interval is open and
// the upwash intervals are closed, so a wing exactly on a shared boundary
// counts as upwash, not downwash. The trailing band is open at both ends.
struct WashRegions {
    LateralInterval downwash;
    LateralInterval upwashLeft;
    LateralInterval upwashRight;
    double bandLo = 0.0;
    double bandHi = 0.0;
};

WashRegions washRegions(const BirdPose& j, const Params& p);

// i flies inside the lateral reach of j's wash band (not necessarily in
// upwash; being stuck in downwash still counts as having found company)
bool proximityAttained(const BirdPose& i, const BirdPose& j, const Params& p);

struct UpwashStatus {
    enum Kind { None, Blocked, Found, Optimal };
    Kind kind = None;
    double sep = 0.0;  // signed wingtip separation, valid for Found/Optimal
};

// How i's wing relates to j's wash. Blocked wins over any upwash overlap.
UpwashStatus upwashStatus(const BirdPose& i, const BirdPose& j, const Params& p);

// Cone of half angle alpha/2 around +y. At 180 degrees this is exactly the
// closed half plane y >= i.y.
bool inPerceptionCone(const BirdPose& i, const BirdPose& other, double alphaDeg);

// Maximal bird-free lateral interval; endpoints are wingtip coordinates of
// the delimiting birds or +-infinity at the flock edges.
struct Gap {
    double lo = 0.0;
    double hi = 0.0;
};

std::vector<Gap> maximalGaps(const std::vector<BirdPose>& flock, int excludeId,
                             const Params& p);

// A wingtip bird i could slot in behind: the tip delimits a wide-enough gap,
// lies in i's view cone, and the sight triangle from i to the gap entry is
// not cut by any other bird's wings.
struct VisibleTip {
    double tipX = 0.0;
    double tipY = 0.0;
    int ownerId = 0;
    int dir = 0;           // +1 when the gap extends rightward of the tip
    double targetLateral;  // body x that stations i's near wing optimally
};

std::vector<VisibleTip> visibleTipTargets(const BirdPose& i,
                                          const std::vector<BirdPose>& flock,
                                          const Params& p);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distanceToSegment(Vec2 pt, Vec2 a, Vec2 b);

}  // namespace vform
