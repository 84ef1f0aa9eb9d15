#include <doctest.h>

#include <vector>

#include "vform/geometry.hpp"
#include "vform/rng.hpp"
#include "vform/rules.hpp"

using namespace vform;

namespace {

Params table1() { return Params{}; }

BirdPose bird(int id, double x, double y) { return BirdPose{id, x, y}; }

}  // namespace

TEST_CASE("coalescing moves toward a distant bird") {
    const Params p = table1();

    SUBCASE("large lateral offset steps sideways") {
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, 500, 300)};
        const Action a = decideAction(flock[0], flock, p);
        CHECK(a.move == Move::LateralPlus);
        CHECK(a.origin == Origin::Coalesce);

        std::vector<BirdPose> mirrored = {bird(0, 0, 0), bird(1, -500, 300)};
        const Action b = decideAction(mirrored[0], mirrored, p);
        CHECK(b.move == Move::LateralMinus);
        CHECK(b.origin == Origin::Coalesce);
    }

    SUBCASE("small lateral offset advances instead") {
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, 10, 300)};
        const Action a = decideAction(flock[0], flock, p);
        CHECK(a.move == Move::ForwardPlus);
        CHECK(a.origin == Origin::Coalesce);
    }

    SUBCASE("switch point sits at the wash reach less one lateral step") {
        // threshold = halfWidthD + upwashWidth - lateralStep ~ 46.635
        std::vector<BirdPose> near = {bird(0, 0, 0), bird(1, 46, 300)};
        CHECK(decideAction(near[0], near, p).move == Move::ForwardPlus);
        std::vector<BirdPose> far = {bird(0, 0, 0), bird(1, 47, 300)};
        CHECK(decideAction(far[0], far, p).move == Move::LateralPlus);
    }

    SUBCASE("no bird ahead means hold with no target") {
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, 0, -300)};
        const Action a = decideAction(flock[0], flock, p);
        CHECK(a.move == Move::Hold);
        CHECK(a.origin == Origin::NoTarget);
    }

    SUBCASE("distance ties prefer the smaller lateral offset") {
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, 60, 80),
                                       bird(2, 80, 60)};
        const Action a = decideAction(flock[0], flock, p);
        CHECK(a.move == Move::LateralPlus);  // toward bird 1 at +60
    }

    SUBCASE("full ties prefer the smaller id") {
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, -60, 80),
                                       bird(2, 60, 80)};
        const Action a = decideAction(flock[0], flock, p);
        CHECK(a.move == Move::LateralMinus);  // toward bird 1
    }
}

TEST_CASE("a stationed bird holds") {
    const Params p = table1();
    // 44.635 off center is within half a lateral step of the best slot
    std::vector<BirdPose> flock = {bird(0, 144.635, 175), bird(1, 100, 200)};
    REQUIRE(upwashStatus(flock[0], flock[1], p).kind ==
            UpwashStatus::Kind::Optimal);
    const Action a = decideAction(flock[0], flock, p);
    CHECK(a.move == Move::Hold);
    CHECK(a.origin == Origin::Coalesce);

    // the inner half of the window grazes the downwash but still stations
    flock[0].x = 144;
    REQUIRE(upwashStatus(flock[0], flock[1], p).kind ==
            UpwashStatus::Kind::Optimal);
    const Action b = decideAction(flock[0], flock, p);
    CHECK(b.move == Move::Hold);
    CHECK(b.origin == Origin::Coalesce);
}

TEST_CASE("gap seeking from a blocked slot") {
    const Params p = table1();
    // i sits in the downwash of bird 1 while bird 2 leaves a wide gap
    std::vector<BirdPose> base = {bird(0, 133, 175), bird(1, 100, 200),
                                  bird(2, 200, 200)};
    REQUIRE(upwashStatus(base[0], base[1], p).kind ==
            UpwashStatus::Kind::Blocked);

    SUBCASE("far from the gap target moves laterally") {
        const Action a = decideAction(base[0], base, p);
        CHECK(a.move == Move::LateralPlus);
        CHECK(a.origin == Origin::GapSeek);
    }

    SUBCASE("aligned with the slot but short of the band advances") {
        std::vector<BirdPose> flock = base;
        flock[0] = bird(0, 144, 148);       // one step below bird 1's band
        flock.push_back(bird(3, 97, 185));  // keeps wash proximity alive
        REQUIRE(upwashStatus(flock[0], flock[1], p).kind ==
                UpwashStatus::Kind::None);
        const Action a = decideAction(flock[0], flock, p);
        CHECK(a.move == Move::ForwardPlus);
        CHECK(a.origin == Origin::GapSeek);
    }
}

TEST_CASE("narrow perception can strand a bird at a reachable slot") {
    Params p = table1();
    p.perceptionDeg = 80;
    std::vector<BirdPose> flock = {bird(0, 44.5, 132), bird(1, 0, 183),
                                   bird(2, 92.5, 147)};
    // the only tip inside the cone belongs to bird 1, whose body is outside
    const Action a = decideAction(flock[0], flock, p);
    CHECK(a.move == Move::Hold);
    CHECK(a.origin == Origin::GapSeek);

    // widening the cone admits a nearer tip on bird 2 and frees the move
    p.perceptionDeg = 180;
    const Action b = decideAction(flock[0], flock, p);
    CHECK(b.move == Move::LateralPlus);
    CHECK(b.origin == Origin::GapSeek);
}

TEST_CASE("blocked with no visible tips holds without a target") {
    Params p = table1();
    p.perceptionDeg = 90;
    std::vector<BirdPose> flock = {bird(0, 100, 191), bird(1, 100, 200)};
    REQUIRE(upwashStatus(flock[0], flock[1], p).kind ==
            UpwashStatus::Kind::Blocked);
    const Action a = decideAction(flock[0], flock, p);
    CHECK(a.move == Move::Hold);
    CHECK(a.origin == Origin::NoTarget);
}

TEST_CASE("collision predicate uses open thresholds") {
    const Params p = table1();
    std::vector<BirdPose> flock = {bird(0, 98, 100), bird(1, 145, 106)};
    CHECK(wouldCollide(bird(0, 100, 100), flock, p));

    flock[1].y = 109;  // vertical margin reached exactly
    CHECK_FALSE(wouldCollide(bird(0, 100, 100), flock, p));

    flock[1] = bird(1, 150, 100);  // wingtips touching
    CHECK_FALSE(wouldCollide(bird(0, 100, 100), flock, p));

    flock[1] = bird(1, 149, 100);
    CHECK(wouldCollide(bird(0, 100, 100), flock, p));

    // a bird never collides with its own old pose
    std::vector<BirdPose> self = {bird(0, 98, 100)};
    CHECK_FALSE(wouldCollide(bird(0, 101, 100), self, p));
}

TEST_CASE("fallback dodges a blocked lateral step") {
    const Params p = table1();

    SUBCASE("hold applies unchanged and draws nothing") {
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, 200, 200)};
        SplitMix64 rng(5);
        const ApplyResult r =
            applyWithFallback(flock[0], {Move::Hold, Origin::NoTarget}, flock, p, rng);
        CHECK(r.pose.x == 0);
        CHECK(r.pose.y == 0);
        CHECK_FALSE(r.displaced);
        CHECK(rng.draws() == 0);
    }

    SUBCASE("free move applies without the coin") {
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, 200, 200)};
        SplitMix64 rng(5);
        const ApplyResult r = applyWithFallback(
            flock[0], {Move::LateralPlus, Origin::Coalesce}, flock, p, rng);
        CHECK(r.pose.x == 3);
        CHECK(r.displaced);
        CHECK(r.applied.move == Move::LateralPlus);
        CHECK(rng.draws() == 0);
    }

    SUBCASE("one coin picks the dodge direction") {
        // bird 1 blocks the lateral step; both forward dodges are free
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, 52, 0)};
        for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
            SplitMix64 twin(seed);
            const int bit = twin.nextBit();
            SplitMix64 rng(seed);
            const ApplyResult r = applyWithFallback(
                flock[0], {Move::LateralPlus, Origin::Coalesce}, flock, p, rng);
            CHECK(rng.draws() == 1);
            CHECK(r.displaced);
            CHECK(r.applied.origin == Origin::Fallback);
            CHECK(r.applied.move ==
                  (bit ? Move::ForwardPlus : Move::ForwardMinus));
            CHECK(r.pose.x == 0);
            CHECK(r.pose.y == (bit ? 3.0 : -3.0));
        }
    }

    SUBCASE("dodge blocked too leaves the bird in place") {
        std::vector<BirdPose> flock = {bird(0, 0, 0), bird(1, 52, 0),
                                       bird(2, 40, 9), bird(3, -40, -9)};
        for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
            SplitMix64 rng(seed);
            const ApplyResult r = applyWithFallback(
                flock[0], {Move::LateralPlus, Origin::Coalesce}, flock, p, rng);
            CHECK(rng.draws() == 1);
            CHECK_FALSE(r.displaced);
            CHECK(r.pose.x == 0);
            CHECK(r.pose.y == 0);
            CHECK(r.applied.move == Move::Hold);
            CHECK(r.applied.origin == Origin::Fallback);
        }
    }
}

TEST_CASE("decisions never retreat and ignore flock ordering") {
    const Params p = table1();
    SplitMix64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + int(rng.nextBelow(5));
        std::vector<BirdPose> flock;
        for (int id = 0; id < n; ++id)
            flock.push_back(bird(id, rng.nextUnit() * 400, rng.nextUnit() * 400));

        std::vector<BirdPose> reversed(flock.rbegin(), flock.rend());
        for (int id = 0; id < n; ++id) {
            const Action a = decideAction(flock[id], flock, p);
            CHECK(a.move != Move::ForwardMinus);
            const Action b = decideAction(flock[id], reversed, p);
            CHECK(a.move == b.move);
            CHECK(a.origin == b.origin);
        }
    }
}
