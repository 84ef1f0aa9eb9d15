#pragma once

#include <cstdint>
#include <vector>

#include "vform/geometry.hpp"
#include "vform/rng.hpp"

namespace vform {

enum class Move : std::uint8_t {
    Hold,
    LateralPlus,
    LateralMinus,
    ForwardPlus,
    ForwardMinus,  // only ever taken as a collision fallback
};

enum class Origin : std::uint8_t {
    Coalesce,   // still searching for company
    GapSeek,    // slotting in behind a visible wingtip
    Fallback,   // blocked move resolved by the longitudinal coin flip
    NoTarget,   // nothing visible to act on
};

struct Action {
    Move move = Move::Hold;
    Origin origin = Origin::NoTarget;
};

// What bird i would do against a frozen flock configuration. Pure function;
// the caller decides what configuration (and in what order) to evaluate.
Action decideAction(const BirdPose& i, const std::vector<BirdPose>& flock,
                    const Params& p);

// true when the candidate pose overlaps wings with someone at an unsafe
// longitudinal distance; exact wingtip contact and exact margin are allowed
bool wouldCollide(const BirdPose& candidate, const std::vector<BirdPose>& flock,
                  const Params& p);

struct ApplyResult {
    BirdPose pose;
    Action applied;  // what actually happened, Hold when nothing moved
    bool displaced = false;
};

// Applies a decided action, falling back to a coin-flipped longitudinal dodge
// when the move would collide. Consumes exactly one draw per blocked move and
// none otherwise.
ApplyResult applyWithFallback(const BirdPose& i, Action a,
                              const std::vector<BirdPose>& flock,
                              const Params& p, SplitMix64& rng);

}  // namespace vform
