#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "vform/geometry.hpp"
#include "vform/rng.hpp"
#include "vform/rules.hpp"

namespace vform {

struct SimState {
    int step = 0;
    std::vector<BirdPose> birds;
    int lastMoveStep = 0;  // latest step on which some bird was displaced
    bool stable = false;
};

struct Snapshot {
    int step = 0;
    std::vector<BirdPose> birds;
};

struct ActionCounts {
    std::int64_t coalesce = 0;  // applied moves from the search behavior
    std::int64_t gapSeek = 0;   // applied moves toward a visible wingtip
    std::int64_t fallback = 0;  // applied longitudinal dodges
    std::int64_t holds = 0;     // bird-steps with no displacement
};

struct SimResult {
    SimState finalState;
    int tStab = 0;  // settling time; equals the step limit when never stable
    std::vector<Snapshot> trace;
    ActionCounts counts;
};

using StepObserver = std::function<void(const SimState&)>;

// scatter n birds uniformly over the placement square, resampling any draw
// that would collide with an already placed bird
std::vector<BirdPose> initFlock(int n, SplitMix64& rng, const Params& p);

// One synchronous-decision, sequential-application time step. A step in which
// every bird would hold against the frozen configuration marks the state
// stable and consumes no randomness; otherwise the processing order is a
// uniform random permutation and each bird re-decides against the partially
// updated flock.
void stepOnce(SimState& state, const Params& p, SplitMix64& rng,
              ActionCounts* counts = nullptr);

// Full simulation from a fresh random flock. snapshotEvery records the state
// at step 0, every k-th step, and the final step. The observer fires after
// every step. Throws if the collision invariant is ever violated.
SimResult run(const Params& p, std::uint64_t seed,
              std::optional<int> snapshotEvery = std::nullopt,
              const StepObserver& observer = {});

// Same loop from a caller-supplied configuration and rng.
SimResult runFrom(std::vector<BirdPose> initial, const Params& p,
                  SplitMix64& rng, std::optional<int> snapshotEvery = std::nullopt,
                  const StepObserver& observer = {});

}  // namespace vform
