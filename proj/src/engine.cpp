#include "vform/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vform {

namespace {

void validateNoCollision(const std::vector<BirdPose>& birds, const Params& p,
                         int step, std::uint64_t seed) {
    for (std::size_t a = 0; a < birds.size(); ++a) {
        for (std::size_t b = a + 1; b < birds.size(); ++b) {
            if (std::abs(birds[a].x - birds[b].x) < p.wingspan &&
                std::abs(birds[a].y - birds[b].y) < p.collisionMargin) {
                throw std::logic_error(
                    "collision invariant violated at step " + std::to_string(step) +
                    " between birds " + std::to_string(birds[a].id) + " and " +
                    std::to_string(birds[b].id) + " (seed " + std::to_string(seed) + ")");
            }
        }
    }
}

SimResult runLoop(SimState st, const Params& p, SplitMix64& rng,
                  std::optional<int> snapshotEvery, const StepObserver& observer,
                  std::uint64_t seedForErrors) {
    SimResult res;
    if (snapshotEvery) res.trace.push_back({0, st.birds});

    while (!st.stable && st.step < p.stepLimit) {
        stepOnce(st, p, rng, &res.counts);
        validateNoCollision(st.birds, p, st.step, seedForErrors);
        if (snapshotEvery && st.step % *snapshotEvery == 0)
            res.trace.push_back({st.step, st.birds});
        if (observer) observer(st);
    }

    if (snapshotEvery && st.step % *snapshotEvery != 0)
        res.trace.push_back({st.step, st.birds});
    res.tStab = st.stable ? st.lastMoveStep : p.stepLimit;
    res.finalState = std::move(st);
    return res;
}

}  // namespace

std::vector<BirdPose> initFlock(int n, SplitMix64& rng, const Params& p) {
    std::vector<BirdPose> birds;
    birds.reserve(n);
    for (int id = 0; id < n; ++id) {
        BirdPose b{id, 0.0, 0.0};
        long attempts = 0;
        for (;;) {
            b.x = rng.nextUnit() * kPlacementSide;
            b.y = rng.nextUnit() * kPlacementSide;
            if (!wouldCollide(b, birds, p)) break;
            if (++attempts >= 1000000)
                throw std::runtime_error("initFlock: placement square too crowded");
        }
        birds.push_back(b);
    }
    return birds;
}

void stepOnce(SimState& state, const Params& p, SplitMix64& rng,
              ActionCounts* counts) {
    const int n = int(state.birds.size());

    // Quiescence check against the frozen configuration, in id order with an
    // early exit. Decisions are pure functions of the poses, so if every bird
    // would hold, any processing order applies no displacement and the state
    // is a fixed point. Skipping the permutation draw on such steps means a
    // settled flock consumes no randomness at all.
    bool anyMove = false;
    for (const BirdPose& b : state.birds) {
        if (decideAction(b, state.birds, p).move != Move::Hold) {
            anyMove = true;
            break;
        }
    }

    ++state.step;
    if (!anyMove) {
        state.stable = true;
        if (counts) counts->holds += n;
        return;
    }

    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    for (int k = n - 1; k > 0; --k) {
        const int j = int(rng.nextBelow(std::uint64_t(k) + 1));
        std::swap(order[k], order[j]);
    }

    bool displacedAny = false;
    for (int idx : order) {
        const BirdPose b = state.birds[idx];
        const Action a = decideAction(b, state.birds, p);
        const ApplyResult r = applyWithFallback(b, a, state.birds, p, rng);
        state.birds[idx] = r.pose;
        if (r.displaced) {
            displacedAny = true;
            if (counts) {
                switch (r.applied.origin) {
                    case Origin::Coalesce: ++counts->coalesce; break;
                    case Origin::GapSeek: ++counts->gapSeek; break;
                    case Origin::Fallback: ++counts->fallback; break;
                    case Origin::NoTarget: break;
                }
            }
        } else if (counts) {
            ++counts->holds;
        }
    }
    if (displacedAny) state.lastMoveStep = state.step;
}

SimResult run(const Params& p, std::uint64_t seed,
              std::optional<int> snapshotEvery, const StepObserver& observer) {
    if (!p.valid()) throw std::invalid_argument("run: invalid parameters");
    SplitMix64 rng(seed);
    SimState st;
    st.birds = initFlock(p.birdCount, rng, p);
    return runLoop(std::move(st), p, rng, snapshotEvery, observer, seed);
}

SimResult runFrom(std::vector<BirdPose> initial, const Params& p,
                  SplitMix64& rng, std::optional<int> snapshotEvery,
                  const StepObserver& observer) {
    if (!p.valid()) throw std::invalid_argument("runFrom: invalid parameters");
    SimState st;
    st.birds = std::move(initial);
    return runLoop(std::move(st), p, rng, snapshotEvery, observer, 0);
}

}  // namespace vform
