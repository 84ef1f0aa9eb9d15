#pragma once

#include <optional>
#include <vector>

#include "vform/engine.hpp"
#include "vform/geometry.hpp"

namespace vform {

// Directed graph of who rides in whose upwash: an edge i -> j means i's wing
// overlaps an upwash region of j (downwash overlap does not cut the edge).
// Edges always point from the bird behind to the bird ahead, so the graph is
// acyclic. Expects engine ordering, ids 0..n-1 matching vector indices.
struct WashGraph {
    int n = 0;
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> in;
};

struct BirdClass {
    bool lead = false;         // rides in nobody's upwash
    bool trailing = false;     // nobody rides in its upwash
    bool bifurcation = false;  // two or more birds ride in its upwash
};

// A trailing bird together with the lead-or-bifurcation bird its upwash chain
// reaches; the pair names a line segment between the two body positions.
struct SegmentRec {
    int trailingId = 0;
    int endpointId = 0;
};

struct IndicatorRecord {
    int tStab = 0;
    int leads = 0;
    int groups = 0;
    int segments = 0;
    std::optional<double> meanSegDist;  // empty when the flock has no segments
};

WashGraph washGraph(const std::vector<BirdPose>& flock, const Params& p);

std::vector<BirdClass> classify(const WashGraph& g);

// weakly connected component index per bird
std::vector<int> components(const WashGraph& g);

// weakly connected components
int groupCount(const WashGraph& g);

std::vector<SegmentRec> segments(const std::vector<BirdPose>& flock,
                                 const WashGraph& g);

// Mean distance between birds and the segments of their own group: each bird
// contributes the distance to the nearest such segment, except that leads and
// bifurcation birds average their two nearest (or take the single one when
// their group has only one). Birds whose group has no segment contribute
// nothing; a segment of a distant unconnected group never enters another
// group's distances. Empty when there are no segments at all.
std::optional<double> meanSegmentDistance(const std::vector<BirdPose>& flock,
                                          const WashGraph& g,
                                          const std::vector<SegmentRec>& segs,
                                          const std::vector<BirdClass>& labels);

IndicatorRecord structuralIndicators(const std::vector<BirdPose>& flock,
                                     int tStab, const Params& p);

IndicatorRecord indicators(const SimResult& result, const Params& p);

}  // namespace vform
