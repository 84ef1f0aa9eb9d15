#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vform/geometry.hpp"
#include "vform/metrics.hpp"

namespace vform {

struct GridCell {
    int n = 0;
    double alpha = 0.0;
};

// per-run time series of the mean segment distance, sampled every k steps
struct SeriesSpec {
    std::string indicator = "msd";
    int every = 10;
    int runs = 10;  // first runs of each cell get a series
};

struct BatchSpec {
    Params base;
    int runs = 200;            // runs per grid cell
    std::uint64_t baseSeed = 0;
    std::vector<GridCell> grid;
    std::optional<SeriesSpec> series;
    int workers = 1;
};

struct RunRow {
    int n = 0;
    double alpha = 0.0;
    int run = 0;
    std::uint64_t seed = 0;
    IndicatorRecord ind;
};

struct AggregateRow {
    int n = 0;
    double alpha = 0.0;
    int runs = 0;
    double tStabMean = 0, tStabStd = 0;
    double leadsMean = 0, leadsStd = 0;
    double groupsMean = 0, groupsStd = 0;
    double segmentsMean = 0, segmentsStd = 0;
    std::optional<double> msdMean, msdStd;  // over runs where msd exists
    int msdMissing = 0;
    double stabilizedFrac = 0;
};

struct SeriesRow {
    int n = 0;
    double alpha = 0.0;
    int run = 0;
    int step = 0;
    std::optional<double> msd;
};

struct BatchResult {
    std::vector<RunRow> perRun;       // grid order, then run index
    std::vector<AggregateRow> aggregate;
    std::vector<SeriesRow> series;
};

// Runs the whole grid. Each run draws its seed from (baseSeed, cell index,
// run index) alone, so results are independent of worker count and identical
// across repeats.
BatchResult runBatch(const BatchSpec& spec);

std::vector<AggregateRow> summarize(const std::vector<RunRow>& rows,
                                    const BatchSpec& spec);

std::string perRunCsv(const std::vector<RunRow>& rows);
std::string aggregateCsv(const std::vector<AggregateRow>& rows);
std::string seriesCsv(const std::vector<SeriesRow>& rows);

}  // namespace vform
