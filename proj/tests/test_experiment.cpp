#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "vform/experiment.hpp"
#include "vform/rng.hpp"

using namespace vform;

namespace {

BatchSpec smallSpec() {
    BatchSpec spec;
    spec.base.stepLimit = 150;
    spec.runs = 4;
    spec.baseSeed = 7;
    spec.grid = {{8, 180}, {8, 170}};
    return spec;
}

}  // namespace

TEST_CASE("batches repeat byte for byte and ignore worker count") {
    BatchSpec spec = smallSpec();
    const BatchResult a = runBatch(spec);
    const BatchResult b = runBatch(spec);
    spec.workers = 3;
    const BatchResult c = runBatch(spec);

    CHECK(perRunCsv(a.perRun) == perRunCsv(b.perRun));
    CHECK(perRunCsv(a.perRun) == perRunCsv(c.perRun));
    CHECK(aggregateCsv(a.aggregate) == aggregateCsv(c.aggregate));
    CHECK(seriesCsv(a.series) == seriesCsv(c.series));
}

TEST_CASE("run seeds derive from cell and run index alone") {
    const BatchSpec spec = smallSpec();
    const BatchResult res = runBatch(spec);
    REQUIRE(res.perRun.size() == 8);
    std::set<std::uint64_t> seen;
    for (int cell = 0; cell < 2; ++cell)
        for (int run = 0; run < 4; ++run) {
            const RunRow& row = res.perRun[cell * 4 + run];
            CHECK(row.run == run);
            CHECK(row.n == 8);
            CHECK(row.alpha == (cell == 0 ? 180 : 170));
            CHECK(row.seed == mix64(spec.baseSeed, cell, run));
            seen.insert(row.seed);
        }
    CHECK(seen.size() == 8);
}

TEST_CASE("summaries compute what the rows say") {
    BatchSpec spec;
    spec.base.stepLimit = 100;
    spec.runs = 2;
    spec.grid = {{5, 180}};

    std::vector<RunRow> rows(2);
    rows[0] = {5, 180, 0, 1, {10, 1, 1, 2, 0.5}};
    rows[1] = {5, 180, 1, 2, {20, 2, 1, 2, std::nullopt}};

    const auto agg = summarize(rows, spec);
    REQUIRE(agg.size() == 1);
    CHECK(agg[0].runs == 2);
    CHECK(agg[0].tStabMean == doctest::Approx(15));
    CHECK(agg[0].tStabStd == doctest::Approx(std::sqrt(50.0)));
    CHECK(agg[0].leadsMean == doctest::Approx(1.5));
    CHECK(agg[0].groupsStd == doctest::Approx(0));
    REQUIRE(agg[0].msdMean.has_value());
    CHECK(*agg[0].msdMean == doctest::Approx(0.5));
    CHECK(*agg[0].msdStd == doctest::Approx(0));  // single observation
    CHECK(agg[0].msdMissing == 1);
    CHECK(agg[0].stabilizedFrac == doctest::Approx(1.0));  // both under the limit
}

TEST_CASE("lone bird cells aggregate with missing distances") {
    BatchSpec spec;
    spec.runs = 3;
    spec.baseSeed = 11;
    spec.grid = {{1, 180}};
    const BatchResult res = runBatch(spec);

    REQUIRE(res.perRun.size() == 3);
    for (const RunRow& row : res.perRun) {
        CHECK(row.ind.tStab == 0);
        CHECK(row.ind.leads == 1);
        CHECK(row.ind.groups == 1);
        CHECK(row.ind.segments == 0);
        CHECK_FALSE(row.ind.meanSegDist.has_value());
    }
    REQUIRE(res.aggregate.size() == 1);
    const AggregateRow& agg = res.aggregate[0];
    CHECK_FALSE(agg.msdMean.has_value());
    CHECK(agg.msdMissing == 3);
    CHECK(agg.stabilizedFrac == doctest::Approx(1.0));
}

TEST_CASE("series rows cover every sample step and hold after settling") {
    BatchSpec spec;
    spec.base.birdCount = 6;
    spec.base.stepLimit = 100;
    spec.runs = 3;
    spec.baseSeed = 3;
    spec.grid = {{6, 180}};
    spec.series = SeriesSpec{"msd", 10, 2};
    const BatchResult res = runBatch(spec);

    // only the first two runs of the cell get a series
    std::set<int> runsSeen;
    for (const SeriesRow& row : res.series) runsSeen.insert(row.run);
    CHECK(runsSeen == std::set<int>{0, 1});

    for (int run : {0, 1}) {
        std::vector<SeriesRow> mine;
        for (const SeriesRow& row : res.series)
            if (row.run == run) mine.push_back(row);
        REQUIRE(mine.size() == 11);  // steps 0,10,...,100
        for (int k = 0; k < 11; ++k) CHECK(mine[k].step == k * 10);

        // after the run settles the tail repeats the last sampled value
        const RunRow& rr = res.perRun[run];
        if (rr.ind.tStab < spec.base.stepLimit) {
            const auto& last = mine.back();
            for (const SeriesRow& row : mine)
                if (row.step >= rr.ind.tStab) {
                    CHECK(row.msd.has_value() == last.msd.has_value());
                    if (row.msd) CHECK(*row.msd == *last.msd);
                }
        }
    }
}

TEST_CASE("csv emitters pin their headers and layouts") {
    std::vector<RunRow> rows(1);
    rows[0] = {5, 170, 2, 99, {42, 1, 1, 2, 0.25}};
    const std::string perRun = perRunCsv(rows);
    CHECK(perRun ==
          "n,alpha,run,seed,t_stab,leads,groups,segments,mean_seg_dist\n"
          "5,170,2,99,42,1,1,2,0.25\n");

    rows[0].ind.meanSegDist = std::nullopt;
    CHECK(perRunCsv(rows).find("5,170,2,99,42,1,1,2,\n") != std::string::npos);

    std::vector<SeriesRow> srows(2);
    srows[0] = {5, 170, 0, 0, std::nullopt};
    srows[1] = {5, 170, 0, 10, 1.5};
    CHECK(seriesCsv(srows) ==
          "n,alpha,run,step,mean_seg_dist\n"
          "5,170,0,0,\n"
          "5,170,0,10,1.5\n");

    std::vector<AggregateRow> arows(1);
    AggregateRow& a = arows[0];
    a.n = 5;
    a.alpha = 180;
    a.runs = 2;
    a.tStabMean = 15;
    a.tStabStd = 5;
    a.leadsMean = 1.5;
    a.leadsStd = 0.5;
    a.groupsMean = 1;
    a.groupsStd = 0;
    a.segmentsMean = 2;
    a.segmentsStd = 0;
    a.msdMean = 0.5;
    a.msdStd = 0.25;
    a.msdMissing = 0;
    a.stabilizedFrac = 0.5;
    CHECK(aggregateCsv(arows) ==
          "n,alpha,runs,t_stab_mean,t_stab_std,leads_mean,leads_std,"
          "groups_mean,groups_std,segments_mean,segments_std,msd_mean,"
          "msd_std,msd_missing,stabilized_frac\n"
          "5,180,2,15,5,1.5,0.5,1,0,2,0,0.5,0.25,0,0.5\n");
    a.msdMean = std::nullopt;
    a.msdStd = std::nullopt;
    CHECK(aggregateCsv(arows).find("5,180,2,15,5,1.5,0.5,1,0,2,0,,,0,0.5\n") !=
          std::string::npos);
}

TEST_CASE("invalid batch specs are rejected") {
    BatchSpec spec = smallSpec();
    spec.runs = 0;
    CHECK_THROWS_AS((void)runBatch(spec), std::invalid_argument);

    spec = smallSpec();
    spec.grid.clear();
    CHECK_THROWS_AS((void)runBatch(spec), std::invalid_argument);

    spec = smallSpec();
    spec.grid[0].alpha = 270;
    CHECK_THROWS_AS((void)runBatch(spec), std::invalid_argument);

    spec = smallSpec();
    spec.workers = 0;
    CHECK_THROWS_AS((void)runBatch(spec), std::invalid_argument);

    spec = smallSpec();
    spec.series = SeriesSpec{"t_stab", 10, 1};
    CHECK_THROWS_AS((void)runBatch(spec), std::invalid_argument);
}
