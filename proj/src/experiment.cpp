#include "vform/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "vform/csvio.hpp"
#include "vform/engine.hpp"
#include "vform/rng.hpp"

namespace vform {

namespace {

void validateSpec(const BatchSpec& spec) {
    if (!spec.base.valid()) throw std::invalid_argument("runBatch: invalid base parameters");
    if (spec.runs < 1) throw std::invalid_argument("runBatch: runs must be >= 1");
    if (spec.grid.empty()) throw std::invalid_argument("runBatch: empty grid");
    if (spec.workers < 1) throw std::invalid_argument("runBatch: workers must be >= 1");
    for (const GridCell& c : spec.grid) {
        Params p = spec.base;
        p.birdCount = c.n;
        p.perceptionDeg = c.alpha;
        if (!p.valid()) throw std::invalid_argument("runBatch: invalid grid cell");
    }
    if (spec.series) {
        if (spec.series->indicator != "msd")
            throw std::invalid_argument("runBatch: unknown series indicator");
        if (spec.series->every < 1 || spec.series->runs < 1)
            throw std::invalid_argument("runBatch: invalid series spec");
    }
}

// one simulation plus its optional series, written into preallocated slots
void runTask(const BatchSpec& spec, int cellIdx, int runIdx, RunRow& row,
             std::vector<SeriesRow>* seriesOut) {
    const GridCell& cell = spec.grid[cellIdx];
    Params p = spec.base;
    p.birdCount = cell.n;
    p.perceptionDeg = cell.alpha;

    const std::uint64_t seed =
        mix64(spec.baseSeed, std::uint64_t(cellIdx), std::uint64_t(runIdx));

    std::optional<int> snapEvery;
    if (seriesOut) snapEvery = spec.series->every;

    const SimResult res = run(p, seed, snapEvery);

    row.n = cell.n;
    row.alpha = cell.alpha;
    row.run = runIdx;
    row.seed = seed;
    row.ind = indicators(res, p);

    if (!seriesOut) return;

    // sample at every k-th step; once the flock froze early, the final value
    // stands in for the remaining sample points up to the step limit
    const int k = spec.series->every;
    std::optional<double> lastMsd;
    for (const Snapshot& s : res.trace) {
        const auto rec = structuralIndicators(s.birds, 0, p);
        lastMsd = rec.meanSegDist;
        if (s.step % k == 0)
            seriesOut->push_back({cell.n, cell.alpha, runIdx, s.step, rec.meanSegDist});
    }
    const int lastStep = res.finalState.step;
    for (int s = (lastStep / k + 1) * k; s <= p.stepLimit; s += k)
        seriesOut->push_back({cell.n, cell.alpha, runIdx, s, lastMsd});
}

double sampleStd(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / double(xs.size() - 1));
}

}  // namespace

BatchResult runBatch(const BatchSpec& spec) {
    validateSpec(spec);

    const int cells = int(spec.grid.size());
    const int total = cells * spec.runs;
    const int seriesRuns = spec.series ? std::min(spec.series->runs, spec.runs) : 0;

    BatchResult result;
    result.perRun.resize(total);
    std::vector<std::vector<SeriesRow>> seriesSlots(total);

    std::atomic<int> nextTask{0};
    std::mutex errMutex;
    std::exception_ptr firstError;

    auto work = [&] {
        for (;;) {
            const int t = nextTask.fetch_add(1);
            if (t >= total) break;
            const int cellIdx = t / spec.runs;
            const int runIdx = t % spec.runs;
            try {
                runTask(spec, cellIdx, runIdx, result.perRun[t],
                        runIdx < seriesRuns ? &seriesSlots[t] : nullptr);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errMutex);
                if (!firstError) firstError = std::current_exception();
                nextTask.store(total);
                break;
            }
        }
    };

    if (spec.workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(spec.workers);
        for (int w = 0; w < spec.workers; ++w) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }
    if (firstError) std::rethrow_exception(firstError);

    result.aggregate = summarize(result.perRun, spec);
    for (auto& slot : seriesSlots)
        result.series.insert(result.series.end(), slot.begin(), slot.end());
    return result;
}

std::vector<AggregateRow> summarize(const std::vector<RunRow>& rows,
                                    const BatchSpec& spec) {
    std::vector<AggregateRow> out;
    const int cells = int(spec.grid.size());
    for (int c = 0; c < cells; ++c) {
        AggregateRow a;
        a.n = spec.grid[c].n;
        a.alpha = spec.grid[c].alpha;
        a.runs = spec.runs;

        std::vector<double> tStab, leads, groups, segs, msd;
        int stabilized = 0;
        for (int r = 0; r < spec.runs; ++r) {
            const RunRow& row = rows[std::size_t(c) * spec.runs + r];
            tStab.push_back(row.ind.tStab);
            leads.push_back(row.ind.leads);
            groups.push_back(row.ind.groups);
            segs.push_back(row.ind.segments);
            if (row.ind.meanSegDist) msd.push_back(*row.ind.meanSegDist);
            else ++a.msdMissing;
            if (row.ind.tStab < spec.base.stepLimit) ++stabilized;
        }

        auto mean = [](const std::vector<double>& xs) {
            double s = 0.0;
            for (double x : xs) s += x;
            return s / double(xs.size());
        };
        a.tStabMean = mean(tStab);
        a.tStabStd = sampleStd(tStab, a.tStabMean);
        a.leadsMean = mean(leads);
        a.leadsStd = sampleStd(leads, a.leadsMean);
        a.groupsMean = mean(groups);
        a.groupsStd = sampleStd(groups, a.groupsMean);
        a.segmentsMean = mean(segs);
        a.segmentsStd = sampleStd(segs, a.segmentsMean);
        if (!msd.empty()) {
            a.msdMean = mean(msd);
            a.msdStd = sampleStd(msd, *a.msdMean);
        }
        a.stabilizedFrac = double(stabilized) / double(spec.runs);
        out.push_back(a);
    }
    return out;
}

namespace {

std::string opt(const std::optional<double>& v) {
    return v ? formatDouble(*v) : std::string();
}

}  // namespace

std::string perRunCsv(const std::vector<RunRow>& rows) {
    std::string s = "n,alpha,run,seed,t_stab,leads,groups,segments,mean_seg_dist\n";
    for (const RunRow& r : rows) {
        s += std::to_string(r.n) + ',' + formatDouble(r.alpha) + ',' +
             std::to_string(r.run) + ',' + std::to_string(r.seed) + ',' +
             std::to_string(r.ind.tStab) + ',' + std::to_string(r.ind.leads) + ',' +
             std::to_string(r.ind.groups) + ',' + std::to_string(r.ind.segments) +
             ',' + opt(r.ind.meanSegDist) + '\n';
    }
    return s;
}

std::string aggregateCsv(const std::vector<AggregateRow>& rows) {
    std::string s =
        "n,alpha,runs,t_stab_mean,t_stab_std,leads_mean,leads_std,groups_mean,"
        "groups_std,segments_mean,segments_std,msd_mean,msd_std,msd_missing,"
        "stabilized_frac\n";
    for (const AggregateRow& a : rows) {
        s += std::to_string(a.n) + ',' + formatDouble(a.alpha) + ',' +
             std::to_string(a.runs) + ',' + formatDouble(a.tStabMean) + ',' +
             formatDouble(a.tStabStd) + ',' + formatDouble(a.leadsMean) + ',' +
             formatDouble(a.leadsStd) + ',' + formatDouble(a.groupsMean) + ',' +
             formatDouble(a.groupsStd) + ',' + formatDouble(a.segmentsMean) + ',' +
             formatDouble(a.segmentsStd) + ',' + opt(a.msdMean) + ',' +
             opt(a.msdStd) + ',' + std::to_string(a.msdMissing) + ',' +
             formatDouble(a.stabilizedFrac) + '\n';
    }
    return s;
}

std::string seriesCsv(const std::vector<SeriesRow>& rows) {
    std::string s = "n,alpha,run,step,mean_seg_dist\n";
    for (const SeriesRow& r : rows) {
        s += std::to_string(r.n) + ',' + formatDouble(r.alpha) + ',' +
             std::to_string(r.run) + ',' + std::to_string(r.step) + ',' +
             opt(r.msd) + '\n';
    }
    return s;
}

}  // namespace vform
