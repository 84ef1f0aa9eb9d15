#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "vform/csvio.hpp"
#include "vform/engine.hpp"
#include "vform/experiment.hpp"
#include "vform/metrics.hpp"
#include "vform/svg.hpp"

namespace fs = std::filesystem;
using namespace vform;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const char* const kConfigKeys[] = {
    "n", "alpha", "t", "seed", "runs", "grid", "snapshot_every", "series",
    "series_every", "series_runs", "out", "workers", "wingspan",
    "upwash_width", "wash_depth", "lateral_step", "forward_step",
    "collision_margin",
};

std::map<std::string, std::string> loadConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::map<std::string, std::string> cfg;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineNo) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        bool known = false;
        for (const char* k : kConfigKeys) known = known || key == k;
        if (!known)
            throw UsageError(path + ":" + std::to_string(lineNo) + ": unknown key " + key);
        cfg[key] = val;
    }
    return cfg;
}

template <class T>
T parseValue(const std::string& s, const std::string& key);

template <>
double parseValue<double>(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw UsageError("bad numeric value for " + key + ": " + s);
    }
}

template <>
long long parseValue<long long>(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw UsageError("bad integer value for " + key + ": " + s);
    }
}

template <>
unsigned long long parseValue<unsigned long long>(const std::string& s,
                                                  const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw UsageError("bad integer value for " + key + ": " + s);
    }
}

// flag beats config file beats built-in default
template <class T>
void merge(const CLI::Option* opt, T& val,
           const std::map<std::string, std::string>& cfg, const std::string& key) {
    if (opt && opt->count() > 0) return;
    const auto it = cfg.find(key);
    if (it == cfg.end()) return;
    if constexpr (std::is_same_v<T, std::string>) {
        val = it->second;
    } else if constexpr (std::is_floating_point_v<T>) {
        val = parseValue<double>(it->second, key);
    } else if constexpr (std::is_unsigned_v<T>) {
        val = T(parseValue<unsigned long long>(it->second, key));
    } else {
        val = T(parseValue<long long>(it->second, key));
    }
}

std::vector<GridCell> parseGrid(const std::string& s) {
    std::vector<GridCell> grid;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        const auto colon = cell.find(':');
        if (colon == std::string::npos)
            throw UsageError("bad grid cell (want n:alpha): " + cell);
        GridCell c;
        c.n = int(parseValue<long long>(trim(cell.substr(0, colon)), "grid n"));
        c.alpha = parseValue<double>(trim(cell.substr(colon + 1)), "grid alpha");
        grid.push_back(c);
    }
    if (grid.empty()) throw UsageError("empty grid");
    return grid;
}

void writeFileOrThrow(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

std::string indicatorLine(const IndicatorRecord& r) {
    std::string s = "t_stab=" + std::to_string(r.tStab) +
                    " leads=" + std::to_string(r.leads) +
                    " groups=" + std::to_string(r.groups) +
                    " segments=" + std::to_string(r.segments) + " msd=";
    if (r.meanSegDist) s += formatDouble(*r.meanSegDist);
    return s;
}

// shared option state; physical dimensions come from the config file only
struct Options {
    Params params;
    std::uint64_t seed = 0;
    int runs = 200;
    std::string gridStr;
    int snapshotEvery = 40;
    std::string seriesIndicator;
    int seriesEvery = 10;
    int seriesRuns = 10;
    std::string out;
    std::string configPath;
    int workers = int(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
};

void mergePhysical(Params& p, const std::map<std::string, std::string>& cfg) {
    merge<double>(nullptr, p.wingspan, cfg, "wingspan");
    merge<double>(nullptr, p.upwashWidth, cfg, "upwash_width");
    merge<double>(nullptr, p.washDepth, cfg, "wash_depth");
    merge<double>(nullptr, p.lateralStep, cfg, "lateral_step");
    merge<double>(nullptr, p.forwardStep, cfg, "forward_step");
    merge<double>(nullptr, p.collisionMargin, cfg, "collision_margin");
}

void requireValid(const Params& p) {
    if (!p.valid())
        throw UsageError("invalid parameters: lengths must be positive, "
                         "0 < alpha <= 180, n >= 1, t >= 1");
}

int cmdRun(const Options& o) {
    requireValid(o.params);
    if (o.snapshotEvery < 1) throw UsageError("snapshot interval must be >= 1");
    const SimResult res = run(o.params, o.seed, o.snapshotEvery);

    const std::string path = o.out.empty() ? "snapshots.csv" : o.out;
    std::ostringstream csv;
    writeSnapshotCsv(csv, res.trace);
    writeFileOrThrow(path, csv.str());

    std::cout << indicatorLine(indicators(res, o.params)) << "\n";
    return 0;
}

int cmdBatch(const Options& o) {
    requireValid(o.params);
    BatchSpec spec;
    spec.base = o.params;
    spec.runs = o.runs;
    spec.baseSeed = o.seed;
    spec.workers = o.workers;
    if (o.runs < 1) throw UsageError("runs must be >= 1");
    if (o.workers < 1) throw UsageError("workers must be >= 1");
    spec.grid = o.gridStr.empty()
                    ? std::vector<GridCell>{{o.params.birdCount, o.params.perceptionDeg}}
                    : parseGrid(o.gridStr);
    if (!o.seriesIndicator.empty()) {
        if (o.seriesIndicator != "msd")
            throw UsageError("unknown series indicator: " + o.seriesIndicator);
        if (o.seriesEvery < 1 || o.seriesRuns < 1)
            throw UsageError("series interval and run count must be >= 1");
        spec.series = SeriesSpec{o.seriesIndicator, o.seriesEvery, o.seriesRuns};
    }

    const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    const BatchResult result = runBatch(spec);
    writeFileOrThrow(dir / "per_run.csv", perRunCsv(result.perRun));
    writeFileOrThrow(dir / "aggregate.csv", aggregateCsv(result.aggregate));
    if (spec.series) writeFileOrThrow(dir / "series.csv", seriesCsv(result.series));
    return 0;
}

int cmdRender(const Options& o, const std::string& snapshotPath,
              const std::string& outDir, bool overlay) {
    requireValid(o.params);
    std::ifstream in(snapshotPath, std::ios::binary);
    if (!in) throw IoError("cannot open " + snapshotPath);
    const std::vector<Snapshot> trace = readSnapshotCsv(in);

    std::error_code ec;
    fs::create_directories(outDir, ec);
    if (ec) throw IoError("cannot create output directory " + outDir);

    for (const Snapshot& s : trace) {
        char name[32];
        std::snprintf(name, sizeof(name), "step_%05d.svg", s.step);
        writeFileOrThrow(fs::path(outDir) / name,
                         renderSvg(s.birds, o.params, overlay));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"artificial bird flock simulator"};
    app.require_subcommand(1);

    Options o;
    std::string renderSnapshot, renderOut;
    bool overlay = false;

    auto* runCmd = app.add_subcommand("run", "simulate one flock, dump snapshots");
    auto* batchCmd = app.add_subcommand("batch", "run a seeded experiment grid");
    auto* renderCmd = app.add_subcommand("render", "draw snapshot CSV as SVG frames");

    for (CLI::App* cmd : {runCmd, batchCmd}) {
        cmd->add_option("--n", o.params.birdCount, "flock size");
        cmd->add_option("--alpha", o.params.perceptionDeg,
                        "perception cone opening, degrees");
        cmd->add_option("--t", o.params.stepLimit, "step limit");
        cmd->add_option("--seed", o.seed, "base seed");
        cmd->add_option("--out", o.out, "output file or directory");
        cmd->add_option("--config", o.configPath, "key = value config file");
    }
    runCmd->add_option("--snapshot-every", o.snapshotEvery,
                       "record every k-th step");
    batchCmd->add_option("--runs", o.runs, "runs per grid cell");
    batchCmd->add_option("--grid", o.gridStr, "cells as n:alpha[,n:alpha...]");
    batchCmd->add_option("--series", o.seriesIndicator,
                         "per-step indicator series (msd)");
    batchCmd->add_option("--series-every", o.seriesEvery,
                         "series sample interval");
    batchCmd->add_option("--series-runs", o.seriesRuns, "series runs per cell");
    batchCmd->add_option("--workers", o.workers, "worker threads");

    renderCmd->add_option("snapshots", renderSnapshot, "snapshot CSV file")
        ->required();
    renderCmd->add_option("outdir", renderOut, "directory for SVG frames")
        ->required();
    renderCmd->add_flag("--overlay", overlay, "draw formation segments");
    renderCmd->add_option("--config", o.configPath, "key = value config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        auto opt = [active](const char* name) {
            return active->get_option_no_throw(name);
        };
        std::map<std::string, std::string> cfg;
        if (!o.configPath.empty()) cfg = loadConfig(o.configPath);
        merge(opt("--n"), o.params.birdCount, cfg, "n");
        merge(opt("--alpha"), o.params.perceptionDeg, cfg, "alpha");
        merge(opt("--t"), o.params.stepLimit, cfg, "t");
        merge(opt("--seed"), o.seed, cfg, "seed");
        merge(opt("--runs"), o.runs, cfg, "runs");
        merge(opt("--grid"), o.gridStr, cfg, "grid");
        merge(opt("--snapshot-every"), o.snapshotEvery, cfg, "snapshot_every");
        merge(opt("--series"), o.seriesIndicator, cfg, "series");
        merge(opt("--series-every"), o.seriesEvery, cfg, "series_every");
        merge(opt("--series-runs"), o.seriesRuns, cfg, "series_runs");
        merge(opt("--out"), o.out, cfg, "out");
        merge(opt("--workers"), o.workers, cfg, "workers");
        mergePhysical(o.params, cfg);

        if (runCmd->parsed()) return cmdRun(o);
        if (batchCmd->parsed()) return cmdBatch(o);
        return cmdRender(o, renderSnapshot, renderOut, overlay);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CsvError& e) {
        std::cerr << "error: " << renderSnapshot << ": " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
